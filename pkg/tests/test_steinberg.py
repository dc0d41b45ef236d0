from hypothesis import given, strategies as st

from partialskew import instances as inst
from partialskew.algebra import associativity_check
from partialskew.groupoids import build_transformation_groupoid, enumerate_graded, bis_product
from partialskew.scalars import GF, QQ
from partialskew.steinberg import (
    SteinbergAlgebra, check_representation, quasi_inverse, tautological_representation,
)

seeds = st.integers(0, 10_000)


def brute_convolve(gpd, ring, f, g):
    # (f * g)(c) = Σ over all composable pairs with ab = c
    out = {}
    for a in gpd.arrows:
        for b in gpd.arrows:
            if gpd.d[a] == gpd.r[b]:
                c = gpd.compose(a, b)
                out[c] = ring.add(out.get(c, ring.zero), ring.mul(f.get(a, 0), g.get(b, 0)))
    return {k: v for k, v in out.items() if v != 0}


@given(seeds, st.data())
def test_convolution_vs_brute(seed, data):
    gpd = build_transformation_groupoid(inst.random_action(seed, max_points=4))
    A = SteinbergAlgebra(gpd, GF(5))
    vec = st.dictionaries(st.sampled_from(gpd.arrows), st.integers(1, 4), max_size=5)
    f, g = data.draw(vec), data.draw(vec)
    assert A.convolve(f, g) == brute_convolve(gpd, A.field, f, g) == A.mul(f, g)


@given(seeds)
def test_associative(seed):
    gpd = build_transformation_groupoid(inst.random_action(seed, max_points=3))
    assert associativity_check(SteinbergAlgebra(gpd)).passed


def test_indicator_multiplicative(swap):
    gpd = build_transformation_groupoid(swap)
    A = SteinbergAlgebra(gpd)
    bis = enumerate_graded(gpd)
    for B in bis:
        for C in bis:
            assert A.mul(A.indicator(B), A.indicator(C)) == A.indicator(bis_product(gpd, B, C))


def test_tautological_representation(swap):
    gpd = build_transformation_groupoid(swap)
    A = SteinbergAlgebra(gpd, QQ)
    rep = check_representation(tautological_representation(A), enumerate_graded(gpd), A)
    assert rep.passed


@given(seeds)
def test_graded_regular(seed):
    gpd = build_transformation_groupoid(inst.random_action(seed, max_points=4))
    A = SteinbergAlgebra(gpd, QQ)
    for lab in A.labels:
        x = {lab: QQ(3)}
        y = quasi_inverse(A, x)
        assert y is not None and A.mul(A.mul(x, y), x) == x
