import itertools

import pytest
from hypothesis import given, strategies as st

from partialskew import instances as inst
from partialskew.errors import NotInvariant, OracleBudget
from partialskew.groupoids import (
    bis_inverse, bis_product, build_transformation_groupoid, enumerate_graded,
    enumerate_graded_brute, group_as_groupoid, invariant_unit_sets, is_bisection,
    is_effective, is_strongly_effective, pi_action, restrict_groupoid, units_of_points,
)
from partialskew.groups import cyclic_group
from partialskew.partial_actions import invariant_subsets, validate_sg_action

seeds = st.integers(0, 10_000)


def test_swap_groupoid(swap):
    gpd = build_transformation_groupoid(swap)
    assert gpd.validate().passed
    # 3 units plus (g,1), (g,2)
    assert len(gpd) == 5
    assert len(gpd.unit_set) == 3


@given(seeds)
def test_random_groupoid_axioms(seed):
    gpd = build_transformation_groupoid(inst.random_action(seed))
    assert gpd.validate().passed


@given(seeds)
def test_graded_bisections_vs_brute(seed):
    gpd = build_transformation_groupoid(inst.random_action(seed, max_points=4))
    fast = enumerate_graded(gpd)
    assert len(fast) == len(set(fast))
    assert set(fast) == set(enumerate_graded_brute(gpd))


@given(seeds, st.data())
def test_bisection_products(seed, data):
    gpd = build_transformation_groupoid(inst.random_action(seed, max_points=4))
    bis = enumerate_graded(gpd)
    U, V, W = (data.draw(st.sampled_from(bis)) for _ in range(3))
    UV = bis_product(gpd, U, V)
    assert is_bisection(gpd, UV)
    assert bis_product(gpd, UV, W) == bis_product(gpd, U, bis_product(gpd, V, W))
    # inverse semigroup: U U^-1 U = U
    assert bis_product(gpd, bis_product(gpd, U, bis_inverse(gpd, U)), U) == U


def test_bisection_cap(swap):
    gpd = build_transformation_groupoid(swap)
    with pytest.raises(OracleBudget):
        enumerate_graded(gpd, cap=2)


@given(seeds)
def test_invariant_units_match_subsets(seed):
    a = inst.random_action(seed)
    gpd = build_transformation_groupoid(a)
    got = {frozenset(u[1] for u in U) for U in invariant_unit_sets(gpd)}
    assert got == set(invariant_subsets(a))


def test_restrict_requires_invariance(swap):
    gpd = build_transformation_groupoid(swap)
    with pytest.raises(NotInvariant):
        restrict_groupoid(gpd, units_of_points(gpd, ["1"]))
    sub = restrict_groupoid(gpd, units_of_points(gpd, ["1", "2"]))
    assert len(sub) == 4 and sub.validate().passed


@given(seeds)
def test_pi_action_valid(seed):
    a = inst.random_action(seed, max_points=4, max_support=4)
    gpd = build_transformation_groupoid(a)
    bis = enumerate_graded(gpd)
    if len(bis) > 40:
        return
    for V in invariant_subsets(a):
        c = pi_action(gpd, units_of_points(gpd, V), bis)
        assert validate_sg_action(c).passed


def test_effectiveness(swap):
    gpd = build_transformation_groupoid(swap)
    assert is_effective(gpd) and is_strongly_effective(gpd)
    G = group_as_groupoid(cyclic_group(2))
    assert not is_effective(G)
    t = build_transformation_groupoid(inst.trivial_point_action())
    assert not is_strongly_effective(t)


def test_group_groupoid_bisections():
    G = cyclic_group(3)
    gpd = group_as_groupoid(G)
    # every singleton is a bisection; nothing larger is
    assert len(enumerate_graded(gpd)) == 3
    assert all(is_bisection(gpd, B) for B in itertools.combinations(G.elements(), 1))
