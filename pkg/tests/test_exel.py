import itertools

import pytest

from partialskew.errors import ConditionViolated
from partialskew.exel import (
    bracket, compare_with_oracle, eps_elem, expected_order, oracle_enumerate, sg, sg_elements,
    sg_leq, sg_mul, sg_star, universal_hom,
)
from partialskew.groups import cyclic_group, direct_product, group_from_name


def test_bracket_products(z2):
    G, g = z2
    e = G.identity()
    assert sg_mul(bracket(g), bracket(g.inv())) == eps_elem(g)
    assert sg_mul(bracket(e), bracket(g)) == bracket(g)
    assert sg_mul(bracket(g), bracket(g)) == eps_elem(g)
    assert sg_mul(eps_elem(g), bracket(g)) == bracket(g)


def test_order():
    G = cyclic_group(3)
    e, g, h = G.elements()
    assert sg_leq(sg({h}, g), bracket(g))
    assert not sg_leq(bracket(g), bracket(h))
    assert sg_leq(bracket(g), bracket(g))


def test_trivial_group_oracle():
    G = cyclic_group(1)
    assert len(oracle_enumerate(G)) == 1


def test_z2_oracle_three_classes(z2):
    G, _ = z2
    assert len(oracle_enumerate(G)) == 3


@pytest.mark.parametrize("name", ["trivial", "zmod:2", "zmod:3", "zmod:4", "z2xz2"])
def test_oracle_matches_canonical(name):
    G = group_from_name(name)
    res = compare_with_oracle(G)
    assert res["mismatch"] is None
    assert res["canonical"] == res["oracle"] == expected_order(len(G))


@pytest.mark.parametrize("name", ["zmod:2", "zmod:3", "z2xz2"])
def test_associative(name):
    G = group_from_name(name)
    S = sg_elements(G)
    for a, b, c in itertools.product(S, repeat=3):
        assert sg_mul(sg_mul(a, b), c) == sg_mul(a, sg_mul(b, c))


@pytest.mark.parametrize("name", ["zmod:3", "zmod:4", "z2xz2"])
def test_inverse_semigroup_laws(name):
    G = group_from_name(name)
    for s in sg_elements(G):
        t = sg_star(s)
        assert sg_mul(sg_mul(s, t), s) == s
        assert sg_mul(sg_mul(t, s), t) == t
        # idempotents are exactly the elements over the identity
        assert (sg_mul(s, s) == s) == s.g.is_identity()


def test_universal_identity(z2):
    G, _ = z2
    ext = universal_hom(G, bracket, sg_mul)
    assert all(ext(s) == s for s in sg_elements(G))


def test_universal_violation():
    G = cyclic_group(2)
    e, g = G.elements()
    # f(g) = [g], f(e) = [g] breaks (iii): f(g)f(ε) = ε_g ≠ [g]
    bad = {e: bracket(g), g: bracket(g)}
    with pytest.raises(ConditionViolated):
        universal_hom(G, bad.__getitem__, sg_mul)


def test_count_formula_vs_direct():
    # independent count of pairs (L, g) with L ⊆ G∖{ε, g}
    for n, G in [(2, cyclic_group(2)), (3, cyclic_group(3)), (4, direct_product(cyclic_group(2), cyclic_group(2)))]:
        direct = sum(2 ** len([l for l in G.elements() if l != g and not l.is_identity()]) for g in G.elements())
        assert len(sg_elements(G)) == direct == expected_order(n)
