import pytest
from hypothesis import given, strategies as st

from partialskew import instances as inst
from partialskew.errors import IllFormed, NotInvariant
from partialskew.exel import bracket
from partialskew.groups import FreeGroup, Integers, cyclic_group, signed_letter_count
from partialskew.partial_actions import (
    Obstruction, SetPartialAction, closure, induce_sg_action, induce_via_hom, invariant_subsets,
    invariant_subsets_brute, is_invariant, orbits, restrict, validate_group_action,
    validate_sg_action,
)
from partialskew.scalars import FiniteSpace

seeds = st.integers(0, 10_000)


def test_swap_valid(swap):
    rep = validate_group_action(swap)
    assert rep.passed
    assert [sorted(o) for o in orbits(swap)] == [["1", "2"], ["3"]]


def test_swap_invariant_subsets(swap):
    subs = invariant_subsets(swap)
    assert [sorted(V) for V in subs] == [[], ["3"], ["1", "2"], ["1", "2", "3"]]


def test_restrict_rejects(swap):
    assert is_invariant(swap, {"1"}) is not None
    with pytest.raises(NotInvariant):
        restrict(swap, {"1"})
    sub = restrict(swap, {"1", "2"})
    assert validate_group_action(sub).passed


def test_axiom_ii_violation():
    G = cyclic_group(4)
    e, g, g2, g3 = G.elements()
    # φ_g(X_{g^-1} ∩ X_{g^2}) = {2} but X_g ∩ X_{g^3} = ∅
    a = SetPartialAction(G, FiniteSpace(["1", "2"]), {g: ["2"], g3: ["1"], g2: ["1"]},
                         {g: {"1": "2"}, g2: {"1": "1"}})
    rep = validate_group_action(a)
    assert not rep.passed
    assert rep.first_failure().name.startswith("(ii)")


def test_axiom_iii_violation():
    G = cyclic_group(3)
    e, g, h = G.elements()
    # φ_g = φ_{g^2} = swap, so φ_g φ_g = id ≠ φ_{g^2}
    a = SetPartialAction(G, FiniteSpace(["1", "2"]), {g: ["1", "2"], h: ["1", "2"]},
                         {g: {"1": "2", "2": "1"}, h: {"1": "2", "2": "1"}})
    assert validate_group_action(a).first_failure().name.startswith("(iii)")


def test_axiom_i_violation():
    G = cyclic_group(2)
    e, g = G.elements()
    a = SetPartialAction(G, FiniteSpace(["1", "2"]), {e: ["1"]}, {e: {"1": "1"}})
    assert validate_group_action(a).first_failure().name.startswith("(i)")


def test_load_action_rejects():
    obj = inst.z2_swap().to_json()
    assert inst.load_action(obj).to_json() == obj
    G = cyclic_group(2)
    a = SetPartialAction(G, FiniteSpace(["1", "2"]), {G.elements()[1]: ["1"]}, {G.elements()[1]: {"2": "1"}})
    with pytest.raises(IllFormed):
        inst.load_action(a.to_json())


def test_json_roundtrip(swap, shift):
    for a in (swap, shift):
        b = SetPartialAction.from_json(a.to_json())
        assert b.to_json() == a.to_json()
        assert SetPartialAction.from_json(a.to_json(), group=a.group) == a


@given(seeds)
def test_random_actions_valid(seed):
    a = inst.random_action(seed)
    assert validate_group_action(a).passed
    assert len(a.space) <= inst.MAX_POINTS
    assert len(a.support()) <= inst.MAX_SUPPORT


@given(seeds)
def test_invariant_subsets_vs_brute(seed):
    a = inst.random_action(seed)
    assert set(invariant_subsets(a)) == set(invariant_subsets_brute(a))


@given(seeds, st.data())
def test_closure_smallest(seed, data):
    a = inst.random_action(seed)
    pts = a.space.points
    S = data.draw(st.sets(st.sampled_from(pts)))
    C = closure(a, S)
    assert S <= C and is_invariant(a, C) is None
    assert all(C <= V for V in invariant_subsets_brute(a) if S <= V)


def test_all_z2_actions_valid():
    acts = inst.z2_actions(3)
    assert len(acts) == 21
    assert all(validate_group_action(a).passed for a in acts)


@given(seeds)
def test_induced_sg_action_valid(seed):
    a = inst.random_action(seed, max_points=4, max_support=4)
    if len(a.support()) > 4:
        return
    c = induce_sg_action(a)
    assert validate_sg_action(c).passed
    # φ'_{[g]} = φ_g
    for g in a.support():
        assert c.domain(bracket(g)) == a.domain(g)


def test_induce_via_hom_obstruction():
    F = FreeGroup(["a", "b"])
    psi = signed_letter_count(F, Integers())
    a_, b_ = F.parse("a"), F.parse("b")
    ab = a_ * b_.inv()
    # the free action on {1, a, b} restricted from the Cayley graph
    X = FiniteSpace(["1", "a", "b"])
    act = SetPartialAction(
        F, X,
        {a_: ["a"], a_.inv(): ["1"], b_: ["b"], b_.inv(): ["1"], ab: ["a"], ab.inv(): ["b"]},
        {a_: {"1": "a"}, b_: {"1": "b"}, ab: {"b": "a"}},
    )
    assert validate_group_action(act).passed
    res = induce_via_hom(act, psi)
    assert isinstance(res, Obstruction)
    assert set(res.witnesses) == {ab, ab.inv()}


def test_induce_via_hom_success(shift):
    F = FreeGroup(["a"])
    X = FiniteSpace(["1", "2"])
    a_ = F.parse("a")
    act = SetPartialAction(F, X, {a_: ["2"]}, {a_: {"1": "2"}})
    act = SetPartialAction(F, X, {a_: ["2"], a_.inv(): ["1"]}, {a_: {"1": "2"}})
    psi = signed_letter_count(F, shift.group)
    res = induce_via_hom(act, psi)
    assert res.to_json() == shift.to_json()
