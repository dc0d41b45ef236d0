import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from partialskew import instances as inst
from partialskew.errors import NotAnIdeal, NotInvariant
from partialskew.ideals import (
    Ideal, correspondence_check, enumerate_graded_ideals, extract_VI,
    ideal_closure, ideal_from_invariant_subset, maximality_check, random_generators,
)
from partialskew.linalg import Span, count_subspaces, enumerate_subspaces
from partialskew.partial_actions import invariant_subsets
from partialskew.scalars import GF, QQ
from partialskew.skew_rings import skew_ring_of_action

F2 = GF(2)


def all_vectors(R):
    # every vector of R over GF(2)
    labs = R.labels
    for bits in itertools.product([0, 1], repeat=len(labs)):
        yield {l: 1 for l, b in zip(labs, bits) if b}


def brute_graded_ideals(R):
    # oracle: every subspace spanned by homogeneous vectors and closed under R
    homog = [v for v in all_vectors(R) if v and len({R.grade(l) for l in v}) == 1]
    found = set()
    for sub in enumerate_subspaces(F2, R.labels):
        sp = Span(F2, R.order, sub)
        if Span(F2, R.order, [v for v in homog if v in sp]).dim != sp.dim:
            continue
        try:
            Ideal(R, sp).certify()
        except NotAnIdeal:
            continue
        found.add(sp.frozen())
    return found


def test_swap_correspondence_brute(swap):
    R = skew_ring_of_action(swap, F2)
    brute = brute_graded_ideals(R)
    ours = {J.frozen() for J in enumerate_graded_ideals(R)}
    mine = {ideal_from_invariant_subset(R, swap, V).frozen() for V in invariant_subsets(swap)}
    assert brute == ours == mine
    assert len(brute) == 4


def test_swap_ideal_dims(swap):
    rep = correspondence_check(swap, F2)
    assert rep.passed
    assert rep.data["ideal dims"] == [0, 1, 4, 5]


def test_correspondence_over_q(swap, shift):
    assert correspondence_check(swap, QQ).passed
    assert correspondence_check(shift, QQ).passed


def test_noninvariant_rejected(swap):
    R = skew_ring_of_action(swap, F2)
    with pytest.raises(NotInvariant):
        ideal_from_invariant_subset(R, swap, {"1"})


def test_closure_and_VI(swap):
    R = skew_ring_of_action(swap, QQ)
    e, g = swap.group.elements()
    I = ideal_closure(R, [{(e, "1"): 1}])
    assert I.dim == 4 and I.is_graded()
    assert extract_VI(I, swap) == {"1", "2"}


def test_nongraded_ideal_f2():
    a = inst.trivial_point_action()
    R = skew_ring_of_action(a, F2)
    e, g = a.group.elements()
    # 1 + δ_g is central and idempotent-free over GF(2); its ideal is not graded
    I = ideal_closure(R, [{(e, "p"): 1, (g, "p"): 1}])
    assert I.dim == 1 and not I.is_graded()
    assert extract_VI(I, a) == frozenset()
    assert maximality_check(a, F2, [{(e, "p"): 1, (g, "p"): 1}]).passed


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_maximality_random(seed):
    rng = random.Random(seed)
    a = rng.choice(inst.z2_actions(3) + [inst.trivial_point_action()])
    R = skew_ring_of_action(a, F2)
    assert maximality_check(a, F2, random_generators(R, rng)).passed


def test_z2_family_correspondence():
    for a in inst.z2_actions(2):
        assert correspondence_check(a, F2).passed


def test_subspace_count():
    for p, n in [(2, 3), (3, 2), (2, 4)]:
        keys = list(range(n))
        assert sum(1 for _ in enumerate_subspaces(GF(p), keys)) == count_subspaces(p, n)
    # GF(2)^3 has 1 + 7 + 7 + 1 subspaces
    assert count_subspaces(2, 3) == 16


def test_trivial_group_all_subsets():
    from partialskew.groups import group_from_name
    from partialskew.partial_actions import SetPartialAction
    from partialskew.scalars import FiniteSpace
    a = SetPartialAction(group_from_name("trivial"), FiniteSpace(["1", "2"]), {})
    rep = correspondence_check(a, F2)
    assert rep.passed and rep.data["graded ideals"] == 4


def test_shift_two_ideals(shift):
    # closure({1}) = closure({2}) = X, as for the simple ring M_2(K)
    rep = correspondence_check(shift, GF(5))
    assert rep.passed and rep.data["invariant subsets"] == [[], ["1", "2"]]
    assert rep.data["graded ideals"] == 2


def test_VI_extremes(swap):
    R = skew_ring_of_action(swap, QQ)
    e = swap.group.identity()
    whole = ideal_closure(R, [{lab: 1} for lab in R.labels])
    assert extract_VI(whole, swap) == frozenset(swap.space.points)
    assert extract_VI(ideal_closure(R, []), swap) == frozenset()
    I3 = ideal_closure(R, [{(e, "3"): 1}])
    assert I3 == ideal_from_invariant_subset(R, swap, {"3"})
