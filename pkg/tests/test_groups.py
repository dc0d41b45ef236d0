import random

import pytest
from hypothesis import given, strategies as st

from partialskew.errors import IllFormed, InstanceMismatch
from partialskew.groups import (
    FreeGroup, Integers, cyclic_group, direct_product, group_from_json, group_from_name,
    group_op, hom_apply, hom_from_generators, hom_from_table, signed_letter_count,
    symmetric_group,
)

F = FreeGroup(["alpha", "beta"])
Z = Integers()
psi = signed_letter_count(F, Z)


def test_free_cancellation():
    ab = F.parse("alpha beta^-1")
    assert group_op(ab, F.parse("beta"), "mul") == F.parse("alpha")
    assert group_op(F.identity(), ab, "mul") == ab


def test_integer_inverse():
    assert group_op(Z.elem(3), None, "inv") == Z.elem(-3)


def test_cross_group():
    with pytest.raises(InstanceMismatch):
        F.parse("alpha") * Z.elem(1)


def test_psi():
    assert hom_apply(psi, F.parse("alpha beta^-1")).value == 0
    assert hom_apply(psi, F.identity()).value == 0
    assert hom_apply(psi, F.parse("alpha alpha beta")).value == 3


def test_finite_groups():
    assert len(cyclic_group(4)) == 4
    assert len(symmetric_group(3)) == 6
    assert not symmetric_group(3).is_abelian
    assert direct_product(cyclic_group(2), cyclic_group(2)).is_abelian
    assert len(group_from_name("z2xz2")) == 4


def test_bad_table():
    with pytest.raises(IllFormed):
        group_from_json({"kind": "finite", "table": [[0, 1], [0, 1]]})


def test_json_roundtrip():
    for G in (cyclic_group(3), Z, F):
        H = group_from_json(G.to_json())
        assert H.to_json() == G.to_json()


def test_hom_from_table():
    C4, C2 = cyclic_group(4), cyclic_group(2)
    e4 = C4.elements()
    h = hom_from_table(C4, C2, {g: C2.elements()[i % 2] for i, g in enumerate(e4)})
    assert h(e4[2]).is_identity()


letters = st.lists(st.tuples(st.sampled_from(["alpha", "beta"]), st.sampled_from([1, -1])), max_size=10)


@given(letters, st.randoms(use_true_random=False))
def test_reduction_confluent(word, rnd):
    # cancel adjacent inverse pairs in a random order until none remain
    w = list(word)
    while True:
        spots = [i for i in range(len(w) - 1) if w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]]
        if not spots:
            break
        i = rnd.choice(spots)
        del w[i:i + 2]
    assert F.word(word).value == tuple(w)


@given(letters, letters)
def test_psi_homomorphism(a, b):
    x, y = F.word(a), F.word(b)
    assert psi(x * y) == psi(x) * psi(y)


def test_hom_from_generators():
    h = hom_from_generators(F, Z, {"alpha": Z.elem(1), "beta": Z.elem(1)})
    rng = random.Random(1)
    for _ in range(50):
        w = F.word([(rng.choice(["alpha", "beta"]), rng.choice([1, -1])) for _ in range(6)])
        assert h(w) == psi(w)
