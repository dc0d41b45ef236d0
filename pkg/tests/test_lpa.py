import random

import pytest
from hypothesis import given, strategies as st

from partialskew import instances as inst
from partialskew.errors import NotGraded, StarInjectivityFails
from partialskew.graphs import Graph, graph_groupoid, paths_into
from partialskew.lpa import (
    LPA, canonical_images, confluence_check, graded_uniqueness_check, is_normal,
    kill_vertex_images, lpa_algebra, normal_monomials, pi_E, verify_cor43, verify_cor45,
)
from partialskew.algebra import associativity_check, verify_graded_iso
from partialskew.scalars import GF, QQ
from partialskew.steinberg import SteinbergAlgebra

ACYCLIC = [inst.example_graph(), inst.single_edge_graph(), inst.chain_graph()]


def matrix_dim(g):
    # L(E) ≅ ⊕_{sinks w} M_{n(w)}(K) for acyclic E, n(w) = #paths ending at w
    return sum(len(paths_into(g, w, len(g.edges))) ** 2 for w in g.vertices if g.is_sink(w))


@pytest.mark.parametrize("g", ACYCLIC, ids=repr)
def test_dimension(g):
    assert lpa_algebra(g).dim == matrix_dim(g)


def test_chain_dims():
    g = inst.chain_graph()
    rep = verify_cor43(g, QQ)
    assert rep.passed
    assert rep.data["dim L"] == rep.data["dim C(X)xF"] == 9


def test_u_normal_form():
    g = inst.example_graph()
    L = LPA(g)
    # α is the special edge at u, so αα* rewrites to u and u stays u
    assert L.gen("v", "u") == {(("u", ()), ("u", ())): 1}
    assert L.mul(L.gen("e", "alpha"), L.gen("e*", "alpha")) == L.gen("v", "u")


def test_ck_relations():
    g = inst.toeplitz_graph()
    L = LPA(g, GF(3))
    e, f = L.gen("e", "e"), L.gen("e", "f")
    es, fs = L.gen("e*", "e"), L.gen("e*", "f")
    assert L.mul(es, e) == L.gen("v", "v")
    assert L.mul(fs, e) == {}
    assert L.mul(fs, f) == L.gen("v", "w")
    assert L.add(L.mul(e, es), L.mul(f, fs)) == L.gen("v", "v")


@pytest.mark.parametrize("g", ACYCLIC + [inst.toeplitz_graph(), inst.loop_graph()], ids=repr)
def test_confluence(g):
    assert confluence_check(g, QQ, trials=80, seed=1).passed


@given(st.integers(0, 10_000))
def test_products_stay_normal(seed):
    g = inst.toeplitz_graph()
    L = LPA(g)
    rng = random.Random(seed)
    monos = normal_monomials(g, 2)
    x = {rng.choice(monos): 1}
    y = {rng.choice(monos): 2}
    assert all(is_normal(g, m) for m in L.mul(x, y))


@pytest.mark.parametrize("g", ACYCLIC, ids=repr)
def test_associative(g):
    assert associativity_check(lpa_algebra(g, GF(5))).passed


@pytest.mark.parametrize("g", ACYCLIC, ids=repr)
def test_pi_E_iso(g):
    L = lpa_algebra(g)
    A = SteinbergAlgebra(graph_groupoid(g))
    assert verify_graded_iso(pi_E(L, A)).passed


@pytest.mark.parametrize("g", [inst.example_graph(), inst.single_edge_graph()], ids=repr)
def test_cor43(g):
    rep = verify_cor43(g, QQ)
    assert rep.passed
    assert rep.data["dim L"] == rep.data["dim A"] == rep.data["dim C(X)xF"]


def test_cor43_symbolic():
    rep = verify_cor43(inst.toeplitz_graph(), QQ)
    assert rep.passed and rep.data["mode"] == "symbolic"


def test_cor45():
    rep = verify_cor45(inst.single_edge_graph(), QQ)
    assert rep.passed
    # the shift by one: φ_1(w) = e
    assert rep.data["X_n"] == {"0": ["e", "w"], "1": ["e"], "-1": ["w"]}


def test_cor45_rejects_example():
    with pytest.raises(StarInjectivityFails):
        verify_cor45(inst.example_graph())


def test_lemma41_canonical():
    for g in ACYCLIC:
        rep = graded_uniqueness_check(g, QQ)
        assert rep.passed and rep.data["kernel_dim"] == 0


@pytest.mark.parametrize("g", [
    inst.chain_graph().with_weights({"a": 2, "b": 1}),
    inst.single_edge_graph().with_weights({"e": 2}),
], ids=repr)
def test_lemma41_weights(g):
    # weights only re-grade; the same map stays injective
    rep = graded_uniqueness_check(g, QQ)
    assert rep.passed and rep.data["hypothesis_holds"] and rep.data["kernel_dim"] == 0


def test_lemma41_killed_vertex():
    g = Graph(["u", "w", "z"], [("e", "u", "w")])
    A = SteinbergAlgebra(graph_groupoid(g, "z"))
    rep = graded_uniqueness_check(g, QQ, kill_vertex_images(g, A, "z"), A)
    assert rep.passed
    assert not rep.data["hypothesis_holds"] and rep.data["kernel_dim"] == 1


def test_lemma41_not_graded():
    g = inst.single_edge_graph()
    A = SteinbergAlgebra(graph_groupoid(g, "z"))
    images = canonical_images(g, A)
    images[("e", "e")], images[("e*", "e")] = images[("e*", "e")], images[("e", "e")]
    with pytest.raises(NotGraded):
        graded_uniqueness_check(g, QQ, images, A)
