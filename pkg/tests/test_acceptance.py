"""Acceptance criteria 1-12.  Each test prints one PASS/FAIL line."""

import itertools
import random
import time

import pytest

from partialskew import instances as inst
from partialskew.exel import compare_with_oracle, oracle_enumerate
from partialskew.graphs import (
    BoundarySpace, SymbolicAction, acyclic_graphs, boolean_algebra_check, brute_star_injective,
    degree_test, graph_groupoid, induce_theta_via_psi, psi_hom, small_graphs, theta_action,
)
from partialskew.groupoids import build_transformation_groupoid, units_of_points
from partialskew.groups import group_from_name
from partialskew.ideals import (
    correspondence_check, enumerate_graded_ideals, maximality_check, random_generators,
)
from partialskew.lpa import graded_uniqueness_check, induce_Z_action, lpa_algebra, verify_cor43, verify_cor45
from partialskew.partial_actions import (
    Obstruction, induce_via_hom, invariant_subsets, validate_group_action,
)
from partialskew.pgr import build_PG
from partialskew.scalars import GF, QQ
from partialskew.skew_rings import (
    BisectionContext, graded_regularity, prop36_isos, skew_ring, skew_ring_of_action, thm26_isos,
)
from partialskew.steinberg import SteinbergAlgebra

SEEDS = range(20)
F2, F5 = GF(2), GF(5)


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {n}: {detail}"
    return emit


def test_c01_exel_oracle(verdict):
    counts = {}
    ok = True
    for name in ["trivial", "zmod:2", "zmod:3", "zmod:4", "z2xz2"]:
        G = group_from_name(name)
        res = compare_with_oracle(G, oracle_enumerate(G))
        counts[name] = (res["canonical"], res["oracle"])
        ok &= res["mismatch"] is None and res["canonical"] == res["oracle"]
    ok &= counts["zmod:2"] == (3, 3)
    verdict(1, ok, f"|S(G)| canonical/oracle {counts}")


def test_c02_thm26(verdict):
    start = time.perf_counter()
    checked = 0
    ok = True
    for seed in SEEDS:
        a = inst.random_action(seed)
        assert len(a.space) <= 6 and len(a.support()) <= 6
        gpd = build_transformation_groupoid(a)
        ctx = BisectionContext(gpd)
        for U in invariant_subsets(a):
            t = thm26_isos(gpd, units_of_points(gpd, U), QQ, ctx=ctx)
            ok &= t.report.passed
            checked += 1
    elapsed = time.perf_counter() - start
    verdict(2, ok and elapsed < 10, f"{len(SEEDS)} actions, {checked} invariant sets, {elapsed:.2f}s")


def test_c03_prop36(verdict):
    checked = 0
    ok = True
    for seed in SEEDS:
        a = inst.random_action(seed)
        for U in invariant_subsets(a):
            p = prop36_isos(a, U, QQ)
            names = {c.name for c in p.report.checks}
            ok &= p.report.passed and "Θ∘Ψ = id" in names and len(set(p.report.data["dims"])) == 1
            checked += 1
    verdict(3, ok, f"{len(SEEDS)} actions, {checked} invariant sets")


def test_c04_prop312(verdict):
    ok = True
    swap = inst.z2_swap()
    for field in (F2, F5):
        rep = correspondence_check(swap, field)
        ok &= rep.passed and len(rep.data["invariant subsets"]) == 4 and rep.data["graded ideals"] == 4
        ok &= rep.data["method"] == "exhaustive subspace enumeration"
    family = inst.z2_actions(3)
    for a in family:
        for field in (F2, F5):
            ok &= correspondence_check(a, field).passed
    verdict(4, ok, f"z2 swap 4<->4 over f2 and f5; {len(family)} Z/2 actions exhaustive")


def test_c05_maximality(verdict):
    rng = random.Random(2024)
    family = inst.z2_actions(3) + [inst.trivial_point_action()]
    cache = {}
    ok = True
    nongraded = 0
    for n in range(60):
        i = rng.randrange(len(family))
        a = family[i]
        if i not in cache:
            R = skew_ring_of_action(a, F2)
            cache[i] = enumerate_graded_ideals(R)
        gens = random_generators(skew_ring_of_action(a, F2), rng)
        rep = maximality_check(a, F2, gens, cache[i])
        ok &= rep.passed
        nongraded += not rep.data["graded"]
    verdict(5, ok and nongraded > 0, f"60 generator sets, {nongraded} non-graded ideals")


def test_c06_pgr(verdict):
    ok = True
    for name in ["zmod:2", "zmod:3", "z2xz2"]:
        rep = build_PG(group_from_name(name), QQ).report
        names = [c.name for c in rep.checks]
        ok &= rep.passed and any("rank" in n for n in names) and any("Ψ∘Ψ^-1" in n for n in names)
    verdict(6, ok, "Z/2, Z/3, Z/2xZ/2")


def test_c07_regularity(verdict):
    actions = [inst.z2_swap(), inst.z_shift(), inst.trivial_point_action()] + [
        inst.random_action(s) for s in range(10)]
    ok = True
    checked = 0
    for field in (QQ, F5):
        for a in actions:
            rep = graded_regularity(skew_ring_of_action(a, field))
            ok &= rep.passed
            checked += rep.data["checked"]
        bad = graded_regularity(skew_ring(inst.nonregular_action(field)))
        ok &= not bad.passed
    verdict(7, ok, f"{checked} homogeneous elements regular; non-regular ring rejected")


def test_c08_explicit_graphs(verdict):
    g = inst.example_graph()
    X = BoundarySpace(g)
    gpd = graph_groupoid(g)
    L = lpa_algebra(g, QQ)
    ok = sorted(X.space.points) == ["alpha", "beta", "w"] and len(gpd) == 9 and L.dim == 9
    ok &= verify_cor43(g, QQ).passed
    e = inst.single_edge_graph()
    r43 = verify_cor43(e, QQ)
    r45 = verify_cor45(e, QQ)
    a = induce_Z_action(e)
    ok &= validate_group_action(a).passed and r43.passed and r45.passed
    ok &= r45.data["dim L"] == r45.data["dim A"] == r45.data["dim C(X)xZ"] == 4
    verdict(8, ok, f"X(E)={sorted(X.space.points)}, arrows {len(gpd)}, dim L {L.dim}; single edge dims 4")


def test_c09_star_injectivity(verdict):
    n = 0
    ok = True
    for g in small_graphs(3, 3):
        ok &= degree_test(g)[0] == brute_star_injective(g)[0]
        n += 1
    ok &= degree_test(inst.example_graph()) == (False, "w")
    verdict(9, ok, f"{n} graphs; example graph witness w")


def test_c10_obstruction(verdict):
    g = inst.example_graph()
    res = induce_via_hom(theta_action(g), psi_hom(g))
    F = g.free_group
    ok = isinstance(res, Obstruction) and F.parse("beta alpha^-1") in res.witnesses
    good = [inst.single_edge_graph(), inst.chain_graph(), inst.loop_graph(), inst.toeplitz_graph()]
    for h in good:
        assert degree_test(h)[0]
        if h.acyclic:
            ind = induce_via_hom(theta_action(h), psi_hom(h))
            ok &= not isinstance(ind, Obstruction) and validate_group_action(ind).passed
        else:
            ind = induce_theta_via_psi(h, 4)
            ok &= isinstance(ind, SymbolicAction) and ind.validate().passed
    verdict(10, ok, f"obstruction {res}; {len(good)} star-injective graphs induce")


def test_c11_cylinders(verdict):
    rep = boolean_algebra_check(inst.toeplitz_graph(), triples=1000, seed=0)
    verdict(11, rep.passed, f"{rep.data['triples']} triples, {rep.data['emptiness decisions']} emptiness checks")


def test_c12_graded_uniqueness(verdict):
    ok = True
    runs = 0
    for g in acyclic_graphs(4):
        for ws in itertools.product([1, 2], repeat=len(g.edges)):
            h = g.with_weights(dict(zip(g.edges, ws)))
            rep = graded_uniqueness_check(h, QQ)
            ok &= rep.passed and (not rep.data["hypothesis_holds"] or rep.data["kernel_dim"] == 0)
            runs += 1
    verdict(12, ok, f"{runs} weighted acyclic graphs, kernel 0 whenever the hypothesis holds")
