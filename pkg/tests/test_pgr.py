import pytest

from partialskew.errors import NonAbelian
from partialskew.exel import expected_order
from partialskew.groups import group_from_name, symmetric_group
from partialskew.pgr import PEAlgebra, alpha_apply, build_PG, psi_inverse, psi_map, y_space
from partialskew.scalars import GF, QQ, FnElem


@pytest.mark.parametrize("name", ["zmod:2", "zmod:3", "z2xz2"])
def test_build_pg(name):
    G = group_from_name(name)
    res = build_PG(G, QQ)
    assert res.report.passed
    # the partial group ring has a basis indexed by S(G)
    assert res.pg.dim == res.cy.dim == expected_order(len(G))


def test_z2_dims():
    G = group_from_name("zmod:2")
    res = build_PG(G, QQ)
    e, g = G.elements()
    assert len(res.alpha.labels) == 2
    assert len(res.alpha.domain(g)) == 1
    assert res.pg.dim == 3


def test_pe_relations():
    G = group_from_name("zmod:3")
    P = PEAlgebra(G)
    e, g, h = G.elements()
    assert P.mul(P.P([g]), P.P([g])) == P.P([g])
    assert P.mul(P.P([g]), P.P([h])) == P.P([g, h])
    assert P.mul(P.P([]), P.P([h])) == P.P([h])
    assert alpha_apply(g, P.P([e, h])) == P.P([g, e])


def test_psi_roundtrip_f3():
    G = group_from_name("z2xz2")
    P = PEAlgebra(G, GF(3))
    Y = y_space(G)
    for name in Y.points:
        f = FnElem(Y, GF(3), {name: 1})
        assert psi_map(P, Y, psi_inverse(P, f)) == f


def test_nonabelian_rejected():
    with pytest.raises(NonAbelian):
        build_PG(symmetric_group(3))
