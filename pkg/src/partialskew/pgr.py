"""The partial group ring of a finite abelian group: the algebra of symbols
P_E, the space Y = {0,1}^G, the map Ψ and its inverse, and P(G) = A_ε ⋊ G."""

import itertools
from dataclasses import dataclass

from .algebra import FiniteAlgebra, GradedHom, verify_graded_iso
from .errors import IllFormed, NonAbelian, OracleBudget
from .linalg import Span
from .partial_actions import AlgPartialAction, SetPartialAction, induce_on_functions, validate_group_action
from .report import Report
from .scalars import QQ, FiniteSpace, FnElem
from .skew_rings import SkewRing

MAX_ORDER = 6


def _subsets(elems):
    for k in range(len(elems) + 1):
        for c in itertools.combinations(elems, k):
            yield frozenset(c)


def set_key(E):
    return (len(E), sorted(g.key() for g in E))


class PEAlgebra(FiniteAlgebra):
    """Span of P_E, E ⊆ G, with P_E P_F = P_{E∪F}; P_∅ is the identity."""

    def __init__(self, group, field=QQ):
        if not group.is_finite:
            raise IllFormed("the P_E algebra needs a finite group")
        if len(group) > MAX_ORDER:
            raise OracleBudget(f"|G| > {MAX_ORDER}")
        self.elems = group.elements()
        one = field.one
        super().__init__(
            field,
            list(_subsets(self.elems)),
            lambda E: group.identity(),
            lambda E, F: {E | F: one},
            group=group,
            name="P",
            key=set_key,
        )

    def P(self, elems):
        return {frozenset(elems): self.field.one}


def pe_mul(alg, a, b):
    return alg.mul(a, b)


def alpha_apply(g, x):
    """α_g(P_E) = P_{gE} on D_{g^-1} = span{P_E : ε, g^-1 ∈ E}."""
    e = g.group.identity()
    out = {}
    for E, c in x.items():
        if e not in E or g.inv() not in E:
            raise IllFormed(f"P_{{{','.join(map(str, E))}}} is outside D_{{{g.inv()}}}")
        out[frozenset(g * h for h in E)] = c
    return out


# -- the space Y ------------------------------------------------------------


def point_name(elems, S):
    return "".join("1" if g in S else "0" for g in elems)


def y_space(group):
    elems = group.elements()
    pts = [point_name(elems, S) for S in _subsets(elems)]
    return FiniteSpace(pts)


def point_set(elems, name):
    return frozenset(g for g, bit in zip(elems, name) if bit == "1")


def psi_map(alg, space, x):
    """Ψ(P_E) = Q_E = indicator of {S ⊇ E} on Y."""
    ring = alg.field
    elems = alg.elems
    out = {}
    for E, c in x.items():
        for name in space.points:
            if E <= point_set(elems, name):
                s = ring.add(out.get(name, ring.zero), c)
                if s == 0:
                    out.pop(name, None)
                else:
                    out[name] = s
    return FnElem._raw(space, ring, out)


def psi_inverse(alg, f):
    """1_{S} = Σ_{D ⊆ G∖S} (-1)^{|D|} Q_{S∪D}, pulled back along Ψ."""
    ring = alg.field
    elems = alg.elems
    out = {}
    for name, c in f.coeffs.items():
        S = point_set(elems, name)
        rest = [g for g in elems if g not in S]
        for D in _subsets(rest):
            sign = c if len(D) % 2 == 0 else ring.neg(c)
            E = S | D
            s = ring.add(out.get(E, ring.zero), sign)
            if s == 0:
                out.pop(E, None)
            else:
                out[E] = s
    return out


def _require_abelian(group):
    if not group.is_abelian:
        raise NonAbelian("the partial group ring model needs an abelian group")


def y_action(group):
    """φ on Y_ε: Y_g = {S : ε, g ∈ S}, φ_g(S) = gS."""
    _require_abelian(group)
    space = y_space(group)
    elems = group.elements()
    e = group.identity()
    full = [n for n in space.points if e in point_set(elems, n)]
    Yeps = FiniteSpace(full)
    domains = {}
    maps = {}
    for g in elems:
        domains[g] = [n for n in full if g in point_set(elems, n)]
        maps[g] = {}
        for n in full:
            S = point_set(elems, n)
            if g.inv() in S:
                maps[g][n] = point_name(elems, frozenset(g * h for h in S))
    return SetPartialAction(group, Yeps, domains, maps)


def pe_action(alg):
    """α on A_ε = span{P_E : ε ∈ E}: D_g = span{P_E : ε, g ∈ E}, α_g(P_E) = P_{gE}."""
    G = alg.group
    _require_abelian(G)
    e = G.identity()
    labels = [E for E in alg.labels if e in E]
    domains = {g: [E for E in labels if g in E] for g in alg.elems}
    maps = {
        g: {E: frozenset(g * h for h in E) for E in labels if g.inv() in E}
        for g in alg.elems
    }
    return AlgPartialAction(G, alg.field, labels, alg.mul_basis, domains, maps, name="A_ε", key=set_key)


@dataclass
class PG:
    pe: PEAlgebra
    space: FiniteSpace
    alpha: AlgPartialAction
    phi: SetPartialAction
    pg: SkewRing
    cy: SkewRing
    iso: GradedHom
    report: Report


def build_PG(group, field=QQ):
    _require_abelian(group)
    alg = PEAlgebra(group, field)
    Y = y_space(group)
    rep = Report("pgr")
    elems = alg.elems
    e = group.identity()
    # Ψ on the whole of P
    images = [psi_map(alg, Y, {E: field.one}) for E in alg.labels]
    sp = Span(field, Y.index.__getitem__, [dict(f.coeffs) for f in images])
    rep.add("Ψ bijective (rank 2^|G|)", sp.dim == len(Y) == alg.dim, {"rank": sp.dim, "2^|G|": len(Y)})
    bad = next(
        ((E, F) for E in alg.labels for F in alg.labels
         if psi_map(alg, Y, alg.mul_basis(E, F)) != images[alg.index[E]] * images[alg.index[F]]),
        None,
    )
    rep.add("Ψ multiplicative", bad is None, bad)
    bad = None
    for name in Y.points:
        f = FnElem._raw(Y, field, {name: field.one})
        if psi_map(alg, Y, psi_inverse(alg, f)) != f:
            bad = name
            break
    rep.add("Ψ∘Ψ^-1 = id on point indicators", bad is None, bad)
    # restriction to D_g ≅ C(Y_g)
    bad = None
    for g in elems:
        Dg = [E for E in alg.labels if e in E and g in E]
        Yg = {n for n in Y.points if {e, g} <= point_set(elems, n)}
        span_g = Span(field, Y.index.__getitem__, [dict(psi_map(alg, Y, {E: field.one}).coeffs) for E in Dg])
        if span_g.dim != len(Yg) or any(not set(v) <= Yg for v in span_g.basis()):
            bad = g
            break
    rep.add("Ψ(D_g) = C(Y_g)", bad is None, bad)

    alpha = pe_action(alg)
    rep.extend(alpha.validate(), "α: ")
    phi = y_action(group)
    rep.extend(validate_group_action(phi), "φ: ")
    funcs = induce_on_functions(phi, field)
    # the square Ψ α_g = φ_g Ψ on D_{g^-1}
    bad = None
    for g in elems:
        for E in alpha.domain(g.inv()):
            lhs = psi_map(alg, Y, alpha.alpha(g, {E: field.one}))
            img = psi_map(alg, Y, {E: field.one})
            rhs = funcs.apply_fn(g, img)
            if dict(lhs.coeffs) != dict(rhs.coeffs):
                bad = (g, E)
                break
        if bad:
            break
    rep.add("Ψ∘α_g = φ_g∘Ψ on D_{g^-1}", bad is None, bad)

    PGring = SkewRing(alpha, name="P(G)")
    CY = SkewRing(funcs, name="C(Y_ε)⋊G")
    iso_images = {}
    for g, E in PGring.labels:
        f = psi_map(alg, Y, {E: field.one})
        iso_images[(g, E)] = {(g, n): c for n, c in f.coeffs.items()}
    iso = GradedHom(PGring, CY, iso_images, name="P(G) -> C(Y_ε)⋊G")
    rep.extend(verify_graded_iso(iso), "iso: ")
    rep.data.update({
        "dim A_ε": len(alpha.labels),
        "dim D_g": {str(g): len(alpha.domain(g)) for g in elems},
        "dim P(G)": PGring.dim,
        "|Y_ε| + Σ|Y_g|": sum(len(phi.domain(g)) for g in elems),
    })
    return PG(alg, Y, alpha, phi, PGring, CY, iso, rep)
