"""Partial skew group rings, partial skew inverse semigroup rings as explicit
quotients, and the isomorphisms relating them to Steinberg algebras."""

from dataclasses import dataclass, field as dc_field

from .algebra import (
    FiniteAlgebra,
    GradedHom,
    QuotientAlgebra,
    associativity_check,
    check_identity,
    graded_quasi_inverse,
    verify_graded_iso,
)
from .errors import IllFormed, InstanceMismatch
from .exel import bracket, sg, sg_elements, sg_mul
from .groupoids import (
    DEFAULT_BISECTION_CAP,
    bis_product,
    bisection_grade,
    build_transformation_groupoid,
    enumerate_graded,
    invariance_witness,
    is_bisection,
    restrict_groupoid,
    units_of_points,
)
from .errors import NotInvariant
from .partial_actions import induce_on_functions, is_invariant, restrict
from .report import Report
from .scalars import QQ, FnElem, require_field
from .steinberg import Representation, SteinbergAlgebra, check_representation


# -- A ⋊ G ----------------------------------------------------------------


class SkewRing(FiniteAlgebra):
    """A ⋊_α G for a basis-permuting AlgPartialAction; basis (g, a) for a
    basis label of A_g, and (aδ_g)(bδ_h) = α_g(α_{g^-1}(a) b) δ_{gh}."""

    def __init__(self, action, name=None):
        self.action = action
        akey = action.key
        labels = [(g, lab) for g in action.support() for lab in action.domain(g)]

        def mul_basis(p, q):
            g, a = p
            h, b = q
            a0 = action.maps[g.inv()][a]
            prod = action.mul_basis(a0, b)
            if not prod:
                return {}
            gh = g * h
            dom = action.domain(gh)
            out = {}
            for c, z in action.alpha(g, prod).items():
                if c not in dom:
                    raise IllFormed(f"product leaves the ideal A_{gh}; the action is not valid")
                out[(gh, c)] = z
            return out

        super().__init__(
            action.field,
            labels,
            lambda lab: lab[0],
            mul_basis,
            group=action.group,
            name=name or f"{action.name}⋊G",
            key=lambda lab: (lab[0].key(), akey(lab[1])),
        )


def skew_ring(action, name=None):
    return SkewRing(action, name)


def skew_elem(ring, terms):
    """The vector Σ a_g δ_g from a map g -> FnElem (or dict label -> scalar)."""
    act = ring.action
    out = {}
    for g, a in terms.items():
        coeffs = a.coeffs if isinstance(a, FnElem) else a
        for lab, c in coeffs.items():
            if lab not in act.domain(g):
                raise IllFormed(f"coefficient of δ_{g} is not supported in the ideal A_{g}")
            c = ring.field(c)
            if c != 0:
                out[(g, lab)] = c
    return out


def skew_mul(ring, x, y):
    return ring.mul(x, y)


def skew_ring_of_action(a, field=QQ, U=None):
    """C_R(U) ⋊_φ G for a set action (U defaults to X)."""
    if U is not None:
        a = restrict(a, U)
    return SkewRing(induce_on_functions(a, field), name="C(U)⋊G")


# -- C_R(U) ⋊_π 𝒢^(h) ---------------------------------------------------


class BisectionContext:
    """Graded bisections of a finite groupoid with the data reused by every
    invariant unit set: d/r lookups per bisection and the cover relation."""

    def __init__(self, gpd, cap=DEFAULT_BISECTION_CAP, bisections=None):
        self.gpd = gpd
        self.bisections = list(bisections if bisections is not None else enumerate_graded(gpd, cap))
        self.index = {B: i for i, B in enumerate(self.bisections)}
        self.grade = {B: bisection_grade(gpd, B) for B in self.bisections}
        self.by_r = {B: {gpd.r[b]: b for b in B} for B in self.bisections}
        self._prod = {}
        self.covers = {}
        for B in self.bisections:
            ups = []
            for a in gpd.fiber(self.grade[B]):
                if a in B:
                    continue
                C = B | {a}
                if C in self.index:
                    ups.append(C)
            self.covers[B] = ups

    def product(self, B, C):
        k = (self.index[B], self.index[C])
        out = self._prod.get(k)
        if out is None:
            out = bis_product(self.gpd, B, C)
            self._prod[k] = out
        return out

    def key(self, B):
        return self.index[B]


class BisectionSkewRing(QuotientAlgebra):
    """C_R(U) ⋊_π 𝒢^(h): raw basis 1_x δ_B (x ∈ r(B) ∩ U) modulo
    1_x δ_B = 1_x δ_C for B ⊆ C."""

    def __init__(self, ctx, U, field=QQ):
        self.ctx = ctx
        gpd = ctx.gpd
        self.U = frozenset(U)
        bad = invariance_witness(gpd, self.U)
        if bad is not None:
            raise NotInvariant("unit set is not invariant", bad)
        one = field.one
        raw = []
        for B in ctx.bisections:
            for x in ctx.by_r[B]:
                if x in self.U:
                    raw.append((B, x))
        relations = []
        for B, x in raw:
            for C in ctx.covers[B]:
                relations.append(((B, x), (C, x)))

        def raw_mul(p, q):
            B, x = p
            C, y = q
            b = ctx.by_r[B][x]
            if gpd.d[b] != y:
                return {}
            return {(ctx.product(B, C), x): one}

        super().__init__(
            field,
            raw,
            lambda lab: ctx.grade[lab[0]],
            raw_mul,
            relations,
            key=lambda lab: (ctx.key(lab[0]), gpd.key(lab[1])),
            group=gpd.group,
            name="C(U)⋊𝒢^(h)",
        )

    def t(self, B):
        """t_B = 1_{r(B)} δ_B, reduced."""
        return self.reduce({(B, x): self.field.one for x in self.ctx.by_r[B] if x in self.U})


@dataclass
class Thm26:
    steinberg: object
    skew: object
    f: object
    g: object
    report: Report = dc_field(default_factory=lambda: Report("thm26"))


def thm26_isos(gpd, U, field=QQ, ctx=None, cap=DEFAULT_BISECTION_CAP,
               representation=False, certify_quotient=False):
    """A_R(𝒢_U) ≅ C_R(U) ⋊_π 𝒢^(h) with the maps f: 1_D -> 1_{r(D)}δ_D and
    g: 1_x δ_B -> 1_b (b ∈ B, r(b) = x), and a verification report."""
    require_field(field)
    ctx = ctx or BisectionContext(gpd, cap)
    U = frozenset(U)
    sub = restrict_groupoid(gpd, U)
    R1 = SteinbergAlgebra(sub, field, name="A(𝒢_U)")
    R2 = BisectionSkewRing(ctx, U, field)
    one = field.one
    f = GradedHom(
        R1, R2,
        {a: R2.reduce({(frozenset([a]), gpd.r[a]): one}) for a in R1.labels},
        name="f",
    )
    g_images = {}
    for lab in R2.labels:
        B, x = lab
        g_images[lab] = {ctx.by_r[B][x]: one}
    g = GradedHom(
        R2, R1, g_images, name="g",
        presentation=(R2.raw_labels, R2.reduce, lambda t: {ctx.by_r[t[0]][t[1]]: one}),
    )
    rep = Report("thm26")
    rep.extend(verify_graded_iso(f), "f: ")
    rep.extend(verify_graded_iso(g), "g: ")
    bad = check_identity(g.compose(f))
    rep.add("g∘f = id", bad is None, bad)
    bad = check_identity(f.compose(g))
    rep.add("f∘g = id", bad is None, bad)
    if certify_quotient:
        rep.extend(R2.certify_ideal(), "quotient: ")
    if representation:
        t = Representation(gpd, R2.t)
        rep.extend(check_representation(t, ctx.bisections, R2), "t_D = 1_{r(D)}δ_D: ")
        bad = next((B for B in ctx.bisections if f(R1_indicator(R1, B, U)) != R2.t(B)), None)
        rep.add("f(1_D) = t_D", bad is None, bad)
    rep.data.update({"dim A(G_U)": R1.dim, "dim C(U)xG(h)": R2.dim, "bisections": len(ctx.bisections)})
    return Thm26(R1, R2, f, g, rep)


def R1_indicator(R1, B, U):
    """1_{B ∩ 𝒢_U} in A(𝒢_U)."""
    gpd = R1.groupoid
    return {b: R1.field.one for b in B if b in gpd.arrow_set}


# -- C_R(U) ⋊_{φ'} S(G) ----------------------------------------------------


class SGSkewRing(QuotientAlgebra):
    """C_R(U) ⋊_{φ'} S(G): raw basis 1_x δ_s with x ∈ E_s = U ∩ X_g ∩ X_{l_1} ∩ ...
    modulo 1_x δ_s = 1_x δ_t for s ≤ t (generated by dropping one ε-index)."""

    def __init__(self, a, U, field=QQ):
        self.action = a
        self.U = a.space.subset(U)
        bad = is_invariant(a, self.U)
        if bad is not None:
            raise NotInvariant("subset is not invariant", bad)
        idx = a.space.index
        elems = sg_elements(a.group, a.support())

        def E(s):
            d = a.domain(s.g) & self.U
            for l in s.eps:
                d &= a.domain(l)
            return d

        raw = [(s, x) for s in elems for x in a.space.ordered(E(s))]
        present = set(raw)
        relations = []
        for s, x in raw:
            for l in s.eps:
                t = sg(s.eps - {l}, s.g)
                relations.append(((s, x), (t, x)))
        one = field.one

        def raw_mul(p, q):
            s, x = p
            t, y = q
            if a.phi(s.g.inv(), x) != y:
                return {}
            lab = (sg_mul(s, t), x)
            if lab not in present:
                raise IllFormed(f"{lab} outside the raw basis; the action is not valid")
            return {lab: one}

        super().__init__(
            field,
            raw,
            lambda lab: lab[0].g,
            raw_mul,
            relations,
            key=lambda lab: (lab[0].key(), idx[lab[1]]),
            group=a.group,
            name="C(U)⋊S(G)",
        )


@dataclass
class Prop36:
    thm26: Thm26
    sg_ring: object
    skew: object
    phi: object
    psi: object
    theta: object
    report: Report


def prop36_isos(a, U=None, field=QQ, ctx=None, cap=DEFAULT_BISECTION_CAP):
    """The chain A_R(𝒢_U) ≅ C_R(U)⋊_π𝒢_X^(h) ≅ C_R(U)⋊_{φ'}S(G) ≅ C_R(U)⋊_φG."""
    require_field(field)
    U = frozenset(a.space.points) if U is None else a.space.subset(U)
    gpd = build_transformation_groupoid(a)
    ctx = ctx or BisectionContext(gpd, cap)
    t26 = thm26_isos(gpd, units_of_points(gpd, U), field, ctx=ctx)
    R2 = t26.skew
    R3 = SGSkewRing(a, U, field)
    R4 = skew_ring_of_action(a, field, U)
    one = field.one
    e = a.group.identity()

    phi = GradedHom(R4, R3, {(g, x): R3.reduce({(bracket(g), x): one}) for g, x in R4.labels}, name="φ")

    fibre = {}
    for g in a.support():
        B = frozenset((g, y) for y in a.domain(g) & U)
        if B:
            fibre[g] = B

    def psi_raw(t):
        s, x = t
        return R2.reduce({(fibre[s.g], (e, x)): one})

    psi = GradedHom(
        R3, R2, {lab: psi_raw(lab) for lab in R3.labels}, name="Ψ",
        presentation=(R3.raw_labels, R3.reduce, psi_raw),
    )

    def theta_raw(t):
        B, u = t
        return R3.reduce({(bracket(ctx.grade[B]), u[1]): one})

    theta = GradedHom(
        R2, R3, {lab: theta_raw(lab) for lab in R2.labels}, name="Θ",
        presentation=(R2.raw_labels, R2.reduce, theta_raw),
    )

    rep = Report("prop36")
    rep.extend(t26.report, "thm26 ")
    rep.extend(verify_graded_iso(phi), "φ: ")
    rep.extend(verify_graded_iso(psi), "Ψ: ")
    rep.extend(verify_graded_iso(theta), "Θ: ")
    bad = check_identity(theta.compose(psi))
    rep.add("Θ∘Ψ = id", bad is None, bad)
    bad = check_identity(psi.compose(theta))
    rep.add("Ψ∘Θ = id", bad is None, bad)
    dims = [R.graded_dims() for R in (t26.steinberg, R2, R3, R4)]
    rep.add("equal graded dimensions", all(d == dims[0] for d in dims), [
        {str(k): v for k, v in d.items()} for d in dims
    ])
    rep.data["dims"] = [t26.steinberg.dim, R2.dim, R3.dim, R4.dim]
    return Prop36(t26, R3, R4, phi, psi, theta, rep)


# -- canonical forms of raw inverse-semigroup ring elements -------------------


def canonicalize_isr(terms, context, U=None, field=QQ):
    """Collapse Σ a_s δ_s to its normal form.

    Over S(G) (``context`` a SetPartialAction, s an SGElem) the result is
    the vector Σ a_s δ_g of C_R(U) ⋊_φ G, keyed (g, x).  Over graded
    bisections (``context`` a groupoid, s a frozenset) it is the function
    b -> a_B(r(b)) on 𝒢_U, keyed by arrow.  Coefficients must lie in A_s.
    """
    out = {}
    if hasattr(context, "support") and hasattr(context, "space"):
        a = context
        U = frozenset(a.space.points) if U is None else a.space.subset(U)
        for s, coeff in terms:
            E = a.domain(s.g) & U
            for l in s.eps:
                E &= a.domain(l)
            for x, c in _coeff_items(coeff):
                if x not in E:
                    raise IllFormed(f"coefficient at {x!r} lies outside the ideal of {s}")
                c = field(c)
                key = (s.g, x)
                v = field.add(out.get(key, field.zero), c)
                if v == 0:
                    out.pop(key, None)
                else:
                    out[key] = v
        return out
    gpd = context
    units = gpd.unit_set if U is None else frozenset(U)
    point_unit = getattr(gpd, "action", None) is not None
    for B, coeff in terms:
        B = frozenset(B)
        if B and not is_bisection(gpd, B):
            raise IllFormed("term indexed by a non-bisection")
        by_r = {gpd.r[b]: b for b in B}
        for u, c in _coeff_items(coeff):
            if point_unit and not isinstance(u, tuple):
                u = (gpd.group.identity(), u)
            if u not in by_r or u not in units:
                raise IllFormed(f"coefficient at {u!r} lies outside r(B) ∩ U")
            c = field(c)
            b = by_r[u]
            v = field.add(out.get(b, field.zero), c)
            if v == 0:
                out.pop(b, None)
            else:
                out[b] = v
    return out


def _coeff_items(coeff):
    if isinstance(coeff, FnElem):
        return coeff.coeffs.items()
    return dict(coeff).items()


# -- graded von Neumann regularity -------------------------------------------


def graded_regularity(alg, elements=None):
    """Search a graded quasi-inverse for every given homogeneous element
    (default: every basis element)."""
    require_field(alg.field)
    rep = Report(f"graded regularity of {alg.name}")
    if elements is None:
        elements = [{lab: alg.field.one} for lab in alg.labels]
    missing = []
    for x in elements:
        y = graded_quasi_inverse(alg, x)
        if y is None:
            missing.append(x)
        elif alg.mul(alg.mul(x, y), x) != dict(x):
            raise AssertionError("solver returned a non-solution")
    rep.add("every homogeneous element has a graded quasi-inverse", not missing,
            missing[0] if missing else None)
    rep.data["checked"] = len(elements)
    rep.data["regular"] = not missing
    return rep


__all__ = [
    "SkewRing",
    "skew_ring",
    "skew_elem",
    "skew_mul",
    "skew_ring_of_action",
    "BisectionContext",
    "BisectionSkewRing",
    "thm26_isos",
    "SGSkewRing",
    "prop36_isos",
    "canonicalize_isr",
    "graded_regularity",
    "associativity_check",
    "InstanceMismatch",
]
