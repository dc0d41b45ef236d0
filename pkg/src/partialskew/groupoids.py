"""Finite graded groupoids, transformation groupoids, bisections, the
inverse semigroup of graded bisections and its action on unit sets."""

import itertools

from .errors import IllFormed, InstanceMismatch, NotInvariant, OracleBudget
from .partial_actions import SGSetAction
from .report import Report, jsonable

DEFAULT_BISECTION_CAP = 4096


class FiniteGradedGroupoid:
    """A groupoid on an explicit finite arrow set.

    ``d``, ``r``, ``inverse`` and ``cocycle`` are dicts keyed by arrow;
    ``compose(a, b)`` returns the product of a composable pair (d(a) == r(b)).
    Units are the arrows u with d(u) == r(u) == u.
    """

    def __init__(self, arrows, d, r, compose, inverse, cocycle, group, key=None, name="groupoid"):
        self.key = key or (lambda a: a)
        self.arrows = tuple(sorted(arrows, key=self.key))
        self.arrow_set = frozenset(self.arrows)
        self.d = dict(d)
        self.r = dict(r)
        self._compose = compose
        self.inverse = dict(inverse)
        self.cocycle = dict(cocycle)
        self.group = group
        self.name = name
        self.units = tuple(a for a in self.arrows if self.d[a] == a == self.r[a])
        self.unit_set = frozenset(self.units)
        self._by_d = {}
        for a in self.arrows:
            self._by_d.setdefault(self.d[a], []).append(a)
        self._fibers = {}
        for a in self.arrows:
            self._fibers.setdefault(self.cocycle[a], []).append(a)

    def __repr__(self):
        return f"<{self.name}: {len(self.arrows)} arrows, {len(self.units)} units>"

    def __len__(self):
        return len(self.arrows)

    def compose(self, a, b):
        if self.d[a] != self.r[b]:
            raise IllFormed(f"arrows {a!r}, {b!r} are not composable")
        return self._compose(a, b)

    def arrows_from(self, u):
        """d^-1(u)."""
        return list(self._by_d.get(u, ()))

    def fibers(self):
        return {g: list(v) for g, v in self._fibers.items()}

    def fiber(self, g):
        return list(self._fibers.get(g, ()))

    def validate(self):
        rep = Report(f"groupoid axioms for {self.name}")
        e = self.group.identity()
        for a in self.arrows:
            for k in (self.d[a], self.r[a]):
                if k not in self.unit_set:
                    rep.add("d, r land in the unit space", False, a)
                    return rep
        rep.add("d, r land in the unit space", True)
        for a in self.arrows:
            ai = self.inverse[a]
            if ai not in self.arrow_set or self.d[ai] != self.r[a] or self.r[ai] != self.d[a]:
                rep.add("inverses", False, a)
                return rep
            if self.compose(a, ai) != self.r[a] or self.compose(ai, a) != self.d[a]:
                rep.add("inverses", False, a)
                return rep
            if self.compose(self.r[a], a) != a or self.compose(a, self.d[a]) != a:
                rep.add("units act trivially", False, a)
                return rep
        rep.add("inverses", True)
        rep.add("units act trivially", True)
        for a in self.arrows:
            for b in self.arrows_from_r(self.d[a]):
                ab = self.compose(a, b)
                if ab not in self.arrow_set or self.d[ab] != self.d[b] or self.r[ab] != self.r[a]:
                    rep.add("composition closed with d(ab)=d(b), r(ab)=r(a)", False, (a, b))
                    return rep
                if self.cocycle[ab] != self.cocycle[a] * self.cocycle[b]:
                    rep.add("cocycle c(ab) = c(a)c(b)", False, (a, b))
                    return rep
                for c in self.arrows_from_r(self.d[b]):
                    if self.compose(ab, c) != self.compose(a, self.compose(b, c)):
                        rep.add("associativity", False, (a, b, c))
                        return rep
        rep.add("composition closed with d(ab)=d(b), r(ab)=r(a)", True)
        rep.add("cocycle c(ab) = c(a)c(b)", True)
        rep.add("associativity", True)
        ok = all(self.cocycle[u] == e for u in self.units)
        rep.add("cocycle trivial on units", ok)
        return rep

    def arrows_from_r(self, u):
        """r^-1(u)."""
        return [self.inverse[a] for a in self._by_d.get(u, ())]

    def to_json(self):
        return {
            "name": self.name,
            "arrows": [
                {
                    "arrow": jsonable(a),
                    "d": jsonable(self.d[a]),
                    "r": jsonable(self.r[a]),
                    "inverse": jsonable(self.inverse[a]),
                    "grade": str(self.cocycle[a]),
                }
                for a in self.arrows
            ],
        }


def build_transformation_groupoid(a):
    """The groupoid of g × X_g with (g,x)(h,y) = (gh,x) when y = φ_{g^-1}(x)."""
    G = a.group
    e = G.identity()
    arrows = [(g, x) for g in a.support() for x in a.space.ordered(a.domain(g))]
    d, r, inv, coc = {}, {}, {}, {}
    for g, x in arrows:
        y = a.phi(g.inv(), x)
        d[(g, x)] = (e, y)
        r[(g, x)] = (e, x)
        inv[(g, x)] = (g.inv(), y)
        coc[(g, x)] = g

    def compose(p, q):
        return (p[0] * q[0], p[1])

    idx = a.space.index
    gpd = FiniteGradedGroupoid(
        arrows, d, r, compose, inv, coc, G,
        key=lambda p: (p[0].key(), idx[p[1]]),
        name="transformation groupoid",
    )
    gpd.action = a
    return gpd


def unit_of_point(gpd, x):
    """The unit arrow (ε, x) of a transformation groupoid."""
    return (gpd.group.identity(), x)


def units_of_points(gpd, points):
    return frozenset(unit_of_point(gpd, x) for x in points)


# -- bisections ----------------------------------------------------------


def is_bisection(gpd, B):
    ds = [gpd.d[b] for b in B]
    rs = [gpd.r[b] for b in B]
    return len(set(ds)) == len(ds) and len(set(rs)) == len(rs)


def bisection_grade(gpd, B):
    """The common cocycle value of a nonempty homogeneous set, else None."""
    grades = {gpd.cocycle[b] for b in B}
    return next(iter(grades)) if len(grades) == 1 else None


def bis_product(gpd, U, V):
    """UV = {ab : a ∈ U, b ∈ V, d(a) = r(b)}."""
    by_r = {gpd.r[b]: b for b in V}
    out = []
    for a in U:
        b = by_r.get(gpd.d[a])
        if b is not None:
            out.append(gpd.compose(a, b))
    out = frozenset(out)
    assert is_bisection(gpd, out), "product of bisections is a bisection"
    return out


def bis_inverse(gpd, U):
    return frozenset(gpd.inverse[a] for a in U)


def bis_d(gpd, U):
    return frozenset(gpd.d[a] for a in U)


def bis_r(gpd, U):
    return frozenset(gpd.r[a] for a in U)


def _fiber_bisections(gpd, arrows, limit):
    """All nonempty subsets of ``arrows`` with injective d and r."""
    out = []

    def rec(i, chosen, ds, rs):
        if i == len(arrows):
            if chosen:
                out.append(frozenset(chosen))
                if len(out) > limit:
                    raise OracleBudget("graded bisection cap exceeded")
            return
        rec(i + 1, chosen, ds, rs)
        a = arrows[i]
        if gpd.d[a] not in ds and gpd.r[a] not in rs:
            chosen.append(a)
            rec(i + 1, chosen, ds | {gpd.d[a]}, rs | {gpd.r[a]})
            chosen.pop()

    rec(0, [], frozenset(), frozenset())
    return out


def enumerate_graded(gpd, cap=DEFAULT_BISECTION_CAP):
    """Every nonempty graded bisection, grouped by grade in grade order, each
    group in a fixed order.  The empty bisection (the zero of the inverse
    semigroup) is left out.  Raises OracleBudget past ``cap`` bisections."""
    out = []
    for g in sorted(gpd.fibers(), key=lambda x: x.key()):
        try:
            part = _fiber_bisections(gpd, gpd.fiber(g), cap - len(out))
        except OracleBudget:
            raise OracleBudget(f"more than {cap} graded bisections") from None
        part.sort(key=lambda B: (len(B), sorted(gpd.key(a) for a in B)))
        out.extend(part)
    return out


def bisection_key(gpd):
    return lambda B: (
        bisection_grade(gpd, B).key() if B else (),
        len(B),
        sorted(gpd.key(a) for a in B),
    )


def bisection_calculus(gpd, U=None, V=None, op="product", cap=DEFAULT_BISECTION_CAP):
    if op == "product":
        return bis_product(gpd, U, V)
    if op == "inverse":
        return bis_inverse(gpd, U)
    if op == "enumerate_graded":
        return enumerate_graded(gpd, cap)
    raise ValueError(f"unknown op {op!r}")


def enumerate_graded_brute(gpd):
    """Oracle: filter all subsets of every fiber."""
    out = []
    for g, fib in gpd.fibers().items():
        for k in range(1, len(fib) + 1):
            for B in itertools.combinations(fib, k):
                if is_bisection(gpd, B):
                    out.append(frozenset(B))
    return out


# -- invariant unit sets --------------------------------------------------


def invariance_witness(gpd, U):
    """None if r(d^-1(U)) = U = d(r^-1(U)); else an arrow leaving or entering U."""
    U = frozenset(U)
    for a in gpd.arrows:
        if (gpd.d[a] in U) != (gpd.r[a] in U):
            return a
    return None


def unit_orbits(gpd):
    seen = set()
    out = []
    for u in gpd.units:
        if u in seen:
            continue
        orb = frozenset(gpd.r[a] for a in gpd.arrows_from(u))
        seen |= orb
        out.append(orb)
    return out


def invariant_unit_sets(gpd):
    orbs = unit_orbits(gpd)
    out = []
    for k in range(len(orbs) + 1):
        for pick in itertools.combinations(orbs, k):
            out.append(frozenset().union(*pick))
    return out


def restrict_groupoid(gpd, U):
    """𝒢_U = d^-1(U); requires U invariant, so that it equals r^-1(U)."""
    U = frozenset(U)
    if not U <= gpd.unit_set:
        raise InstanceMismatch("U is not a set of units")
    bad = invariance_witness(gpd, U)
    if bad is not None:
        raise NotInvariant("unit set is not invariant", bad)
    arrows = [a for a in gpd.arrows if gpd.d[a] in U]
    assert set(arrows) == {a for a in gpd.arrows if gpd.r[a] in U}
    keep = set(arrows)
    sub = FiniteGradedGroupoid(
        arrows,
        {a: gpd.d[a] for a in keep},
        {a: gpd.r[a] for a in keep},
        gpd._compose,
        {a: gpd.inverse[a] for a in keep},
        {a: gpd.cocycle[a] for a in keep},
        gpd.group,
        key=gpd.key,
        name=f"{gpd.name}|U",
    )
    sub.parent = gpd
    return sub


# -- the π action of graded bisections ------------------------------------


def pi_action(gpd, U, bisections=None, cap=DEFAULT_BISECTION_CAP):
    """π_B(u) = r(b) for u = d(b), b ∈ B, on the domains U_B = r(B) ∩ U."""
    U = frozenset(U)
    bad = invariance_witness(gpd, U)
    if bad is not None:
        raise NotInvariant("unit set is not invariant", bad)
    bis = list(bisections if bisections is not None else enumerate_graded(gpd, cap))
    zero = frozenset()
    elems = [zero] + bis
    domains = {}
    maps = {}
    for B in elems:
        domains[B] = bis_r(gpd, B) & U
        maps[B] = {gpd.d[b]: gpd.r[b] for b in B if gpd.d[b] in U}
    unit = gpd.unit_set if gpd.unit_set in set(bis) else None
    return SGSetAction(
        elems,
        lambda s, t: bis_product(gpd, s, t),
        lambda s: bis_inverse(gpd, s),
        lambda s, t: s <= t,
        U,
        domains,
        maps,
        zero=zero,
        unit=unit,
    )


# -- effectiveness -----------------------------------------------------------


def iso_group(gpd, u):
    return [a for a in gpd.arrows_from(u) if gpd.r[a] == u]


def is_effective(gpd):
    """On a discrete groupoid the interior of the isotropy is the isotropy."""
    return all(gpd.d[a] != gpd.r[a] or a in gpd.unit_set for a in gpd.arrows)


def is_strongly_effective(gpd):
    for D in invariant_unit_sets(gpd):
        if D and not is_effective(restrict_groupoid(gpd, D)):
            return False
    return True


def effectiveness(gpd, mode, u=None):
    if mode == "iso_group":
        return iso_group(gpd, u)
    if mode == "is_effective":
        return is_effective(gpd)
    if mode == "is_strongly_effective":
        return is_strongly_effective(gpd)
    raise ValueError(f"unknown mode {mode!r}")


def group_as_groupoid(group):
    """A finite group as a one-unit groupoid graded by itself."""
    elems = group.elements()
    e = group.identity()
    return FiniteGradedGroupoid(
        elems,
        {g: e for g in elems},
        {g: e for g in elems},
        lambda a, b: a * b,
        {g: g.inv() for g in elems},
        {g: g for g in elems},
        group,
        key=lambda g: g.key(),
        name="group",
    )


def check_groupoid_iso(src, tgt, eta):
    """Certificate that the arrow map ``eta`` is a grading-preserving
    isomorphism of groupoids."""
    rep = Report("groupoid isomorphism")
    img = [eta(a) for a in src.arrows]
    ok = len(set(img)) == len(img) and set(img) == tgt.arrow_set
    rep.add("bijective on arrows", ok, {"source": len(src), "target": len(tgt)})
    if not ok:
        return rep
    bad = next((a for a in src.arrows if tgt.cocycle[eta(a)] != src.cocycle[a]), None)
    rep.add("preserves the grading", bad is None, bad)
    bad = next(
        (a for a in src.arrows if eta(src.d[a]) != tgt.d[eta(a)] or eta(src.r[a]) != tgt.r[eta(a)]),
        None,
    )
    rep.add("commutes with d and r", bad is None, bad)
    bad = None
    for a in src.arrows:
        for b in src.arrows_from_r(src.d[a]):
            if eta(src.compose(a, b)) != tgt.compose(eta(a), eta(b)):
                bad = (a, b)
                break
        if bad:
            break
    rep.add("functorial", bad is None, bad)
    return rep
