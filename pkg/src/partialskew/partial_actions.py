"""Partial actions of groups and inverse semigroups on finite sets and on
their function algebras."""

import itertools
from dataclasses import dataclass

from .errors import IllFormed, InstanceMismatch, NotInvariant
from .groups import group_from_json
from .report import Report
from .scalars import QQ, FiniteSpace, FnElem


class SetPartialAction:
    """(φ_g, X_g, X) for a group G on a finite space X.

    ``domains`` maps group elements to subsets X_g; ``maps`` maps g to a dict
    describing φ_g: X_{g^-1} -> X_g.  Elements absent from ``domains`` have
    empty domain.  A missing φ_g is filled in as the inverse of φ_{g^-1}; a
    missing identity entry defaults to (X, id).  Nothing else is assumed:
    use ``validate_group_action`` for the axioms.
    """

    def __init__(self, group, space, domains, maps=None):
        self.group = group
        self.space = space
        maps = dict(maps or {})
        dom = {}
        for g, d in domains.items():
            if not group.contains(g):
                raise InstanceMismatch(f"{g!r} is not in {group!r}")
            d = space.subset(d)
            if d:
                dom[g] = d
        e = group.identity()
        if e not in dom and e not in maps:
            dom[e] = frozenset(space.points)
        if e not in maps:
            maps[e] = {x: x for x in dom.get(e, ())}
        full = {}
        for g, m in maps.items():
            if not group.contains(g):
                raise InstanceMismatch(f"{g!r} is not in {group!r}")
            space.subset(m.keys())
            space.subset(m.values())
            full[g] = {str(k): str(v) for k, v in m.items()}
        for g in list(full):
            gi = g.inv()
            if gi not in full:
                full[gi] = {v: k for k, v in full[g].items()}
        for g in dom:
            full.setdefault(g, {})
        self.domains = dom
        self.maps = full
        self._support = sorted(
            set(dom) | {g for g, m in full.items() if m}, key=lambda x: x.key()
        )

    def __repr__(self):
        return f"SetPartialAction({self.group!r}, |X|={len(self.space)}, support={len(self._support)})"

    def support(self):
        return list(self._support)

    def domain(self, g):
        return self.domains.get(g, frozenset())

    def phi(self, g, x):
        """φ_g(x) for x in X_{g^-1}."""
        try:
            return self.maps[g][x]
        except KeyError:
            raise IllFormed(f"φ_{g} is not defined at {x!r}") from None

    def phi_set(self, g, subset):
        return frozenset(self.phi(g, x) for x in subset)

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "space": self.space.to_json(),
            "domains": {
                str(g): self.space.ordered(self.domain(g)) for g in self._support if self.domain(g)
            },
            "maps": {
                str(g): {x: self.maps[g][x] for x in self.space.ordered(self.maps[g])}
                for g in self._support
                if self.maps.get(g)
            },
        }

    @classmethod
    def from_json(cls, obj, group=None):
        group = group or group_from_json(obj["group"])
        space = FiniteSpace.from_json(obj["space"])
        domains = {group.parse(k): v for k, v in obj.get("domains", {}).items()}
        maps = {group.parse(k): v for k, v in obj.get("maps", {}).items()}
        return cls(group, space, domains, maps)

    def __eq__(self, other):
        if not isinstance(other, SetPartialAction) or other.group is not self.group:
            return False
        if other.space != self.space:
            return False
        keys = set(self._support) | set(other._support)
        return all(
            self.domain(g) == other.domain(g) and self.maps.get(g, {}) == other.maps.get(g, {})
            for g in keys
        )

    __hash__ = None


def _pairs_ii(a):
    supp = a.support()
    out = []
    for g in supp:
        hs = set(supp) | {g.inv() * k for k in supp}
        out.extend((g, h) for h in sorted(hs, key=lambda x: x.key()))
    return out


def _pairs_iii(a):
    supp = a.support()
    out = set()
    for h in supp:
        for k in supp:
            out.add((k * h.inv(), h))
    return sorted(out, key=lambda p: (p[0].key(), p[1].key()))


def validate_group_action(a):
    """Check well-formedness and axioms (i)-(iii); report the first failure.

    For infinite groups only pairs that can involve a nonempty domain are
    inspected, which is exhaustive in the finitely supported regime.
    """
    rep = Report("partial group action")
    X = frozenset(a.space.points)
    e = a.group.identity()
    for g in a.support():
        m = a.maps.get(g, {})
        src, dst = a.domain(g.inv()), a.domain(g)
        if set(m) != src:
            rep.add("φ_g defined exactly on X_{g^-1}", False, {"g": g})
            return rep
        if not set(m.values()) <= dst:
            x = next(x for x in m if m[x] not in dst)
            rep.add("φ_g maps into X_g", False, {"g": g, "x": x})
            return rep
        if len(set(m.values())) != len(m) or set(m.values()) != dst:
            rep.add("φ_g is a bijection onto X_g", False, {"g": g})
            return rep
    rep.add("maps are bijections X_{g^-1} -> X_g", True)
    ok = a.domain(e) == X and all(a.maps[e].get(x) == x for x in X)
    rep.add("(i) X_ε = X and φ_ε = id", ok, None if ok else {"g": e})
    if not ok:
        return rep
    for g, h in _pairs_ii(a):
        lhs = a.phi_set(g, a.domain(g.inv()) & a.domain(h))
        rhs = a.domain(g) & a.domain(g * h)
        if lhs != rhs:
            x = sorted(lhs ^ rhs)[0]
            rep.add("(ii) φ_g(X_{g^-1} ∩ X_h) = X_g ∩ X_{gh}", False, {"g": g, "h": h, "x": x})
            return rep
    rep.add("(ii) φ_g(X_{g^-1} ∩ X_h) = X_g ∩ X_{gh}", True)
    for g, h in _pairs_iii(a):
        for x in a.space.ordered(a.domain(h.inv()) & a.domain((g * h).inv())):
            y = a.phi(h, x)
            if y not in a.domain(g.inv()) or a.phi(g, y) != a.phi(g * h, x):
                rep.add("(iii) φ_g φ_h = φ_{gh}", False, {"g": g, "h": h, "x": x})
                return rep
    rep.add("(iii) φ_g φ_h = φ_{gh}", True)
    return rep


# -- invariant subsets -----------------------------------------------------


def is_invariant(a, V):
    """Return None if φ_{g^-1}(X_g ∩ V) ⊆ V for all g, else a witness (g, x)."""
    V = a.space.subset(V)
    for g in a.support():
        for x in a.space.ordered(a.domain(g) & V):
            if a.phi(g.inv(), x) not in V:
                return (g, x)
    return None


def orbits(a):
    """The orbits of the action, as frozensets, in order of first point."""
    seen = {}
    out = []
    for x in a.space.points:
        if x in seen:
            continue
        orb = closure(a, {x})
        out.append(orb)
        for y in orb:
            seen[y] = True
    return out


def closure(a, seed):
    """Smallest invariant set containing ``seed``."""
    todo = list(a.space.subset(seed))
    out = set(todo)
    while todo:
        x = todo.pop()
        for g in a.support():
            if x in a.domain(g.inv()):
                y = a.phi(g, x)
                if y not in out:
                    out.add(y)
                    todo.append(y)
    return frozenset(out)


def restrict(a, V):
    """The restricted action (φ_g, X_g ∩ V, V); V must be invariant."""
    V = a.space.subset(V)
    bad = is_invariant(a, V)
    if bad is not None:
        raise NotInvariant(f"{sorted(V)} is not invariant", bad)
    space = FiniteSpace(a.space.ordered(V))
    domains = {g: a.domain(g) & V for g in a.support()}
    maps = {
        g: {x: y for x, y in a.maps[g].items() if x in V}
        for g in a.support()
    }
    return SetPartialAction(a.group, space, domains, maps)


def invariant_subsets(a, mode="enumerate", arg=None):
    """``enumerate``: every invariant subset (unions of orbits), sorted by size
    then point order; ``closure``: the invariant closure of ``arg``;
    ``restrict``: the action restricted to ``arg``."""
    if mode == "closure":
        return closure(a, arg)
    if mode == "restrict":
        return restrict(a, arg)
    if mode != "enumerate":
        raise ValueError(f"unknown mode {mode!r}")
    orbs = orbits(a)
    out = []
    for k in range(len(orbs) + 1):
        for pick in itertools.combinations(orbs, k):
            out.append(frozenset().union(*pick))
    idx = a.space.index
    out.sort(key=lambda s: (len(s), sorted(idx[x] for x in s)))
    return out


def invariant_subsets_brute(a):
    """Oracle: test every subset of X."""
    pts = a.space.points
    out = []
    for k in range(len(pts) + 1):
        for pick in itertools.combinations(pts, k):
            if is_invariant(a, pick) is None:
                out.append(frozenset(pick))
    return out


# -- induced actions along homomorphisms ------------------------------------


@dataclass(frozen=True)
class Obstruction:
    """Kernel elements g in the support with X_g ≠ X_{g^-1} or φ_g ≠ id."""

    witnesses: tuple

    def __bool__(self):
        return False

    def __str__(self):
        return "Obstruction(" + ", ".join(str(g) for g in self.witnesses) + ")"


def kernel_obstructions(a, psi):
    out = []
    for g in a.support():
        if g.is_identity() or not psi(g).is_identity():
            continue
        if a.domain(g) != a.domain(g.inv()) or any(a.phi(g, x) != x for x in a.domain(g.inv())):
            out.append(g)
    return tuple(out)


def induce_via_hom(a, psi):
    """The partial action of psi's target induced along psi, or an Obstruction."""
    if psi.source is not a.group:
        raise InstanceMismatch("homomorphism source is not the acting group")
    bad = kernel_obstructions(a, psi)
    if bad:
        return Obstruction(bad)
    H = psi.target
    domains, maps = {}, {}
    for g in a.support():
        h = psi(g)
        domains.setdefault(h, set()).update(a.domain(g))
        m = maps.setdefault(h, {})
        for x, y in a.maps[g].items():
            if m.get(x, y) != y:
                # cannot happen once the kernel condition holds
                raise IllFormed(f"induced map not well defined at {x!r}")
            m[x] = y
    return SetPartialAction(H, a.space, domains, maps)


# -- actions on function algebras ----------------------------------------


class AlgPartialAction:
    """A partial action of G on a commutative algebra A with a distinguished
    basis, where every ideal A_g is spanned by basis labels and every
    α_g: A_{g^-1} -> A_g permutes basis labels.

    Covers C_R(X) (basis = point indicators) as well as the P_E algebra.
    """

    def __init__(self, group, field, labels, mul_basis, domains, maps, name="A", key=None):
        self.group = group
        self.field = field
        self.key = key or (lambda lab: lab)
        self.labels = tuple(sorted(labels, key=self.key))
        self.mul_basis = mul_basis
        self.domains = {g: frozenset(d) for g, d in domains.items() if d}
        self.maps = {g: dict(m) for g, m in maps.items() if m}
        self.name = name
        self.base = None  # the set action when induced from one

    def support(self):
        return sorted(self.domains, key=lambda g: g.key())

    def domain(self, g):
        return self.domains.get(g, frozenset())

    def alpha(self, g, vec):
        """α_g on a vector supported in A_{g^-1}."""
        m = self.maps.get(g, {})
        out = {}
        for lab, c in vec.items():
            if lab not in m:
                raise IllFormed(f"{lab!r} is outside the domain of α_{g}")
            out[m[lab]] = c
        return out

    def mul(self, u, v):
        ring = self.field
        acc = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.mul_basis(a, b).items():
                    s = ring.add(acc.get(c, ring.zero), ring.mul(ring.mul(x, y), z))
                    if s == 0:
                        acc.pop(c, None)
                    else:
                        acc[c] = s
        return acc

    def apply_fn(self, g, f):
        """φ_g(f) = f ∘ φ_{g^-1} for an FnElem supported in X_{g^-1}."""
        if self.base is None:
            raise IllFormed("apply_fn needs an action induced from a set action")
        out = self.alpha(g, dict(f.coeffs))
        return FnElem._raw(f.space, f.ring, out)

    def validate(self):
        """Ideals, isomorphisms and axioms (i)-(iii) at the basis level."""
        rep = Report(f"algebra partial action on {self.name}")
        e = self.group.identity()
        ok = self.domain(e) == frozenset(self.labels) and all(
            self.maps[e].get(x) == x for x in self.labels
        )
        rep.add("(i) A_ε = A and α_ε = id", ok)
        for g in self.support():
            for lab in self.domain(g):
                for other in self.labels:
                    if not set(self.mul_basis(lab, other)) <= self.domain(g):
                        rep.add("each A_g is an ideal", False, {"g": g, "label": lab})
                        return rep
        rep.add("each A_g is an ideal", True)
        for g in self.support():
            m = self.maps.get(g, {})
            if set(m) != self.domain(g.inv()) or set(m.values()) != self.domain(g) or len(set(m.values())) != len(m):
                rep.add("α_g: A_{g^-1} -> A_g bijective on bases", False, {"g": g})
                return rep
            for a, b in itertools.product(sorted(m, key=self.key), repeat=2):
                if self.alpha(g, self.mul_basis(a, b)) != self.mul_basis(m[a], m[b]):
                    rep.add("α_g multiplicative", False, {"g": g, "pair": (a, b)})
                    return rep
        rep.add("α_g: A_{g^-1} -> A_g bijective on bases", True)
        rep.add("α_g multiplicative", True)
        supp = self.support()
        for g in supp:
            for h in supp:
                lhs = frozenset(self.maps[g][x] for x in self.domain(g.inv()) & self.domain(h))
                if lhs != self.domain(g) & self.domain(g * h):
                    rep.add("(ii) α_g(A_{g^-1} ∩ A_h) = A_g ∩ A_{gh}", False, {"g": g, "h": h})
                    return rep
                for x in self.domain(h.inv()) & self.domain((g * h).inv()):
                    if self.maps[g][self.maps[h][x]] != self.maps[g * h][x]:
                        rep.add("(iii) α_g α_h = α_{gh}", False, {"g": g, "h": h, "x": x})
                        return rep
        rep.add("(ii) α_g(A_{g^-1} ∩ A_h) = A_g ∩ A_{gh}", True)
        rep.add("(iii) α_g α_h = α_{gh}", True)
        return rep


def induce_on_functions(a, field=QQ):
    """The induced action on C_R(X): ideals C_R(X_g), φ_g(f) = f ∘ φ_{g^-1}."""
    idx = a.space.index

    def mul_basis(x, y):
        return {x: field.one} if x == y else {}

    alg = AlgPartialAction(
        a.group,
        field,
        a.space.points,
        mul_basis,
        {g: a.domain(g) for g in a.support()},
        {g: a.maps[g] for g in a.support()},
        name=f"C({','.join(a.space.points)})",
        key=idx.__getitem__,
    )
    alg.base = a
    return alg


# -- inverse semigroup actions --------------------------------------------


class SGSetAction:
    """A partial action (π_s, X_s, X) of an inverse semigroup on a finite set.

    ``elements`` lists the semigroup elements considered; ``mul``, ``star``
    and ``leq`` are the semigroup operations.  Products outside ``elements``
    and elements with no declared domain act with empty domain.
    """

    def __init__(self, elements, mul, star, leq, space_points, domains, maps, zero=None, unit=None):
        self.elements = list(elements)
        self.mul = mul
        self.star = star
        self.leq = leq
        self.points = frozenset(space_points)
        self.domains = {s: frozenset(d) for s, d in domains.items()}
        self.maps = {s: dict(m) for s, m in maps.items()}
        self.zero = zero
        self.unit = unit

    def domain(self, s):
        return self.domains.get(s, frozenset())

    def pi(self, s, x):
        return self.maps[s][x]


def validate_sg_action(c, elements=None):
    """Conditions (i)-(iv) of a partial action of an inverse semigroup.

    Only elements with nonempty domain can witness a failure, so by default
    the check runs over those.
    """
    rep = Report("inverse semigroup partial action")
    elems = [s for s in (elements or c.elements) if c.domain(s)]
    if c.zero is not None and c.domain(c.zero):
        rep.add("X_0 = ∅", False)
        return rep
    if c.unit is not None:
        ok = c.domain(c.unit) == c.points and all(c.maps[c.unit].get(x) == x for x in c.points)
        rep.add("X_unit = X and π_unit = id", ok)
        if not ok:
            return rep
    for s in elems:
        m = c.maps.get(s, {})
        if set(m) != c.domain(c.star(s)) or set(m.values()) != c.domain(s) or len(set(m.values())) != len(m):
            rep.add("π_s: X_{s*} -> X_s bijective", False, {"s": s})
            return rep
    rep.add("π_s: X_{s*} -> X_s bijective", True)
    for s in elems:
        inv = c.maps.get(c.star(s), {})
        if any(inv.get(y) != x for x, y in c.maps[s].items()):
            rep.add("(i) π_s^-1 = π_{s*}", False, {"s": s})
            return rep
    rep.add("(i) π_s^-1 = π_{s*}", True)
    for s in elems:
        ss = c.star(s)
        for t in elems:
            st = c.mul(s, t)
            img = {c.pi(s, x) for x in c.domain(ss) & c.domain(t)}
            if not img <= c.domain(st):
                rep.add("(ii) π_s(X_{s*} ∩ X_t) ⊆ X_{st}", False, {"s": s, "t": t})
                return rep
    rep.add("(ii) π_s(X_{s*} ∩ X_t) ⊆ X_{st}", True)
    for s in elems:
        for t in elems:
            if c.leq(s, t) and not c.domain(s) <= c.domain(t):
                rep.add("(iii) s ≤ t implies X_s ⊆ X_t", False, {"s": s, "t": t})
                return rep
    rep.add("(iii) s ≤ t implies X_s ⊆ X_t", True)
    for s in elems:
        for t in elems:
            st = c.mul(s, t)
            ts = c.star(t)
            tsss = c.mul(ts, c.star(s))
            for x in c.domain(ts) & c.domain(tsss):
                y = c.pi(t, x)
                if y not in c.maps.get(s, {}) or c.maps[s][y] != c.maps.get(st, {}).get(x):
                    rep.add("(iv) π_s π_t = π_{st}", False, {"s": s, "t": t, "x": x})
                    return rep
    rep.add("(iv) π_s π_t = π_{st}", True)
    return rep


def induce_sg_action(a, U=None):
    """The action φ' of S(G) on U (default X) induced by a group partial action:
    X_s = U_g ∩ U_{l_1} ∩ ... for s = eps_L[g], and φ'_s = φ_g on X_{s*}.

    Only elements of S(G) whose indices lie in the support are listed; the
    others have empty domain.
    """
    from .exel import sg_elements, sg_leq, sg_mul, sg_star

    U = frozenset(a.space.points) if U is None else a.space.subset(U)

    def dom(s):
        d = a.domain(s.g) & U
        for l in s.eps:
            d &= a.domain(l)
        return d

    elems = sg_elements(a.group, a.support())
    domains = {s: dom(s) for s in elems}
    maps = {}
    for s in elems:
        ss = sg_star(s)
        maps[s] = {x: a.phi(s.g, x) for x in dom(ss)}
    unit = None
    for s in elems:
        if s.g.is_identity() and not s.eps:
            unit = s
    return SGSetAction(elems, sg_mul, sg_star, sg_leq, U, domains, maps, unit=unit)
