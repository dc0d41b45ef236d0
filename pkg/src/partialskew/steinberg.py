"""Steinberg algebras of finite graded groupoids."""

import itertools

from .algebra import FiniteAlgebra, graded_quasi_inverse
from .errors import InstanceMismatch
from .groupoids import bis_product, bisection_grade, is_bisection
from .report import Report
from .scalars import QQ


class SteinbergAlgebra(FiniteAlgebra):
    """A_R(𝒢) for a finite groupoid with the discrete topology.

    The basis is the point masses 1_{a} at arrows, and convolution is
    1_{a} * 1_{b} = 1_{ab} when d(a) = r(b), else 0.
    """

    def __init__(self, gpd, field=QQ, name=None):
        self.groupoid = gpd
        one = field.one

        def mul_basis(a, b):
            if gpd.d[a] != gpd.r[b]:
                return {}
            return {gpd.compose(a, b): one}

        super().__init__(
            field,
            gpd.arrows,
            gpd.cocycle.__getitem__,
            mul_basis,
            group=gpd.group,
            name=name or f"A({gpd.name})",
            key=gpd.key,
        )

    def indicator(self, B):
        B = frozenset(B)
        if not B <= self.groupoid.arrow_set:
            raise InstanceMismatch("indicator of arrows outside the groupoid")
        return {a: self.field.one for a in B}

    def convolve(self, f, g):
        """(f * g)(γ) = Σ_{αβ=γ} f(α) g(β), computed directly on arrows."""
        gpd = self.groupoid
        ring = self.field
        out = {}
        by_r = {}
        for b, y in g.items():
            by_r.setdefault(gpd.r[b], []).append((b, y))
        for a, x in f.items():
            for b, y in by_r.get(gpd.d[a], ()):
                c = gpd.compose(a, b)
                s = ring.add(out.get(c, ring.zero), ring.mul(x, y))
                if s == 0:
                    out.pop(c, None)
                else:
                    out[c] = s
        return out


def convolve(alg, f, g):
    return alg.convolve(f, g)


def grade_decompose(alg, f):
    """g -> homogeneous component of f."""
    return alg.components(f)


def check_representation(t, bisections, target, pairs=None):
    """Check (R1) t_∅ = 0, (R2) t_D t_C = t_{DC} and (R3) t_D + t_C = t_{D∪C}
    for disjoint same-grade D, C whose union is a bisection.

    ``t`` maps a bisection (frozenset) to a vector of ``target``;
    ``bisections`` is the family the checks range over.
    """
    rep = Report("representation (R1)-(R3)")
    gpd = None
    zero = frozenset()
    rep.add("(R1) t_∅ = 0", not t(zero), t(zero) or None)
    bis = list(bisections)
    known = set(bis)
    if bis:
        gpd = t.groupoid
    bad = None
    for D, C in pairs if pairs is not None else itertools.product(bis, bis):
        DC = bis_product(gpd, D, C)
        if DC and DC not in known:
            continue
        if target.mul(t(D), t(C)) != t(DC):
            bad = (D, C)
            break
    rep.add("(R2) t_D t_C = t_{DC}", bad is None, bad)
    bad = None
    for D, C in itertools.combinations(bis, 2):
        if D & C or bisection_grade(gpd, D) != bisection_grade(gpd, C):
            continue
        U = D | C
        if not is_bisection(gpd, U) or U not in known:
            continue
        if target.add(t(D), t(C)) != t(U):
            bad = (D, C)
            break
    rep.add("(R3) t_D + t_C = t_{D∪C} for disjoint D, C", bad is None, bad)
    faithful = all(t(B) for B in bis)
    rep.data["nonzero on nonempty bisections"] = faithful
    return rep


class Representation:
    """A map from bisections to a target algebra, callable on frozensets."""

    def __init__(self, groupoid, fn):
        self.groupoid = groupoid
        self.fn = fn

    def __call__(self, B):
        if not B:
            return {}
        return self.fn(B)


def tautological_representation(alg):
    return Representation(alg.groupoid, lambda B: alg.indicator(B))


def quasi_inverse(alg, x):
    return graded_quasi_inverse(alg, x)
