"""Ideals of C_K(X) ⋊_φ G: ideals from invariant subsets, V_I, closures and
the lattice correspondence with invariant subsets."""

import itertools

from .errors import NotAnIdeal, NotInvariant, OracleBudget
from .linalg import Span, enumerate_subspaces
from .partial_actions import invariant_subsets, is_invariant
from .report import Report
from .skew_rings import skew_ring_of_action


class Ideal:
    """A subspace of a finite-dimensional algebra, kept in echelon form."""

    def __init__(self, ring, span):
        self.ring = ring
        self.span = span

    @property
    def dim(self):
        return self.span.dim

    def basis(self):
        return self.span.basis()

    def __contains__(self, v):
        return v in self.span

    def contains(self, other):
        return self.span.contains_span(other.span)

    def __le__(self, other):
        return other.contains(self)

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring is self.ring and self.span == other.span

    __hash__ = None

    def frozen(self):
        return self.span.frozen()

    def graded_dims(self):
        out = {}
        for g, part in self.homogeneous_parts().items():
            out[g] = part.dim
        return out

    def homogeneous_parts(self):
        """g -> I ∩ A_g, found by echelonizing with grade-g labels last."""
        R = self.ring
        out = {}
        for g in sorted({R.grade(lab) for lab in R.labels}, key=lambda x: x.key()):
            sp = Span(R.field, _order_last(R, lambda lab, g=g: R.grade(lab) == g), self.basis())
            part = Span(R.field, R.order)
            for row in sp.basis():
                if all(R.grade(lab) == g for lab in row):
                    part.add(row)
            if part.dim:
                out[g] = part
        return out

    def is_graded(self):
        return sum(p.dim for p in self.homogeneous_parts().values()) == self.dim

    def certify(self):
        """Raise NotAnIdeal unless closed under multiplication by basis
        elements on both sides."""
        R = self.ring
        one = R.field.one
        for v in self.basis():
            for lab in R.labels:
                b = {lab: one}
                for side, w in (("left", R.mul(b, v)), ("right", R.mul(v, b))):
                    if w not in self.span:
                        raise NotAnIdeal(f"not closed under {side} multiplication", (v, lab, side))
        return self


def _order_last(R, last):
    n = len(R.labels)
    return lambda lab: R.order(lab) + (n if last(lab) else 0)


def zero_ideal(R):
    return Ideal(R, Span(R.field, R.order))


def ideal_from_invariant_subset(R, a, V):
    """C_K(V) ⋊ G inside R = C_K(X) ⋊ G: spanned by 1_x δ_g with x ∈ V ∩ X_g."""
    V = a.space.subset(V)
    bad = is_invariant(a, V)
    if bad is not None:
        raise NotInvariant(f"{sorted(V)} is not invariant", bad)
    one = R.field.one
    sp = Span(R.field, R.order, [{lab: one} for lab in R.labels if lab[1] in V])
    return Ideal(R, sp).certify()


def ideal_closure(R, gens):
    """The smallest two-sided ideal containing ``gens``."""
    one = R.field.one
    sp = Span(R.field, R.order)
    todo = []
    for v in gens:
        if sp.add(v):
            todo.append(v)
    basis = [{lab: one} for lab in R.labels]
    while todo:
        v = todo.pop()
        for b in basis:
            for w in (R.mul(b, v), R.mul(v, b)):
                if w and sp.add(w):
                    todo.append(w)
    return Ideal(R, sp).certify()


def extract_VI(I, a):
    """V_I: the union of the supports of f with f δ_ε ∈ I."""
    I.certify()
    R = I.ring
    e = R.group.identity()
    sp = Span(R.field, _order_last(R, lambda lab: lab[0] == e), I.basis())
    V = set()
    for row in sp.basis():
        if all(lab[0] == e for lab in row):
            V.update(lab[1] for lab in row)
    V = frozenset(V)
    bad = is_invariant(a, V)
    assert bad is None, f"V_I not invariant at {bad}"
    return V


def largest_graded_subideal(I, graded_ideals):
    """The sum of the listed graded ideals contained in I."""
    R = I.ring
    sp = Span(R.field, R.order)
    for J in graded_ideals:
        if J <= I:
            for v in J.basis():
                sp.add(v)
    return Ideal(R, sp)


# -- enumeration of graded ideals --------------------------------------------


def enumerate_graded_ideals(R, budget=200_000):
    """All graded ideals over a finite prime field.

    Each homogeneous part I_g must be an A_ε-bimodule, so candidates are
    enumerated per grade and filtered; combinations are then certified.
    """
    if getattr(R.field, "p", None) is None:
        raise ValueError("exhaustive enumeration needs a finite prime field")
    e = R.group.identity()
    one = R.field.one
    eps_basis = [{lab: one} for lab in R.labels if lab[0] == e]
    grades = sorted({R.grade(lab) for lab in R.labels}, key=lambda x: x.key())
    per_grade = []
    spent = 0
    for g in grades:
        keys = [lab for lab in R.labels if R.grade(lab) == g]
        cands = []
        for rows in enumerate_subspaces(R.field, keys, budget - spent):
            spent += 1
            sp = Span(R.field, R.order, rows)
            if all(R.mul(b, v) in sp and R.mul(v, b) in sp for v in rows for b in eps_basis):
                cands.append(rows)
        per_grade.append(cands)
    out = []
    combos = 1
    for c in per_grade:
        combos *= len(c)
    if combos > budget:
        raise OracleBudget(f"{combos} grade-wise combinations exceed the budget")
    for pick in itertools.product(*per_grade):
        sp = Span(R.field, R.order, [v for rows in pick for v in rows])
        J = Ideal(R, sp)
        try:
            J.certify()
        except NotAnIdeal:
            continue
        out.append(J)
    return out


def graded_ideals_by_generators(R, a, max_generators=4096):
    """Graded ideals generated by sets of homogeneous basis elements 1_x δ_ε
    (over any field); each such ideal is graded."""
    e = R.group.identity()
    one = R.field.one
    pts = a.space.points
    if 2 ** len(pts) > max_generators:
        raise OracleBudget("too many generator sets")
    out = []
    seen = set()
    for k in range(len(pts) + 1):
        for S in itertools.combinations(pts, k):
            gens = [{(e, x): one} for x in S]
            J = ideal_closure(R, gens)
            key = J.frozen()
            if key not in seen:
                seen.add(key)
                out.append(J)
    for lab in R.labels:
        J = ideal_closure(R, [{lab: one}])
        key = J.frozen()
        if key not in seen:
            seen.add(key)
            out.append(J)
    return out


def correspondence_check(a, field, samples=(), budget=200_000):
    """Invariant subsets V <-> graded ideals C_K(V) ⋊ G, plus maximality of
    C_K(V_I) ⋊ G among graded ideals inside each sampled ideal I."""
    R = skew_ring_of_action(a, field)
    rep = Report("prop312")
    subsets = invariant_subsets(a)
    if getattr(field, "p", None) is not None:
        graded = enumerate_graded_ideals(R, budget)
        how = "exhaustive subspace enumeration"
    else:
        graded = graded_ideals_by_generators(R, a)
        how = "closures of homogeneous generators"
    ideals = [ideal_from_invariant_subset(R, a, V) for V in subsets]
    keys = [J.frozen() for J in ideals]
    rep.add("V -> C(V)⋊G injective", len(set(keys)) == len(keys))
    gkeys = {J.frozen(): J for J in graded}
    missing = [sorted(V) for V, k in zip(subsets, keys) if k not in gkeys]
    rep.add("each C(V)⋊G is a graded ideal", not missing, missing[0] if missing else None)
    extra = [J for k, J in gkeys.items() if k not in set(keys)]
    rep.add("every graded ideal is some C(V)⋊G", not extra, extra[0].basis() if extra else None)
    bad = next((V for V, J in zip(subsets, ideals) if extract_VI(J, a) != V), None)
    rep.add("V_{C(V)⋊G} = V", bad is None, bad)
    for n, gens in enumerate(samples):
        I = ideal_closure(R, gens)
        V = extract_VI(I, a)
        J = ideal_from_invariant_subset(R, a, V)
        ok = J <= I
        big = largest_graded_subideal(I, graded)
        ok_max = big == J
        rep.add(f"sample {n}: C(V_I)⋊G ⊆ I", ok)
        rep.add(f"sample {n}: C(V_I)⋊G is the largest graded ideal in I", ok_max)
    rep.data.update({
        "invariant subsets": [sorted(V) for V in subsets],
        "graded ideals": len(graded),
        "method": how,
        "ideal dims": [J.dim for J in ideals],
    })
    return rep


def random_generators(R, rng, max_gens=2, max_terms=3):
    """A few random vectors of R with small coefficients, at least one nonzero."""
    p = getattr(R.field, "p", None)
    while True:
        gens = []
        for _ in range(rng.randint(1, max_gens)):
            v = {}
            for lab in rng.sample(list(R.labels), min(len(R.labels), rng.randint(1, max_terms))):
                c = R.field(rng.randrange(1, p) if p else rng.choice([-2, -1, 1, 2, 3]))
                if c != 0:
                    v[lab] = c
            if v:
                gens.append(v)
        if gens:
            return gens


def maximality_check(a, field, gens, graded=None):
    """V_I for the ideal generated by ``gens``: invariant, C(V_I)⋊G ⊆ I, and
    C(V_I)⋊G equals the sum of the graded ideals inside I."""
    R = skew_ring_of_action(a, field)
    if graded is None:
        graded = enumerate_graded_ideals(R)
    I = ideal_closure(R, gens)
    V = extract_VI(I, a)
    J = ideal_from_invariant_subset(R, a, V)
    rep = Report("lemma310")
    rep.add("V_I is invariant", is_invariant(a, V) is None, sorted(V))
    rep.add("C(V_I)⋊G ⊆ I", J <= I)
    rep.add("C(V_I)⋊G is the largest graded ideal in I", largest_graded_subideal(I, graded) == J)
    rep.data.update({"V_I": sorted(V), "dim I": I.dim, "graded": I.is_graded()})
    return rep
