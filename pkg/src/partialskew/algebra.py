"""Finite-dimensional graded algebras given by a basis and structure constants,
graded homomorphisms between them, and the verification harness."""

import itertools
from types import MappingProxyType

from networkx.utils import UnionFind

from .errors import InstanceMismatch, NotGraded
from .linalg import Span, solve
from .report import Report
from .scalars import require_field, vec_accumulate, vec_add, vec_scale


class FiniteAlgebra:
    """An algebra with a finite basis of hashable labels.

    ``mul_basis(a, b)`` returns the product of two basis labels as a sparse
    vector (dict label -> scalar); ``grade(label)`` returns its degree.
    Products are cached, so ``mul_basis`` must be a pure function.
    """

    def __init__(self, field, labels, grade, mul_basis, group=None, name="algebra", key=None):
        self.field = field
        self.key = key or (lambda lab: lab)
        self.labels = tuple(sorted(labels, key=self.key))
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise InstanceMismatch("duplicate basis labels")
        self._grade = grade
        self._mul = mul_basis
        self._cache = {}
        self.group = group
        self.name = name

    def __repr__(self):
        return f"<{self.name}: dim {self.dim} over {self.field}>"

    @property
    def dim(self):
        return len(self.labels)

    def order(self, label):
        return self.index[label]

    def grade(self, label):
        return self._grade(label)

    def mul_basis(self, a, b):
        k = (a, b)
        out = self._cache.get(k)
        if out is None:
            out = self._mul(a, b)
            self._cache[k] = out
        return out

    def mul(self, u, v):
        ring = self.field
        acc = {}
        for a, x in u.items():
            for b, y in v.items():
                prod = self.mul_basis(a, b)
                if not prod:
                    continue
                xy = ring.mul(x, y)
                for c, z in prod.items():
                    vec_accumulate(ring, acc, c, ring.mul(xy, z))
        return acc

    def add(self, u, v):
        return vec_add(self.field, u, v)

    def sub(self, u, v):
        return vec_add(self.field, u, v, self.field.neg(self.field.one))

    def scale(self, c, v):
        return vec_scale(self.field, c, v)

    def basis_vec(self, label):
        if label not in self.index:
            raise InstanceMismatch(f"{label!r} is not a basis label of {self.name}")
        return {label: self.field.one}

    def elem(self, vec=None):
        return AlgebraElem(self, vec or {})

    def components(self, v):
        out = {}
        for lab, c in v.items():
            out.setdefault(self.grade(lab), {})[lab] = c
        return out

    def grade_of(self, v):
        """The degree of a nonzero homogeneous vector; raises NotGraded otherwise."""
        comps = self.components(v)
        if len(comps) != 1:
            raise NotGraded(f"vector spans {len(comps)} degrees")
        return next(iter(comps))

    def labels_of_grade(self, g):
        return [lab for lab in self.labels if self.grade(lab) == g]

    def graded_dims(self):
        out = {}
        for lab in self.labels:
            g = self.grade(lab)
            out[g] = out.get(g, 0) + 1
        return out


class AlgebraElem:
    """An immutable element of a FiniteAlgebra."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra, vec):
        self.algebra = algebra
        self.vec = MappingProxyType(dict(vec))

    def _check(self, other):
        if not isinstance(other, AlgebraElem) or other.algebra is not self.algebra:
            raise InstanceMismatch("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElem(self.algebra, self.algebra.add(self.vec, other.vec))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElem(self.algebra, self.algebra.sub(self.vec, other.vec))

    def __mul__(self, other):
        self._check(other)
        return AlgebraElem(self.algebra, self.algebra.mul(self.vec, other.vec))

    def scale(self, c):
        return AlgebraElem(self.algebra, self.algebra.scale(c, self.vec))

    def is_zero(self):
        return not self.vec

    def grade_decompose(self):
        return {g: AlgebraElem(self.algebra, v) for g, v in self.algebra.components(self.vec).items()}

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElem)
            and other.algebra is self.algebra
            and dict(other.vec) == dict(self.vec)
        )

    def __hash__(self):
        return hash(frozenset(self.vec.items()))

    def __repr__(self):
        if not self.vec:
            return "0"
        f = self.algebra.field
        return " + ".join(f"{f.fmt(self.vec[k])}*{k}" for k in sorted(self.vec, key=self.algebra.order))


class QuotientAlgebra(FiniteAlgebra):
    """The quotient of a 'raw' algebra with basis ``raw_labels`` by the span of
    the differences ``p - q`` for the given relation pairs.

    Classes are found by union-find; each is named by its smallest raw label
    (under ``key``).  Products are computed on representatives and reduced.
    Whether the span of the relations is a two-sided ideal is not assumed:
    call ``certify_ideal`` to check it.
    """

    def __init__(self, field, raw_labels, raw_grade, raw_mul, relations, key, group=None, name="quotient"):
        raw_labels = list(raw_labels)
        uf = UnionFind(raw_labels)
        self.relations = list(relations)
        for p, q in self.relations:
            uf.union(p, q)
        self.class_of = {}
        self.members = {}
        for block in uf.to_sets():
            rep = min(block, key=key)
            self.members[rep] = sorted(block, key=key)
            for lab in block:
                self.class_of[lab] = rep
        self.raw_labels = sorted(raw_labels, key=key)
        self.raw_grade = raw_grade
        self.raw_mul = raw_mul
        super().__init__(
            field,
            self.members.keys(),
            raw_grade,
            lambda a, b: self.reduce(raw_mul(a, b)),
            group=group,
            name=name,
            key=key,
        )

    def reduce(self, raw_vec):
        acc = {}
        for lab, c in raw_vec.items():
            vec_accumulate(self.field, acc, self.class_of[lab], c)
        return acc

    def certify_ideal(self, relations=None, partners=None):
        """Check that every relation p - q satisfies (p - q) t ≡ 0 ≡ t (p - q)
        for all raw labels t, and that relations are homogeneous.

        ``partners(p)`` may restrict the raw labels t that can give nonzero
        products with p on either side (a pure speed-up).
        """
        rep = Report("quotient-ideal")
        relations = self.relations if relations is None else relations
        neg = self.field.neg(self.field.one)
        for p, q in relations:
            if self.raw_grade(p) != self.raw_grade(q):
                rep.add("homogeneous relations", False, (p, q))
                return rep
        rep.add("homogeneous relations", True, len(relations))
        for p, q in relations:
            ts = partners(p, q) if partners else self.raw_labels
            for t in ts:
                right = vec_add(self.field, self.raw_mul(p, t), self.raw_mul(q, t), neg)
                if self.reduce(right):
                    rep.add("relations span an ideal", False, {"relation": (p, q), "times": t, "side": "right"})
                    return rep
                left = vec_add(self.field, self.raw_mul(t, p), self.raw_mul(t, q), neg)
                if self.reduce(left):
                    rep.add("relations span an ideal", False, {"relation": (p, q), "times": t, "side": "left"})
                    return rep
        rep.add("relations span an ideal", True)
        return rep


class GradedHom:
    """A linear map given by images of the source basis.

    ``presentation`` optionally supplies a spanning family of the source in
    raw form: ``(raw_labels, reduce, raw_image)``; the map is well defined when
    ``raw_image(t) == h(reduce(t))`` for every raw label t.
    """

    def __init__(self, source, target, images, name="hom", presentation=None):
        self.source = source
        self.target = target
        self.images = {lab: dict(v) for lab, v in images.items()}
        self.name = name
        self.presentation = presentation
        missing = [lab for lab in source.labels if lab not in self.images]
        if missing:
            raise InstanceMismatch(f"{name}: no image for {missing[0]!r}")

    def __call__(self, vec):
        ring = self.target.field
        acc = {}
        for lab, c in vec.items():
            for t, z in self.images[lab].items():
                vec_accumulate(ring, acc, t, ring.mul(c, z))
        return acc

    def compose(self, inner, name=None):
        """self ∘ inner."""
        if inner.target is not self.source:
            raise InstanceMismatch("composition of non-matching maps")
        return GradedHom(
            inner.source,
            self.target,
            {lab: self(inner.images[lab]) for lab in inner.source.labels},
            name=name or f"{self.name}∘{inner.name}",
        )


def identity_hom(alg):
    return GradedHom(alg, alg, {lab: {lab: alg.field.one} for lab in alg.labels}, name="id")


def check_grading(h):
    """First basis label whose image is not homogeneous of the same degree."""
    for lab in h.source.labels:
        img = h.images[lab]
        if not img:
            continue
        g = h.source.grade(lab)
        for t in img:
            if h.target.grade(t) != g:
                return lab
    return None


def check_multiplicative(h, pairs=None):
    src, tgt = h.source, h.target
    if pairs is None:
        pairs = itertools.product(src.labels, src.labels)
    for a, b in pairs:
        lhs = h(src.mul_basis(a, b))
        rhs = tgt.mul(h.images[a], h.images[b])
        if lhs != rhs:
            return (a, b)
    return None


def image_rank(h):
    sp = Span(h.target.field, h.target.order)
    for lab in h.source.labels:
        sp.add(h.images[lab])
    return sp.dim


def verify_graded_iso(h, pairs=None):
    """Certificate that ``h`` is a well-defined, graded, multiplicative bijection.

    Additivity holds by construction (maps are stored on a basis and
    extended linearly), so multiplicativity on basis pairs suffices.
    """
    require_field(h.source.field)
    rep = Report(h.name)
    if h.presentation is not None:
        raw_labels, reduce, raw_image = h.presentation
        bad = None
        for t in raw_labels:
            if raw_image(t) != h(reduce({t: h.source.field.one})):
                bad = t
                break
        rep.add("well defined on the presentation", bad is None, bad)
    bad = check_grading(h)
    rep.add("preserves the grading", bad is None, bad)
    bad = check_multiplicative(h, pairs)
    rep.add("multiplicative on basis pairs", bad is None, bad)
    r = image_rank(h)
    rep.add("injective (rank = dim source)", r == h.source.dim, {"rank": r, "dim": h.source.dim})
    rep.add("surjective (rank = dim target)", r == h.target.dim, {"rank": r, "dim": h.target.dim})
    rep.data["rank"] = r
    return rep


def check_identity(h, labels=None):
    """First label on which an endomorphism differs from the identity."""
    one = h.source.field.one
    for lab in labels if labels is not None else h.source.labels:
        if h.images[lab] != {lab: one}:
            return lab
    return None


def associativity_check(alg, triples=None):
    rep = Report(f"associativity of {alg.name}")
    if triples is None:
        triples = itertools.product(alg.labels, repeat=3)
    count = 0
    for a, b, c in triples:
        count += 1
        lhs = alg.mul(alg.mul_basis(a, b), {c: alg.field.one})
        rhs = alg.mul({a: alg.field.one}, alg.mul_basis(b, c))
        if lhs != rhs:
            rep.add("(xy)z = x(yz)", False, (a, b, c))
            return rep
    rep.add("(xy)z = x(yz)", True, {"triples": count})
    return rep


def graded_quasi_inverse(alg, x):
    """A y of degree deg(x)^-1 with x y x = x, or None.

    The condition is linear in y; among the solutions the one with every
    free coordinate zero (pivots taken in basis order) is returned.
    """
    field = require_field(alg.field)
    if not x:
        return {}
    g = alg.grade_of(x)
    cand = alg.labels_of_grade(g.inv())
    columns = [alg.mul(alg.mul(x, {lab: field.one}), x) for lab in cand]
    sol = solve(field, columns, dict(x), order=alg.order)
    if sol is None:
        return None
    return {lab: c for lab, c in zip(cand, sol) if c != 0}


def span_of(alg, vectors):
    sp = Span(alg.field, alg.order)
    for v in vectors:
        sp.add(v)
    return sp
