"""Exact scalars and the function algebra C_R(X) of a finite discrete space."""

from fractions import Fraction
from types import MappingProxyType

from .errors import IllFormed, InstanceMismatch, NeedsField


class Ring:
    """A commutative coefficient ring whose elements are plain Python values.

    Subclasses fix the native representation: ``Fraction`` for the
    rationals, ``int`` in ``[0, p)`` for prime fields, ``int`` for the
    integers.
    """

    name = "?"
    is_field = True

    zero = 0
    one = 1

    def __call__(self, value):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        raise NeedsField(f"{self.name} is not a field")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a):
        return str(a)

    def __repr__(self):
        return self.name


class Rationals(Ring):
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value):
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, float):
            raise IllFormed("floating point scalars are not accepted")
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Ring):
    def __init__(self, p):
        p = int(p)
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise IllFormed(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def __call__(self, value):
        if isinstance(value, dict):
            if int(value["mod"]) != self.p:
                raise InstanceMismatch(f"residue mod {value['mod']} in {self.name}")
            value = value["val"]
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator vanishes in {self.name}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, float):
            raise IllFormed("floating point scalars are not accepted")
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class Integers(Ring):
    """The ring Z; accepted as scalars but refused by every solver."""

    name = "ZZ"
    is_field = False

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise IllFormed(f"{value} is not an integer")
            return value.numerator
        if isinstance(value, float):
            raise IllFormed("floating point scalars are not accepted")
        return int(value)

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("ZZ")


QQ = Rationals()
ZZ = Integers()


def GF(p):
    return PrimeField(p)


def field_from_name(name):
    """Map a CLI field name (``q``, ``f2``, ``f5``, ``gf7``, ``zz``) to a ring."""
    key = name.strip().lower()
    if key in ("q", "qq", "rationals"):
        return QQ
    if key in ("z", "zz", "integers"):
        return ZZ
    for prefix in ("gf", "f"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return GF(int(key[len(prefix):]))
    raise IllFormed(f"unknown field {name!r}")


def parse_scalar(obj, ring=None):
    """Read a scalar as written in instance files: ``"3/4"`` or ``{"mod": p, "val": v}``."""
    if isinstance(obj, dict):
        r = GF(obj["mod"])
        if ring is not None and ring != r:
            raise InstanceMismatch(f"{r} scalar where {ring} expected")
        return r, r(obj)
    r = ring if ring is not None else QQ
    return r, r(obj)


def require_field(ring):
    if not ring.is_field:
        raise NeedsField(f"{ring.name} is not a field")
    return ring


# -- vectors -------------------------------------------------------------
#
# Sparse vectors are dicts key -> nonzero scalar.  They are treated as
# immutable once returned.


def vec_add(ring, u, v, scale=None):
    """Return u + scale*v."""
    out = dict(u)
    for k, c in v.items():
        if scale is not None:
            c = ring.mul(scale, c)
        s = ring.add(out.get(k, ring.zero), c)
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(ring, c, v):
    if c == 0:
        return {}
    out = {}
    for k, a in v.items():
        b = ring.mul(c, a)
        if b != 0:
            out[k] = b
    return out


def vec_sum(ring, vectors):
    out = {}
    for v in vectors:
        for k, c in v.items():
            s = ring.add(out.get(k, ring.zero), c)
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
    return out


def vec_accumulate(ring, acc, key, c):
    """In-place acc[key] += c on a scratch dict (never on a returned vector)."""
    s = ring.add(acc.get(key, ring.zero), c)
    if s == 0:
        acc.pop(key, None)
    else:
        acc[key] = s


# -- finite spaces and C_R(X) -------------------------------------------


class FiniteSpace:
    """A finite discrete space; every subset is clopen and compact."""

    def __init__(self, points):
        points = tuple(str(p) for p in points)
        if len(set(points)) != len(points):
            raise IllFormed("duplicate point labels")
        self.points = points
        self.index = {p: i for i, p in enumerate(points)}

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"FiniteSpace({list(self.points)})"

    def __eq__(self, other):
        return isinstance(other, FiniteSpace) and other.points == self.points

    def __hash__(self):
        return hash(self.points)

    def subset(self, labels):
        labels = frozenset(str(x) for x in labels)
        unknown = labels - self.index.keys()
        if unknown:
            raise InstanceMismatch(f"unknown points {sorted(unknown)}")
        return labels

    def ordered(self, subset):
        return sorted(subset, key=self.index.__getitem__)

    def to_json(self):
        return {"points": list(self.points)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["points"])


class FnElem:
    """A finitely supported function X -> R, stored by its nonzero values."""

    __slots__ = ("space", "ring", "coeffs")

    def __init__(self, space, ring, coeffs=None):
        self.space = space
        self.ring = ring
        clean = {}
        for x, c in (coeffs or {}).items():
            if x not in space.index:
                raise InstanceMismatch(f"point {x!r} not in {space}")
            c = ring(c) if not _is_native(ring, c) else c
            if c != 0:
                clean[x] = c
        self.coeffs = MappingProxyType(clean)

    @classmethod
    def _raw(cls, space, ring, coeffs):
        obj = cls.__new__(cls)
        obj.space = space
        obj.ring = ring
        obj.coeffs = MappingProxyType(coeffs)
        return obj

    def _check(self, other):
        if not isinstance(other, FnElem):
            raise InstanceMismatch(f"cannot combine FnElem with {type(other).__name__}")
        if other.space != self.space or other.ring != self.ring:
            raise InstanceMismatch("functions live on different spaces or rings")

    def support(self):
        return frozenset(self.coeffs)

    def __call__(self, x):
        return self.coeffs.get(x, self.ring.zero)

    def __add__(self, other):
        self._check(other)
        return FnElem._raw(self.space, self.ring, vec_add(self.ring, self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return FnElem._raw(
            self.space, self.ring,
            vec_add(self.ring, self.coeffs, other.coeffs, self.ring.neg(self.ring.one)),
        )

    def __neg__(self):
        return self.scale(self.ring.neg(self.ring.one))

    def __mul__(self, other):
        self._check(other)
        ring = self.ring
        small, big = (self.coeffs, other.coeffs)
        if len(small) > len(big):
            small, big = big, small
        out = {}
        for x, a in small.items():
            b = big.get(x)
            if b is not None:
                c = ring.mul(a, b)
                if c != 0:
                    out[x] = c
        return FnElem._raw(self.space, ring, out)

    def scale(self, r):
        if not _is_native(self.ring, r):
            r = self.ring(r)
        return FnElem._raw(self.space, self.ring, vec_scale(self.ring, r, self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, FnElem)
            and other.space == self.space
            and other.ring == self.ring
            and dict(other.coeffs) == dict(self.coeffs)
        )

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [
            f"{self.ring.fmt(self.coeffs[x])}*1_{{{x}}}"
            for x in self.space.ordered(self.coeffs)
        ]
        return " + ".join(parts)


def _is_native(ring, c):
    if isinstance(ring, Rationals):
        return isinstance(c, Fraction)
    if isinstance(ring, PrimeField):
        return isinstance(c, int) and 0 <= c < ring.p
    return isinstance(c, int) and not isinstance(c, bool)


def fn_arith(a, b, op):
    """Pointwise arithmetic in C_R(X).

    ``op`` is ``"add"``, ``"mul"`` or ``("scale", r)``; in the scale case
    ``b`` is ignored.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if isinstance(op, tuple) and op[0] == "scale":
        return a.scale(op[1])
    raise ValueError(f"unknown op {op!r}")


def indicator(space, subset, ring=QQ):
    subset = space.subset(subset)
    return FnElem._raw(space, ring, {x: ring.one for x in subset})


def zero_fn(space, ring=QQ):
    return FnElem._raw(space, ring, {})


def local_unit_for(fs):
    """The idempotent 1_{union of supports}; it fixes every f in ``fs`` on both sides."""
    if not fs:
        raise ValueError("local_unit_for needs at least one function")
    first = fs[0]
    for f in fs[1:]:
        first._check(f)
    support = frozenset().union(*(f.support() for f in fs))
    return indicator(first.space, support, first.ring)


def pointwise_quasi_inverse(f):
    """f' with f'(x) = f(x)^{-1} on supp(f); then f f' f = f."""
    ring = require_field(f.ring)
    return FnElem._raw(f.space, ring, {x: ring.inv(c) for x, c in f.coeffs.items()})
