"""Discrete groups: finite (by table), the integers, and free groups on finite alphabets."""

import itertools
from dataclasses import dataclass

from .errors import IllFormed, InstanceMismatch


@dataclass(frozen=True)
class GroupElem:
    """An element together with the group that owns it."""

    group: object
    value: object

    def _same(self, other):
        if not isinstance(other, GroupElem) or other.group is not self.group:
            raise InstanceMismatch("group elements from different groups")

    def __mul__(self, other):
        self._same(other)
        return GroupElem(self.group, self.group._mul(self.value, other.value))

    def inv(self):
        return GroupElem(self.group, self.group._inv(self.value))

    def is_identity(self):
        return self.value == self.group._identity

    def key(self):
        return self.group._key(self.value)

    def __lt__(self, other):
        self._same(other)
        return self.key() < other.key()

    def __str__(self):
        return self.group.format(self)

    def __repr__(self):
        return f"<{self.group.format(self)}>"


class Group:
    is_finite = False
    is_abelian = False
    _identity = None

    def identity(self):
        return GroupElem(self, self._identity)

    def elem(self, value):
        if not self._valid(value):
            raise InstanceMismatch(f"{value!r} is not an element of {self!r}")
        return GroupElem(self, value)

    def _valid(self, value):
        raise NotImplementedError

    def contains(self, g):
        return isinstance(g, GroupElem) and g.group is self

    def elements(self):
        raise IllFormed(f"{self!r} is infinite")

    def parse(self, text):
        raise NotImplementedError

    def format(self, g):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


class FiniteGroup(Group):
    """A finite group given by its multiplication table over named elements."""

    is_finite = True

    def __init__(self, table, names=None, validate=True):
        n = len(table)
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.names = tuple(str(x) for x in (names if names is not None else range(n)))
        if len(self.names) != n or len(set(self.names)) != n:
            raise IllFormed("group element names must be distinct, one per row")
        if any(len(row) != n for row in self.table):
            raise IllFormed("multiplication table must be square")
        if any(not 0 <= v < n for row in self.table for v in row):
            raise IllFormed("table entries out of range")
        self._index = {nm: i for i, nm in enumerate(self.names)}
        ident = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not ident:
            raise IllFormed("table has no identity")
        self._identity = ident[0]
        self._inverse = []
        for x in range(n):
            inv = [y for y in range(n) if self.table[x][y] == self._identity == self.table[y][x]]
            if not inv:
                raise IllFormed(f"element {self.names[x]} has no inverse")
            self._inverse.append(inv[0])
        if validate:
            for a, b, c in itertools.product(range(n), repeat=3):
                if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                    raise IllFormed(
                        f"table not associative at ({self.names[a]},{self.names[b]},{self.names[c]})"
                    )
        self.is_abelian = all(
            self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n)
        )

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={len(self.table)})"

    def _valid(self, value):
        return isinstance(value, int) and 0 <= value < len(self.table)

    def _mul(self, a, b):
        return self.table[a][b]

    def _inv(self, a):
        return self._inverse[a]

    def _key(self, a):
        return a

    def elements(self):
        return [GroupElem(self, i) for i in range(len(self.table))]

    def parse(self, text):
        try:
            return GroupElem(self, self._index[str(text)])
        except KeyError:
            raise InstanceMismatch(f"{text!r} is not an element name") from None

    def format(self, g):
        return self.names[g.value]

    def to_json(self):
        return {"kind": "finite", "table": [list(r) for r in self.table], "names": list(self.names)}


def cyclic_group(n):
    """Z/n with elements named 0..n-1."""
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], validate=False)


def direct_product(g, h):
    pairs = [(a, b) for a in range(len(g)) for b in range(len(h))]
    index = {p: i for i, p in enumerate(pairs)}
    table = [
        [index[(g.table[a][c], h.table[b][d])] for (c, d) in pairs]
        for (a, b) in pairs
    ]
    names = [f"({g.names[a]},{h.names[b]})" for a, b in pairs]
    return FiniteGroup(table, names, validate=False)


def symmetric_group(n):
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    names = ["".join(str(x) for x in p) for p in perms]
    return FiniteGroup(table, names, validate=False)


class Integers(Group):
    """The additive group Z."""

    is_abelian = True
    _identity = 0

    def __repr__(self):
        return "Integers()"

    def _valid(self, value):
        return isinstance(value, int) and not isinstance(value, bool)

    def _mul(self, a, b):
        return a + b

    def _inv(self, a):
        return -a

    def _key(self, a):
        return (abs(a), a < 0)

    def parse(self, text):
        try:
            return GroupElem(self, int(str(text)))
        except ValueError:
            raise InstanceMismatch(f"{text!r} is not an integer") from None

    def format(self, g):
        return str(g.value)

    def to_json(self):
        return {"kind": "integers"}


class FreeGroup(Group):
    """Free group on a finite alphabet; values are reduced tuples of (letter, +-1).

    Text form: space-separated tokens ``a`` or ``a^-1``; the identity is ``1``.
    """

    _identity = ()

    def __init__(self, alphabet):
        alphabet = tuple(str(a) for a in alphabet)
        for a in alphabet:
            if not a or a == "1" or any(ch in a for ch in " ^*"):
                raise IllFormed(f"invalid free generator name {a!r}")
        if len(set(alphabet)) != len(alphabet):
            raise IllFormed("duplicate free generators")
        self.alphabet = alphabet
        self._rank = {a: i for i, a in enumerate(alphabet)}
        self.is_abelian = len(alphabet) <= 1

    def __repr__(self):
        return f"FreeGroup({list(self.alphabet)})"

    def _valid(self, value):
        if not isinstance(value, tuple):
            return False
        for i, (a, s) in enumerate(value):
            if a not in self._rank or s not in (1, -1):
                return False
            if i and value[i - 1] == (a, -s):
                return False
        return True

    @staticmethod
    def reduce(word):
        out = []
        for a, s in word:
            if out and out[-1] == (a, -s):
                out.pop()
            else:
                out.append((a, s))
        return tuple(out)

    def _mul(self, a, b):
        i = 0
        n = min(len(a), len(b))
        while i < n and a[len(a) - 1 - i] == (b[i][0], -b[i][1]):
            i += 1
        return a[: len(a) - i] + b[i:]

    def _inv(self, a):
        return tuple((x, -s) for x, s in reversed(a))

    def _key(self, a):
        return (len(a), tuple((self._rank[x], -s) for x, s in a))

    def word(self, letters):
        """Element from a sequence of letters / (letter, sign) pairs, reduced."""
        raw = []
        for item in letters:
            if isinstance(item, tuple):
                raw.append((str(item[0]), int(item[1])))
            else:
                raw.append((str(item), 1))
        for a, _ in raw:
            if a not in self._rank:
                raise InstanceMismatch(f"{a!r} is not a generator of {self!r}")
        return GroupElem(self, self.reduce(raw))

    def gen(self, letter):
        return self.word([letter])

    def parse(self, text):
        text = str(text).strip()
        if text in ("1", ""):
            return self.identity()
        raw = []
        for tok in text.split():
            if tok.endswith("^-1"):
                raw.append((tok[:-3], -1))
            else:
                raw.append((tok, 1))
        return self.word(raw)

    def format(self, g):
        if not g.value:
            return "1"
        return " ".join(a if s == 1 else f"{a}^-1" for a, s in g.value)

    def to_json(self):
        return {"kind": "free", "alphabet": list(self.alphabet)}


def group_from_json(obj):
    kind = obj.get("kind")
    if kind == "finite":
        return FiniteGroup(obj["table"], obj.get("names"))
    if kind == "integers":
        return Integers()
    if kind == "free":
        return FreeGroup(obj["alphabet"])
    if kind == "cyclic":
        return cyclic_group(int(obj["order"]))
    raise IllFormed(f"unknown group kind {kind!r}")


def group_from_name(name):
    """Shorthand names used by the CLI: ``zmod:N``, ``z2xz2``, ``sym:N``, ``trivial``, ``integers``."""
    key = name.strip().lower()
    if key.startswith("zmod:"):
        return cyclic_group(int(key[5:]))
    if key in ("z2xz2", "klein"):
        return direct_product(cyclic_group(2), cyclic_group(2))
    if key.startswith("sym:"):
        return symmetric_group(int(key[4:]))
    if key == "trivial":
        return cyclic_group(1)
    if key in ("integers", "z"):
        return Integers()
    raise IllFormed(f"unknown group name {name!r}")


def group_op(a, b, op):
    """``op`` is ``"mul"`` (a*b) or ``"inv"`` (a^-1, b ignored)."""
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")


class GroupHom:
    """A homomorphism given by a rule on element values."""

    def __init__(self, source, target, rule, name="hom"):
        self.source = source
        self.target = target
        self._rule = rule
        self.name = name

    def __call__(self, g):
        if not self.source.contains(g):
            raise InstanceMismatch(f"{g!r} is not in the source of {self.name}")
        return GroupElem(self.target, self._rule(g.value))

    def check(self, pairs=None):
        """Return the first pair (a, b) with h(ab) != h(a)h(b), or None."""
        if pairs is None:
            elems = self.source.elements()
            pairs = itertools.product(elems, elems)
        for a, b in pairs:
            if self(a * b) != self(a) * self(b):
                return (a, b)
        return None


def hom_apply(h, c):
    return h(c)


def identity_hom(group):
    return GroupHom(group, group, lambda v: v, name="id")


def signed_letter_count(free, integers):
    """psi: F -> Z, c |-> (#generators) - (#inverse generators) in the reduced word."""
    return GroupHom(free, integers, lambda w: sum(s for _, s in w), name="psi")


def hom_from_generators(free, target, images):
    """Extend letter images to the free group."""
    images = {str(k): v for k, v in images.items()}
    missing = set(free.alphabet) - images.keys()
    if missing:
        raise IllFormed(f"no image for generators {sorted(missing)}")

    def rule(word):
        out = target.identity()
        for a, s in word:
            img = images[a]
            out = out * (img if s == 1 else img.inv())
        return out.value

    return GroupHom(free, target, rule, name="free-ext")


def hom_from_table(source, target, mapping):
    """A map between finite groups given on every element; validated exhaustively."""
    values = {}
    for g in source.elements():
        img = mapping[g]
        if not target.contains(img):
            raise InstanceMismatch("image outside the target group")
        values[g.value] = img.value
    h = GroupHom(source, target, values.__getitem__, name="table")
    bad = h.check()
    if bad is not None:
        raise IllFormed(f"not a homomorphism at {bad}")
    return h
