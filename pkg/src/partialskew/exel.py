"""Exel's inverse semigroup S(G): standard forms, products, order, and an
independent rewriting oracle for finite G."""

import itertools
from dataclasses import dataclass

from .errors import ConditionViolated, IllFormed, InstanceMismatch, OracleBudget


@dataclass(frozen=True)
class SGElem:
    """eps_{l_1}...eps_{l_n}[g] with ``eps`` = {l_1, ..., l_n}.

    Canonical convention: ``eps`` never contains the identity nor ``g``
    (eps_g is absorbed because [g] = eps_g [g]).  Build through ``sg``.
    """

    eps: frozenset
    g: object

    @property
    def group(self):
        return self.g.group

    def full(self):
        """The ε-set with the absorbed members restored: eps ∪ {ε, g}."""
        return self.eps | {self.g, self.g.group.identity()}

    def is_idempotent(self):
        return self.g.is_identity()

    def key(self):
        return (self.g.key(), sorted(e.key() for e in self.eps))

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        eps = "".join(f"e_{{{l}}}" for l in sorted(self.eps, key=lambda x: x.key()))
        return f"{eps}[{self.g}]"

    __repr__ = __str__


def sg(eps, g):
    """Canonical SGElem from any finite ε-index set."""
    grp = g.group
    ident = grp.identity()
    eps = frozenset(eps)
    for l in eps:
        if l.group is not grp:
            raise InstanceMismatch("ε-index from a different group")
    return SGElem(frozenset(l for l in eps if l != ident and l != g), g)


def bracket(g):
    """The generator [g]."""
    return SGElem(frozenset(), g)


def eps_elem(l):
    """The idempotent eps_l = [l][l^-1]."""
    return sg({l}, l.group.identity())


def sg_mul(a, b):
    """(eps_L[g])(eps_M[h]) = eps_{L ∪ gM ∪ {g}}[gh]."""
    if a.group is not b.group:
        raise InstanceMismatch("S(G) elements over different groups")
    g, h = a.g, b.g
    return sg(a.eps | {g * m for m in b.eps} | {g}, g * h)


def sg_star(s):
    ginv = s.g.inv()
    return sg({ginv * l for l in s.eps} | {ginv}, ginv)


def sg_leq(a, b):
    """Natural order: same group part, and a carries at least b's ε's."""
    if a.group is not b.group:
        raise InstanceMismatch("S(G) elements over different groups")
    return a.g == b.g and a.full() >= b.full()


def sg_elements(group, within=None):
    """All of S(G) for finite G, or the elements whose ε-indices and group
    part lie in ``within`` (a finite set of group elements)."""
    if within is None:
        within = group.elements()
    within = sorted(set(within), key=lambda x: x.key())
    ident = group.identity()
    out = []
    for g in within:
        rest = [l for l in within if l != g and l != ident]
        for k in range(len(rest) + 1):
            for L in itertools.combinations(rest, k):
                out.append(SGElem(frozenset(L), g))
    return out


def expected_order(n):
    """|S(G)| for |G| = n, counting pairs (L, g) with L ⊆ G∖{ε, g}."""
    if n == 1:
        return 1
    return (n + 1) * 2 ** (n - 2)


def as_word(s):
    """A word in the generators representing s: [l][l^-1] for each l, then [g]."""
    word = []
    for l in sorted(s.eps, key=lambda x: x.key()):
        word += [l, l.inv()]
    word.append(s.g)
    return word


# -- universal property ---------------------------------------------------


def check_universal_conditions(group, f, mul, eq=None, pairs=None):
    """Return None or (condition, (g, h)) for the first failure of

    (i)   f(g^-1) f(g) f(h) = f(g^-1) f(gh)
    (ii)  f(g) f(h) f(h^-1) = f(gh) f(h^-1)
    (iii) f(g) f(ε) = f(g)
    """
    eq = eq or (lambda x, y: x == y)
    if pairs is None:
        elems = group.elements()
        pairs = list(itertools.product(elems, elems))
    e = group.identity()
    for g, h in pairs:
        gi, hi = g.inv(), h.inv()
        if not eq(mul(mul(f(gi), f(g)), f(h)), mul(f(gi), f(g * h))):
            return ("i", (g, h))
        if not eq(mul(mul(f(g), f(h)), f(hi)), mul(f(g * h), f(hi))):
            return ("ii", (g, h))
    for g, _ in pairs:
        if not eq(mul(f(g), f(e)), f(g)):
            return ("iii", (g, e))
    return None


class UniversalExtension:
    """The homomorphism S(G) -> target extending f: eps_L[g] |-> prod f(l)f(l^-1) * f(g)."""

    def __init__(self, group, f, mul, eq=None):
        self.group = group
        self.f = f
        self.mul = mul
        self.eq = eq or (lambda x, y: x == y)

    def __call__(self, s):
        if s.group is not self.group:
            raise InstanceMismatch("element of a different S(G)")
        out = None
        for l in sorted(s.eps, key=lambda x: x.key()):
            term = self.mul(self.f(l), self.f(l.inv()))
            out = term if out is None else self.mul(out, term)
        fg = self.f(s.g)
        return fg if out is None else self.mul(out, fg)

    def check_multiplicative(self, pairs):
        for a, b in pairs:
            if not self.eq(self(sg_mul(a, b)), self.mul(self(a), self(b))):
                return (a, b)
        return None


def universal_hom(group, f, mul, eq=None, pairs=None):
    bad = check_universal_conditions(group, f, mul, eq, pairs)
    if bad is not None:
        cond, witness = bad
        raise ConditionViolated(cond, witness)
    return UniversalExtension(group, f, mul, eq)


# -- rewriting oracle -----------------------------------------------------


class RewritingSystem:
    """A string rewriting system over integer letters, oriented by shortlex."""

    def __init__(self, rules=()):
        self.rules = {}
        for l, r in rules:
            self.add(l, r)

    @staticmethod
    def order_key(w):
        return (len(w), w)

    def add(self, a, b):
        a, b = self.normal_form(a), self.normal_form(b)
        if a == b:
            return False
        if self.order_key(a) < self.order_key(b):
            a, b = b, a
        self.rules[a] = b
        return True

    def reducible(self, w):
        n = len(w)
        for lhs in self.rules:
            k = len(lhs)
            for i in range(n - k + 1):
                if w[i:i + k] == lhs:
                    return (i, lhs)
        return None

    def normal_form(self, w):
        w = tuple(w)
        while True:
            hit = self.reducible(w)
            if hit is None:
                return w
            i, lhs = hit
            w = w[:i] + self.rules[lhs] + w[i + len(lhs):]

    def critical_pairs(self, l1, l2):
        r1, r2 = self.rules[l1], self.rules[l2]
        out = []
        # suffix of l1 overlapping a prefix of l2
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] == l2[:k]:
                out.append((r1 + l2[k:], l1[:-k] + r2))
        # l2 inside l1
        if l1 != l2 and len(l2) <= len(l1):
            for i in range(len(l1) - len(l2) + 1):
                if l1[i:i + len(l2)] == l2:
                    out.append((r1, l1[:i] + r2 + l1[i + len(l2):]))
        return out

    def interreduce(self):
        changed = True
        while changed:
            changed = False
            for lhs in list(self.rules):
                rhs = self.rules.pop(lhs)
                if self.reducible(lhs) is not None:
                    # lhs is now reducible by another rule; re-add as an equation
                    self.add(lhs, rhs)
                    changed = True
                else:
                    self.rules[lhs] = self.normal_form(rhs)

    def complete(self, max_rules=5000):
        """Knuth-Bendix completion; raises OracleBudget past ``max_rules``."""
        done = set()
        while True:
            todo = [
                (a, b) for a in self.rules for b in self.rules if (a, b) not in done
            ]
            if not todo:
                return self
            for a, b in todo:
                done.add((a, b))
                if a not in self.rules or b not in self.rules:
                    continue
                for x, y in self.critical_pairs(a, b):
                    if self.add(x, y):
                        if len(self.rules) > max_rules:
                            raise OracleBudget(f"completion exceeded {max_rules} rules")
            self.interreduce()
            done = {(a, b) for (a, b) in done if a in self.rules and b in self.rules}


@dataclass
class OracleTable:
    group: object
    words: list  # irreducible words (tuples of element indices), shortlex order
    table: dict  # (i, j) -> k on positions in ``words``
    system: RewritingSystem

    def __len__(self):
        return len(self.words)

    def class_of(self, elems):
        nf = self.system.normal_form(tuple(self.group_index[e.value] for e in elems))
        return self.index[nf]

    def __post_init__(self):
        self.index = {w: i for i, w in enumerate(self.words)}
        self.group_index = {g.value: i for i, g in enumerate(self.group.elements())}

    def to_json(self):
        names = [str(g) for g in self.group.elements()]
        return {
            "classes": [[names[i] for i in w] for w in self.words],
            "table": [[self.table[(i, j)] for j in range(len(self.words))]
                      for i in range(len(self.words))],
        }


def oracle_enumerate(group, max_len=8, max_rules=5000):
    """Present S(G) by its three defining relations, complete the rewriting
    system, and enumerate the irreducible words with their product table."""
    if not group.is_finite:
        raise IllFormed("the rewriting oracle needs a finite group")
    if max_len < 3:
        raise IllFormed("max_len must be at least 3")
    elems = group.elements()
    n = len(elems)
    idx = {g.value: i for i, g in enumerate(elems)}
    mul = lambda a, b: idx[(elems[a] * elems[b]).value]
    inv = lambda a: idx[elems[a].inv().value]
    e = idx[group.identity().value]
    rules = []
    for g in range(n):
        for h in range(n):
            rules.append(((inv(g), g, h), (inv(g), mul(g, h))))
            rules.append(((g, h, inv(h)), (mul(g, h), inv(h))))
        rules.append(((g, e), (g,)))
    system = RewritingSystem(rules).complete(max_rules)
    lhs_set = set(system.rules)
    maxlhs = max((len(l) for l in lhs_set), default=0)

    def irreducible_ext(w, a):
        v = w + (a,)
        return not any(v[len(v) - k:] in lhs_set for k in range(1, min(len(v), maxlhs) + 1))

    words = []
    layer = [(a,) for a in range(n) if (a,) not in lhs_set]
    length = 1
    while layer:
        words.extend(layer)
        if length >= max_len:
            raise OracleBudget(f"irreducible words of length {max_len} remain")
        layer = [w + (a,) for w in layer for a in range(n) if irreducible_ext(w, a)]
        length += 1
    words.sort(key=RewritingSystem.order_key)
    index = {w: i for i, w in enumerate(words)}
    table = {}
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            table[(i, j)] = index[system.normal_form(u + v)]
    return OracleTable(group, words, table, system)


def compare_with_oracle(group, oracle=None):
    """Check canonical forms and sg_mul against the rewriting oracle.

    Returns a dict with the two counts and the first mismatch (or None).
    """
    oracle = oracle or oracle_enumerate(group)
    elems = sg_elements(group)
    cls = {s: oracle.class_of(as_word(s)) for s in elems}
    report = {"canonical": len(elems), "oracle": len(oracle), "mismatch": None}
    if len(set(cls.values())) != len(elems):
        seen = {}
        for s, c in cls.items():
            if c in seen:
                report["mismatch"] = ("collision", seen[c], s)
                return report
            seen[c] = s
    if len(elems) != len(oracle):
        report["mismatch"] = ("count", len(elems), len(oracle))
        return report
    for a in elems:
        for b in elems:
            if oracle.table[(cls[a], cls[b])] != cls[sg_mul(a, b)]:
                report["mismatch"] = ("product", a, b)
                return report
    return report
