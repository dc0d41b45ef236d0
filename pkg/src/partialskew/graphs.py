"""Finite directed graphs: paths, boundary paths, cylinder complexes, the
graph groupoid, the free-group partial action θ, symbolic bisection
algebra and star-injectivity."""

import itertools
from functools import cached_property

import networkx as nx

from .errors import IllFormed, InstanceMismatch, OracleBudget
from .groupoids import FiniteGradedGroupoid
from .groups import FreeGroup, Integers
from .partial_actions import Obstruction, SetPartialAction
from .report import Report
from .scalars import FiniteSpace

DEFAULT_PATH_CAP = 6


class Graph:
    """E = (E^0, E^1, s, r) with named vertices and edges.

    ``edges`` is a list of (name, src, dst).  Vertex and edge names must be
    distinct from each other so that paths have unambiguous labels.
    """

    def __init__(self, vertices, edges, weights=None):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise IllFormed("duplicate vertex names")
        self.edges = tuple(str(e[0]) for e in edges)
        if len(set(self.edges)) != len(self.edges):
            raise IllFormed("duplicate edge names")
        if set(self.edges) & set(self.vertices):
            raise IllFormed("vertex and edge names must be distinct")
        for name in self.edges:
            if not name or "." in name or " " in name or "^" in name or name == "1":
                raise IllFormed(f"invalid edge name {name!r}")
        self.s = {}
        self.r = {}
        for name, src, dst in edges:
            name, src, dst = str(name), str(src), str(dst)
            if src not in self.vertices or dst not in self.vertices:
                raise IllFormed(f"edge {name} has an unknown endpoint")
            self.s[name] = src
            self.r[name] = dst
        self.weights = {e: 1 for e in self.edges}
        for e, w in (weights or {}).items():
            if e not in self.s:
                raise IllFormed(f"weight for unknown edge {e!r}")
            if not isinstance(w, int) or w <= 0:
                raise IllFormed("weights must be positive integers")
            self.weights[e] = w
        self.out = {v: sorted(e for e in self.edges if self.s[e] == v) for v in self.vertices}
        self.inn = {v: sorted(e for e in self.edges if self.r[e] == v) for v in self.vertices}

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @classmethod
    def from_json(cls, obj):
        edges = [(e["name"], e["src"], e["dst"]) for e in obj.get("edges", [])]
        return cls(obj["vertices"], edges, obj.get("weights"))

    def to_json(self):
        out = {
            "vertices": list(self.vertices),
            "edges": [{"name": e, "src": self.s[e], "dst": self.r[e]} for e in self.edges],
        }
        if any(w != 1 for w in self.weights.values()):
            out["weights"] = dict(self.weights)
        return out

    def with_weights(self, weights):
        return Graph(self.vertices, [(e, self.s[e], self.r[e]) for e in self.edges], weights)

    def is_sink(self, v):
        return not self.out[v]

    def is_regular(self, v):
        """Emits at least one edge (graphs here are finite)."""
        return bool(self.out[v])

    def special_edge(self, v):
        return self.out[v][0] if self.out[v] else None

    def nx_graph(self):
        G = nx.MultiDiGraph()
        G.add_nodes_from(self.vertices)
        for e in self.edges:
            G.add_edge(self.s[e], self.r[e], key=e)
        return G

    @cached_property
    def acyclic(self):
        return nx.is_directed_acyclic_graph(self.nx_graph())

    @cached_property
    def free_group(self):
        return FreeGroup(self.edges)

    @cached_property
    def integers(self):
        return Integers()

    def vkey(self, v):
        return self.vertices.index(v)


# -- finite paths ---------------------------------------------------------
#
# A path is (start vertex, tuple of edge names); the trivial path at v is
# (v, ()).


def path(g, start, edges=()):
    start = str(start)
    if start not in g.vertices:
        raise IllFormed(f"unknown vertex {start!r}")
    edges = tuple(edges)
    v = start
    for e in edges:
        if e not in g.s:
            raise IllFormed(f"unknown edge {e!r}")
        if g.s[e] != v:
            raise IllFormed(f"edges do not compose at {e!r}")
        v = g.r[e]
    return (start, edges)


def edge_path(g, e):
    return (g.s[e], (e,))


def p_range(g, p):
    return g.r[p[1][-1]] if p[1] else p[0]


def p_len(p):
    return len(p[1])


def p_extend(g, p, e):
    if g.s[e] != p_range(g, p):
        raise IllFormed("edge does not extend the path")
    return (p[0], p[1] + (e,))


def p_concat(g, p, q):
    if p_range(g, p) != q[0]:
        raise IllFormed("paths do not compose")
    return (p[0], p[1] + q[1])


def is_prefix(p, q):
    return p[0] == q[0] and q[1][: len(p[1])] == p[1]


def p_label(p):
    return ".".join(p[1]) if p[1] else p[0]


def p_key(g, p):
    return (len(p[1]), g.vkey(p[0]), tuple(g.edges.index(e) for e in p[1]))


def p_word(g, p):
    """The element of the free group on E^1 spelled by the path."""
    return g.free_group.word(p[1])


def p_weight(g, p):
    return sum(g.weights[e] for e in p[1])


def paths_from(g, v, max_len):
    out = [(v, ())]
    frontier = [(v, ())]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for e in g.out[p_range(g, p)]:
                nxt.append((p[0], p[1] + (e,)))
        out.extend(nxt)
        frontier = nxt
    return out


def paths_into(g, v, max_len):
    """Paths of length ≤ max_len ending at v."""
    out = [(v, ())]
    frontier = [(v, ())]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for e in g.inn[p[0]]:
                nxt.append((g.s[e], (e,) + p[1]))
        out.extend(nxt)
        frontier = nxt
    return out


def all_paths(g, max_len):
    out = []
    for v in g.vertices:
        out.extend(paths_from(g, v, max_len))
    return sorted(out, key=lambda p: p_key(g, p))


# -- boundary paths -------------------------------------------------------
#
# Finite boundary path: ("f", start, edges) with r(edges) a sink.
# Infinite eventually periodic path: ("i", start, prefix, cycle) normalized so
# that the cycle is primitive and the prefix does not end with the cycle's
# last edge.


def _primitive(cycle):
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle[:p] * (n // p) == cycle:
            return cycle[:p]
    return cycle


def bp_finite(g, p):
    if not g.is_sink(p_range(g, p)):
        raise IllFormed("a finite boundary path must end at a sink")
    return ("f", p[0], p[1])


def bp_periodic(g, start, prefix, cycle):
    prefix, cycle = tuple(prefix), tuple(cycle)
    if not cycle:
        raise IllFormed("empty cycle")
    path(g, start, prefix + cycle + cycle)
    cycle = _primitive(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = (cycle[-1],) + cycle[:-1]
    return ("i", start, prefix, cycle)


def bp_start(x):
    return x[1]


def bp_edges(x, n):
    """The first n edges (fewer for a short finite path)."""
    if x[0] == "f":
        return x[2][:n]
    pre, cyc = x[2], x[3]
    if n <= len(pre):
        return pre[:n]
    k = n - len(pre)
    reps = k // len(cyc) + 1
    return pre + (cyc * reps)[:k]


def bp_has_prefix(x, p):
    if x[1] != p[0]:
        return False
    if x[0] == "f" and len(x[2]) < len(p[1]):
        return False
    return bp_edges(x, len(p[1])) == p[1]


def bp_prepend(g, a, x):
    """a·x for a path a with r(a) = s(x)."""
    if p_range(g, a) != x[1]:
        raise IllFormed("path does not end where the boundary path starts")
    if x[0] == "f":
        return ("f", a[0], a[1] + x[2])
    return bp_periodic(g, a[0], a[1] + x[2], x[3])


def bp_strip(g, x, b):
    """x'' with x = b·x''."""
    if not bp_has_prefix(x, b):
        raise IllFormed("path is not a prefix")
    n = len(b[1])
    v = p_range(g, b)
    if x[0] == "f":
        return ("f", v, x[2][n:])
    pre, cyc = x[2], x[3]
    if n <= len(pre):
        return bp_periodic(g, v, pre[n:], cyc)
    k = (n - len(pre)) % len(cyc)
    return bp_periodic(g, v, (), cyc[k:] + cyc[:k])


def bp_label(x):
    if x[0] == "f":
        return p_label((x[1], x[2]))
    pre = ".".join(x[2])
    cyc = ".".join(x[3])
    return f"{pre + '.' if pre else ''}({cyc})^inf"


def bp_key(g, x):
    return (x[0], g.vkey(x[1]), tuple(g.edges.index(e) for e in x[2]),
            tuple(g.edges.index(e) for e in (x[3] if x[0] == "i" else ())))


def primitive_cycles_at(g, v, max_len):
    out = []
    for p in paths_from(g, v, max_len):
        if p[1] and p_range(g, p) == v and _primitive(p[1]) == p[1]:
            out.append(p[1])
    return out


def boundary_witnesses(g, cap=DEFAULT_PATH_CAP):
    """Finite boundary paths of length ≤ cap and eventually periodic paths
    with prefix and primitive cycle of length ≤ cap, deduplicated."""
    seen = set()
    for p in all_paths(g, cap):
        v = p_range(g, p)
        if g.is_sink(v):
            seen.add(("f", p[0], p[1]))
        for c in primitive_cycles_at(g, v, cap):
            seen.add(bp_periodic(g, p[0], p[1], c))
    return sorted(seen, key=lambda x: bp_key(g, x))


# -- the explicit boundary space of an acyclic graph ------------------------


def sink_paths(g):
    """Every path ending at a sink (acyclic graphs only)."""
    if not g.acyclic:
        raise IllFormed("explicit boundary spaces need an acyclic graph")
    n = len(g.edges)
    return [p for p in all_paths(g, n) if g.is_sink(p_range(g, p))]


class BoundarySpace:
    """X(E) for acyclic E: a FiniteSpace labelled by paths."""

    def __init__(self, g):
        self.graph = g
        self.paths = sink_paths(g)
        self.space = FiniteSpace([p_label(p) for p in self.paths])
        self.by_label = {p_label(p): p for p in self.paths}

    def label(self, p):
        return p_label(p)

    def cylinder(self, mu):
        return frozenset(p_label(p) for p in self.paths if is_prefix(mu, p))


class SymbolicBoundary:
    """X(E) for a graph with cycles, handled through cylinder complexes."""

    def __init__(self, g, cap=DEFAULT_PATH_CAP):
        self.graph = g
        self.cap = cap

    def whole(self):
        return CylinderComplex(self.graph, [(v, ()) for v in self.graph.vertices])

    def witnesses(self):
        return boundary_witnesses(self.graph, self.cap)


def boundary_space(g, cap=DEFAULT_PATH_CAP):
    return BoundarySpace(g) if g.acyclic else SymbolicBoundary(g, cap)


# -- cylinder complexes ----------------------------------------------------


class CylinderComplex:
    """A compact open subset of X(E) as a canonical finite union of
    cylinders Z(μ).

    Canonical form: an antichain under the prefix order in which no regular
    μ has all of its one-edge extensions present (those are merged into μ).
    Every Z(μ) is nonempty, so the empty antichain is the empty set.
    """

    __slots__ = ("graph", "paths")

    def __init__(self, graph, paths=(), _canonical=False):
        self.graph = graph
        self.paths = tuple(paths) if _canonical else _normalize(graph, paths)

    def _same(self, other):
        if not isinstance(other, CylinderComplex) or other.graph is not self.graph:
            raise InstanceMismatch("cylinder complexes over different graphs")

    def __or__(self, other):
        self._same(other)
        return CylinderComplex(self.graph, self.paths + other.paths)

    def __and__(self, other):
        self._same(other)
        out = []
        for p in self.paths:
            for q in other.paths:
                if is_prefix(p, q):
                    out.append(q)
                elif is_prefix(q, p):
                    out.append(p)
        return CylinderComplex(self.graph, out)

    def __sub__(self, other):
        self._same(other)
        g = self.graph
        out = []

        def sub(p, qs):
            if any(is_prefix(q, p) for q in qs):
                return
            ext = [q for q in qs if is_prefix(p, q)]
            if not ext:
                out.append(p)
                return
            for e in g.out[p_range(g, p)]:
                sub(p_extend(g, p, e), ext)

        for p in self.paths:
            sub(p, other.paths)
        return CylinderComplex(g, out)

    def is_empty(self):
        return not self.paths

    def __bool__(self):
        return bool(self.paths)

    def contains(self, x):
        return any(bp_has_prefix(x, p) for p in self.paths)

    def __eq__(self, other):
        return isinstance(other, CylinderComplex) and other.graph is self.graph and other.paths == self.paths

    def __hash__(self):
        return hash(self.paths)

    def __repr__(self):
        if not self.paths:
            return "Z(∅)"
        return " ∪ ".join(f"Z({p_label(p)})" for p in self.paths)

    def to_json(self):
        return [p_label(p) for p in self.paths]


def _normalize(g, paths):
    ps = set(paths)
    for p in ps:
        path(g, p[0], p[1])
    # antichain: drop anything with a proper prefix present
    keep = set()
    for p in ps:
        if not any(q != p and is_prefix(q, p) for q in ps):
            keep.add(p)
    changed = True
    while changed:
        changed = False
        parents = {}
        for p in keep:
            if p[1]:
                parents.setdefault((p[0], p[1][:-1]), set()).add(p[1][-1])
        for par, kids in parents.items():
            if kids == set(g.out[p_range(g, par)]):
                keep -= {(par[0], par[1] + (e,)) for e in kids}
                keep.add(par)
                changed = True
                break
    return tuple(sorted(keep, key=lambda p: p_key(g, p)))


def cylinder(g, mu, F=()):
    """Z(μ∖F) = Z(μ) minus the Z(μα), α ∈ F ⊆ s^-1(r(μ))."""
    v = p_range(g, mu)
    F = set(F)
    if not F <= set(g.out[v]):
        raise IllFormed("F must consist of edges leaving r(μ)")
    if not F:
        return CylinderComplex(g, [mu])
    return CylinderComplex(g, [p_extend(g, mu, e) for e in g.out[v] if e not in F])


def cyl_ops(a, b=None, op="normalize"):
    if op == "intersect":
        return a & b
    if op == "union":
        return a | b
    if op == "minus":
        return a - b
    if op == "is_empty":
        return a.is_empty()
    if op == "normalize":
        return CylinderComplex(a.graph, a.paths)
    raise ValueError(f"unknown op {op!r}")


def brute_is_empty(c, cap=DEFAULT_PATH_CAP):
    """Emptiness via membership of eventually periodic witness paths."""
    return not any(c.contains(x) for x in boundary_witnesses(c.graph, cap))


# -- the explicit graph groupoid ------------------------------------------


def graph_groupoid(g, grading="free", X=None):
    """𝒢_E for acyclic E: arrows (y, z) with y, z paths to the same sink,
    standing for (y, w(y)w(z)^-1, z).  ``grading`` is ``"free"`` (the free
    group on E^1) or ``"z"`` (integer weights)."""
    X = X or BoundarySpace(g)
    pts = X.paths
    if grading == "free":
        G = g.free_group
        grade = lambda p, q: p_word(g, p) * p_word(g, q).inv()
    elif grading == "z":
        G = g.integers
        grade = lambda p, q: G.elem(p_weight(g, p) - p_weight(g, q))
    else:
        raise ValueError(f"unknown grading {grading!r}")
    arrows, d, r, inv, coc = [], {}, {}, {}, {}
    for p in pts:
        for q in pts:
            if p_range(g, p) != p_range(g, q):
                continue
            a = (p_label(p), p_label(q))
            arrows.append(a)
            d[a] = (a[1], a[1])
            r[a] = (a[0], a[0])
            inv[a] = (a[1], a[0])
            coc[a] = grade(p, q)
    idx = X.space.index
    gpd = FiniteGradedGroupoid(
        arrows, d, r, lambda a, b: (a[0], b[1]), inv, coc, G,
        key=lambda a: (idx[a[0]], idx[a[1]]),
        name="graph groupoid",
    )
    gpd.boundary = X
    gpd.graph = g
    return gpd


def bisection_arrows(gpd, mu, nu):
    """Z(μ, ν) = {(μx, νx)} inside the explicit graph groupoid."""
    g = gpd.graph
    X = gpd.boundary
    out = []
    for x in X.paths:
        if x[0] != p_range(g, mu):
            continue
        out.append((p_label(p_concat(g, mu, x)), p_label(p_concat(g, nu, x))))
    return frozenset(out)


# -- the free group action θ ---------------------------------------------


def theta_pairs(g, cap=None):
    """Reduced pairs (a, b): paths with r(a) = r(b), not both trivial, not
    ending in the same edge; each gives the group element a b^-1."""
    if cap is None:
        if not g.acyclic:
            raise OracleBudget("a path cap is needed for graphs with cycles")
        cap = len(g.edges)
    out = []
    for v in g.vertices:
        into = paths_into(g, v, cap)
        for a in into:
            for b in into:
                if not a[1] and not b[1]:
                    continue
                if a[1] and b[1] and a[1][-1] == b[1][-1]:
                    continue
                out.append((a, b))
    return out


def theta_element(g, a, b):
    return p_word(g, a) * p_word(g, b).inv()


def theta_action(g, X=None):
    """θ on the explicit boundary space of an acyclic graph:
    X_{ab^-1} = Z(a), θ_{ab^-1}(bx) = ax."""
    X = X or BoundarySpace(g)
    F = g.free_group
    domains = {F.identity(): X.space.points}
    maps = {}
    for a, b in theta_pairs(g):
        c = theta_element(g, a, b)
        dom = [p for p in X.paths if is_prefix(a, p)]
        if not dom:
            continue
        domains[c] = [p_label(p) for p in dom]
        m = {}
        for p in X.paths:
            if is_prefix(b, p):
                rest = (p_range(g, b), p[1][len(b[1]):])
                m[p_label(p)] = p_label(p_concat(g, a, rest))
        maps[c] = m
    act = SetPartialAction(F, X.space, domains, maps)
    act.boundary = X
    return act


class SymbolicAction:
    """A partial action whose domains are cylinder complexes.

    ``pairs`` maps a group element c to the list of (a, b) with
    X_c ⊇ Z(a) and θ_c(b x) = a x.
    """

    def __init__(self, graph, group, pairs):
        self.graph = graph
        self.group = group
        self.pairs = {c: list(v) for c, v in pairs.items()}
        self._dom = {}

    def support(self):
        return sorted(self.pairs, key=lambda c: c.key())

    def domain(self, c):
        if c not in self._dom:
            self._dom[c] = CylinderComplex(self.graph, [a for a, _ in self.pairs.get(c, ())])
        return self._dom[c]

    def image(self, c, C):
        """θ_c(C ∩ X_{c^-1})."""
        g = self.graph
        out = []
        for a, b in self.pairs.get(c, ()):
            part = C & CylinderComplex(g, [b])
            for p in part.paths:
                out.append((a[0], a[1] + p[1][len(b[1]):]))
        return CylinderComplex(g, out)

    def apply(self, c, x):
        for a, b in self.pairs.get(c, ()):
            if bp_has_prefix(x, b):
                return bp_prepend(self.graph, a, bp_strip(self.graph, x, b))
        raise IllFormed(f"{x} is outside the domain of θ_{c}")

    def validate(self, elements=None):
        """Axiom (ii) as an equality of cylinder complexes on the given elements."""
        rep = Report("symbolic partial action")
        elems = list(elements if elements is not None else self.support())
        known = set(self.pairs)
        for g in elems:
            for h in elems:
                gh = g * h
                if gh not in known and not gh.is_identity():
                    continue
                lhs = self.image(g, self.domain(g.inv()) & self.domain(h))
                rhs = self.domain(g) & self.domain(gh)
                if lhs != rhs:
                    rep.add("(ii) θ_g(X_{g^-1} ∩ X_h) = X_g ∩ X_{gh}", False, {"g": g, "h": h})
                    return rep
        rep.add("(ii) θ_g(X_{g^-1} ∩ X_h) = X_g ∩ X_{gh}", True, {"elements": len(elems)})
        return rep


def theta_symbolic(g, cap=DEFAULT_PATH_CAP):
    F = g.free_group
    pairs = {F.identity(): [((v, ()), (v, ())) for v in g.vertices]}
    for a, b in theta_pairs(g, cap):
        pairs.setdefault(theta_element(g, a, b), []).append((a, b))
    return SymbolicAction(g, F, pairs)


def psi_hom(g):
    """ψ: 𝔽 -> ℤ, the signed letter count."""
    from .groups import signed_letter_count

    return signed_letter_count(g.free_group, g.integers)


def induce_theta_via_psi(g, cap=DEFAULT_PATH_CAP):
    """Induce θ along ψ in cylinder terms.

    Returns an Obstruction listing kernel elements c = ab^-1 with
    X_c ≠ X_{c^-1} or θ_c ≠ id, or the induced ℤ-action as a
    SymbolicAction (domains X_n = ∪_{ψ(c)=n} X_c for |n| ≤ cap).
    """
    th = theta_symbolic(g, cap)
    psi = psi_hom(g)
    bad = []
    for c in th.support():
        if c.is_identity() or not psi(c).is_identity():
            continue
        if th.domain(c) != th.domain(c.inv()) or any(a != b for a, b in th.pairs[c]):
            bad.append(c)
    if bad:
        return Obstruction(tuple(bad))
    Z = g.integers
    pairs = {}
    for c in th.support():
        n = psi(c)
        if abs(n.value) <= cap:
            pairs.setdefault(n, []).extend(th.pairs[c])
    return SymbolicAction(g, Z, pairs)


# -- symbolic Steinberg algebra of 𝒢_E ------------------------------------


def _extends_diag(k1, k2):
    """k2 = (μt, νt) for k1 = (μ, ν) and some nonempty t."""
    (m1, n1), (m2, n2) = k1, k2
    if not (is_prefix(m1, m2) and is_prefix(n1, n2)):
        return False
    t1 = m2[1][len(m1[1]):]
    t2 = n2[1][len(n1[1]):]
    return t1 == t2 and len(t1) > 0


def _children(g, k):
    mu, nu = k
    return [((mu[0], mu[1] + (e,)), (nu[0], nu[1] + (e,))) for e in g.out[p_range(g, mu)]]


class BisectionAlgebra:
    """Linear combinations of indicators 1_{Z(μ,ν)} in A_R(𝒢_E), for any
    finite graph, with canonical forms and the bisection product."""

    def __init__(self, g, field):
        self.graph = g
        self.field = field

    def key(self, k):
        return (p_key(self.graph, k[0]), p_key(self.graph, k[1]))

    def canonical(self, vec):
        g, ring = self.graph, self.field
        cur = dict(vec)
        # refine overlapping keys until the keys index disjoint bisections
        while True:
            keys = list(cur)
            split = None
            for k1 in keys:
                if any(_extends_diag(k1, k2) for k2 in keys):
                    split = k1
                    break
            if split is None:
                break
            c = cur.pop(split)
            for ch in _children(g, split):
                s = ring.add(cur.get(ch, ring.zero), c)
                cur[ch] = s
        cur = {k: c for k, c in cur.items() if c != 0}
        # coarsen complete families with equal coefficients
        changed = True
        while changed:
            changed = False
            groups = {}
            for k in cur:
                mu, nu = k
                if mu[1] and nu[1] and mu[1][-1] == nu[1][-1]:
                    par = ((mu[0], mu[1][:-1]), (nu[0], nu[1][:-1]))
                    groups.setdefault(par, []).append(k)
            for par, kids in groups.items():
                want = _children(g, par)
                if len(kids) == len(want) and set(kids) == set(want):
                    vals = {cur[k] for k in kids}
                    if len(vals) == 1:
                        for k in kids:
                            del cur[k]
                        cur[par] = vals.pop()
                        changed = True
                        break
        return dict(sorted(cur.items(), key=lambda kv: self.key(kv[0])))

    def indicator(self, mu, nu):
        g = self.graph
        if p_range(g, mu) != p_range(g, nu):
            raise IllFormed("Z(μ,ν) needs r(μ) = r(ν)")
        return {(mu, nu): self.field.one}

    def mul_pair(self, k1, k2):
        g = self.graph
        (mu, nu), (ga, de) = k1, k2
        if is_prefix(nu, ga):
            t = ga[1][len(nu[1]):]
            return ((mu[0], mu[1] + t), de)
        if is_prefix(ga, nu):
            t = nu[1][len(ga[1]):]
            return (mu, (de[0], de[1] + t))
        return None

    def mul(self, x, y):
        ring = self.field
        out = {}
        for k1, a in x.items():
            for k2, b in y.items():
                k = self.mul_pair(k1, k2)
                if k is not None:
                    out[k] = ring.add(out.get(k, ring.zero), ring.mul(a, b))
        return self.canonical(out)

    def add(self, x, y):
        ring = self.field
        out = dict(x)
        for k, c in y.items():
            out[k] = ring.add(out.get(k, ring.zero), c)
        return self.canonical(out)

    def evaluate(self, x, y, k, z):
        """Value at the arrow (y, k, z) for boundary paths y, z."""
        ring = self.field
        val = ring.zero
        for (mu, nu), c in x.items():
            if len(mu[1]) - len(nu[1]) != k:
                continue
            if bp_has_prefix(y, mu) and bp_has_prefix(z, nu):
                if bp_strip(self.graph, y, mu) == bp_strip(self.graph, z, nu):
                    val = ring.add(val, c)
        return val


# -- star-injectivity ------------------------------------------------------


def degree_test(g):
    """(True, None) if every vertex receives at most one edge, else
    (False, first vertex receiving two or more)."""
    for v in g.vertices:
        if len(g.inn[v]) > 1:
            return False, v
    return True, None


def brute_star_injective(g, cap=None):
    """Search for x and two distinct arrows out of x with equal degree
    |u| - |v| (arrows (u x'', k, x) with x = v x'')."""
    cap = cap if cap is not None else max(3, len(g.vertices))
    for x in boundary_witnesses(g, cap):
        seen = {}
        for j in range(cap + 1):
            vpath = (x[1], bp_edges(x, j))
            if len(vpath[1]) < j:
                break
            rest = bp_strip(g, x, vpath)
            for u in paths_into(g, rest[1], cap):
                y = bp_prepend(g, u, rest)
                k = len(u[1]) - j
                prev = seen.setdefault(k, y)
                if prev != y:
                    return False, {"x": bp_label(x), "k": k, "y": [bp_label(prev), bp_label(y)]}
    return True, None


def check_star_injective(g, cap=None):
    """Degree test, cross-checked against the brute-force search."""
    ok, v = degree_test(g)
    brute, witness = brute_star_injective(g, cap)
    rep = Report("lemma44")
    rep.add("degree test agrees with brute-force Star(x) injectivity", ok == brute,
            {"degree": ok, "brute": brute, "witness": witness})
    rep.data["star_injective"] = ok
    if v is not None:
        rep.data["witness"] = v
    return ok, v, rep


# -- enumeration of small graphs ------------------------------------------


def small_graphs(max_vertices, max_edges, loops=True):
    """Every graph on vertex sets {0..n-1}, n ≤ max_vertices, with at most
    max_edges edges (as labelled multigraphs)."""
    for n in range(1, max_vertices + 1):
        verts = [f"v{i}" for i in range(n)]
        pairs = [(i, j) for i in range(n) for j in range(n) if loops or i != j]
        for k in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(pairs, k):
                edges = [(f"e{t}", verts[i], verts[j]) for t, (i, j) in enumerate(combo)]
                yield Graph(verts, edges)


def _to_simple(G):
    H = nx.DiGraph()
    H.add_nodes_from(G.nodes)
    for u, v in G.edges():
        if H.has_edge(u, v):
            H[u][v]["m"] += 1
        else:
            H.add_edge(u, v, m=1)
    return H


def acyclic_graphs(max_edges):
    """Acyclic multigraphs with 1..max_edges edges and no isolated vertices,
    up to isomorphism, plus the one-vertex graph."""
    found = {0: [nx.DiGraph()]}
    found[0][0].add_node(0)
    result = [Graph(["v0"], [])]
    level = [nx.DiGraph()]
    buckets = {}
    for k in range(1, max_edges + 1):
        nxt = []
        for H in level:
            n = H.number_of_nodes()
            nodes = list(H.nodes)
            options = [(u, v) for u in nodes for v in nodes if u != v]
            options += [(u, n) for u in nodes] + [(n, u) for u in nodes] + [(n, n + 1)]
            for u, v in options:
                K = H.copy()
                if K.has_edge(u, v):
                    K[u][v]["m"] += 1
                else:
                    K.add_edge(u, v, m=1)
                if not nx.is_directed_acyclic_graph(K):
                    continue
                h = nx.weisfeiler_lehman_graph_hash(K, edge_attr="m")
                bucket = buckets.setdefault((k, h), [])
                em = lambda a, b: a["m"] == b["m"]
                if any(nx.is_isomorphic(K, L, edge_match=em) for L in bucket):
                    continue
                bucket.append(K)
                nxt.append(K)
        level = nxt
        for K in nxt:
            names = {u: f"v{i}" for i, u in enumerate(sorted(K.nodes))}
            edges = []
            t = 0
            for u, v, data in sorted(K.edges(data=True)):
                for _ in range(data["m"]):
                    edges.append((f"e{t}", names[u], names[v]))
                    t += 1
            result.append(Graph([names[u] for u in sorted(K.nodes)], edges))
    return result



# -- Boolean algebra of cylinder complexes ----------------------------------


def random_complex(g, rng, max_len=3, max_parts=3):
    """A random union of generalized cylinders Z(μ∖F)."""
    ps = all_paths(g, max_len)
    out = CylinderComplex(g)
    for _ in range(rng.randint(0, max_parts)):
        mu = rng.choice(ps)
        exits = g.out[p_range(g, mu)]
        F = [e for e in exits if rng.random() < 0.3]
        out = out | cylinder(g, mu, F)
    return out


def boolean_algebra_check(g, triples=1000, seed=0, cap=DEFAULT_PATH_CAP):
    """Boolean-algebra laws on seeded random triples, with every emptiness
    decision cross-checked against eventually periodic witness paths."""
    import random

    rng = random.Random(seed)
    wit = boundary_witnesses(g, cap)
    whole = CylinderComplex(g, [(v, ()) for v in g.vertices])
    laws = {
        "A∪(B∪C) = (A∪B)∪C": lambda A, B, C: (A | (B | C), (A | B) | C),
        "A∩(B∩C) = (A∩B)∩C": lambda A, B, C: (A & (B & C), (A & B) & C),
        "A∪B = B∪A": lambda A, B, C: (A | B, B | A),
        "A∩B = B∩A": lambda A, B, C: (A & B, B & A),
        "A∩(B∪C) = (A∩B)∪(A∩C)": lambda A, B, C: (A & (B | C), (A & B) | (A & C)),
        "A∪(B∩C) = (A∪B)∩(A∪C)": lambda A, B, C: (A | (B & C), (A | B) & (A | C)),
        "A∖(B∪C) = (A∖B)∩(A∖C)": lambda A, B, C: (A - (B | C), (A - B) & (A - C)),
        "A∖(B∩C) = (A∖B)∪(A∖C)": lambda A, B, C: (A - (B & C), (A - B) | (A - C)),
        "A∪(A∩B) = A": lambda A, B, C: (A | (A & B), A),
        "(A∖B)∪(A∩B) = A": lambda A, B, C: ((A - B) | (A & B), A),
        "A∪(X∖A) = X": lambda A, B, C: (A | (whole - A), whole),
    }
    rep = Report("cylinders")
    bad = {name: None for name in laws}
    empty_bad = None
    decisions = 0
    for _ in range(triples):
        A, B, C = (random_complex(g, rng) for _ in range(3))
        for name, law in laws.items():
            lhs, rhs = law(A, B, C)
            if lhs != rhs and bad[name] is None:
                bad[name] = (repr(A), repr(B), repr(C))
        for D in (A & B, A - B, B - A, (A & B) - C, A & (whole - A)):
            decisions += 1
            brute = not any(D.contains(x) for x in wit)
            if brute != D.is_empty() and empty_bad is None:
                empty_bad = repr(D)
    for name in laws:
        rep.add(name, bad[name] is None, bad[name])
    rep.add("is_empty agrees with witness-path search", empty_bad is None, empty_bad)
    rep.data.update({"triples": triples, "emptiness decisions": decisions, "witnesses": len(wit)})
    return rep
