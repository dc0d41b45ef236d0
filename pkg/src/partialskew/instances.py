"""Instance files, seeded random partial actions, and the bundled examples."""

import hashlib
import itertools
import json
import random
from importlib import resources

from .errors import IllFormed
from .graphs import Graph
from .groups import FreeGroup, Integers, cyclic_group, direct_product, symmetric_group
from .partial_actions import AlgPartialAction, SetPartialAction, validate_group_action
from .scalars import QQ, FiniteSpace

MAX_POINTS = 6
MAX_SUPPORT = 6


# -- files -----------------------------------------------------------------


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def instance_hash(obj):
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_action(obj):
    """A SetPartialAction from instance JSON (validated)."""
    a = SetPartialAction.from_json(obj)
    rep = validate_group_action(a)
    if not rep.passed:
        bad = rep.first_failure()
        raise IllFormed(f"not a partial action: {bad.name} {bad.detail}")
    return a


def load_graph(obj):
    return Graph.from_json(obj)


def data_path(name):
    return resources.files("partialskew") / "data" / name


def bundled(name):
    return json.loads(data_path(name).read_text(encoding="utf-8"))


def bundled_action(name="z2swap.json"):
    return load_action(bundled(name))


def bundled_graph(name):
    return load_graph(bundled(name))


# -- restrictions of global actions --------------------------------------
#
# Every partial action below is the restriction of a global action on a set
# Y to a finite X ⊆ Y: X_g = X ∩ gX and φ_g(x) = g·x.


def restrict_global(group, points, act, candidates):
    X = FiniteSpace(points)
    Xs = set(points)
    domains, maps = {}, {}
    for g in candidates:
        m = {}
        for x in points:
            y = act(g, x)
            if y in Xs:
                m[x] = y
        if m:
            domains[g] = sorted(m.values(), key=X.index.__getitem__)
            maps[g] = m
    return SetPartialAction(group, X, domains, maps)


def _finite_source(rng):
    G = rng.choice([
        lambda: cyclic_group(2), lambda: cyclic_group(3), lambda: cyclic_group(4),
        lambda: direct_product(cyclic_group(2), cyclic_group(2)), lambda: symmetric_group(3),
    ])()
    elems = G.elements()
    # Y = a few regular copies plus fixed points, labelled "<element>.<copy>" / "p<i>"
    copies = rng.randint(1, 2)
    fixed = rng.randint(0, 2)
    Y = [f"{g}.{k}" for k in range(copies) for g in elems] + [f"p{i}" for i in range(fixed)]
    names = {str(g): g for g in elems}

    def act(g, y):
        if y.startswith("p"):
            return y
        h, k = y.rsplit(".", 1)
        return f"{g * names[h]}.{k}"

    return G, Y, act, elems


def _integer_source(rng):
    Z = Integers()
    labels = ["a", "b"][: rng.randint(1, 2)]
    period = rng.choice([None, None, 2, 3])
    if period:
        Y = [f"c{i}" for i in range(period)]

        def act(g, y):
            return f"c{(int(y[1:]) + g.value) % period}"
    else:
        Y = [f"{l}{i}" for l in labels for i in range(-3, 4)]

        def act(g, y):
            return f"{y[0]}{int(y[1:]) + g.value}"

    cands = [Z.elem(n) for n in range(-6, 7)]
    return Z, Y, act, cands


def _free_source(rng):
    F = FreeGroup(["a", "b"])
    words = [F.identity()]
    for n in range(1, 3):
        for letters in itertools.product([("a", 1), ("a", -1), ("b", 1), ("b", -1)], repeat=n):
            w = F.word(letters)
            if len(w.value) == n and w not in words:
                words.append(w)
    names = {F.format(w).replace(" ", "."): w for w in words}

    def act(g, y):
        return F.format(g * names[y]).replace(" ", ".")

    Y = list(names)
    return F, Y, act, None


def random_action(seed, max_points=MAX_POINTS, max_support=MAX_SUPPORT):
    """A seeded random finitely supported partial action with |X| ≤ max_points
    and at most max_support nonempty domains."""
    rng = random.Random(seed)
    for _ in range(1000):
        kind = rng.choice(["finite", "finite", "integers", "free"])
        G, Y, act, cands = {"finite": _finite_source, "integers": _integer_source,
                            "free": _free_source}[kind](rng)
        k = min(len(Y), rng.randint(2, max_points))
        X = rng.sample(Y, k)
        if cands is None:
            names = {y: G.parse(y.replace(".", " ")) for y in X}
            cands = {names[x] * names[y].inv() for x in X for y in X}
            cands = sorted(cands, key=lambda g: g.key())
        a = restrict_global(G, X, act, cands)
        if len(a.support()) <= max_support:
            return a
    raise IllFormed("random instance generation did not converge")


def random_instances(count, seed=0, **kw):
    return [random_action(seed * 100003 + i, **kw) for i in range(count)]


# -- exhaustive small families -------------------------------------------


def _involutions(points):
    """All involutive bijections of the tuple ``points`` (as dicts)."""
    if not points:
        yield {}
        return
    first, rest = points[0], points[1:]
    for m in _involutions(rest):
        yield {first: first, **m}
    for i, other in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for m in _involutions(remaining):
            yield {first: other, other: first, **m}


def z2_actions(max_points=3):
    """Every partial action of ℤ/2 on {1..n}, n ≤ max_points."""
    G = cyclic_group(2)
    g = [h for h in G.elements() if not h.is_identity()][0]
    out = []
    for n in range(1, max_points + 1):
        pts = [str(i) for i in range(1, n + 1)]
        X = FiniteSpace(pts)
        for k in range(n + 1):
            for dom in itertools.combinations(pts, k):
                for inv in _involutions(dom):
                    out.append(SetPartialAction(G, X, {g: list(dom)}, {g: inv}))
    return out


# -- named examples --------------------------------------------------------


def z2_swap():
    """ℤ/2 on {1,2,3} with X_g = {1,2} and φ_g the swap."""
    G = cyclic_group(2)
    g = [h for h in G.elements() if not h.is_identity()][0]
    return SetPartialAction(G, FiniteSpace(["1", "2", "3"]), {g: ["1", "2"]}, {g: {"1": "2", "2": "1"}})


def z_shift():
    """ℤ on {1,2} with X_1 = {2}, X_-1 = {1}, φ_1(1) = 2."""
    Z = Integers()
    return SetPartialAction(Z, FiniteSpace(["1", "2"]), {Z.elem(1): ["2"], Z.elem(-1): ["1"]},
                            {Z.elem(1): {"1": "2"}})


def trivial_point_action():
    """ℤ/2 acting globally and trivially on one point."""
    G = cyclic_group(2)
    return SetPartialAction(G, FiniteSpace(["p"]), {h: ["p"] for h in G.elements()},
                            {h: {"p": "p"} for h in G.elements()})


def nonregular_action(field=QQ):
    """ℤ/2 on A = K^2 × K[t]/(t^2) (basis 1, 2, u, t), with A_g = K^2 and α_g
    swapping the two idempotents.  A is not von Neumann regular (t is
    nilpotent), so t δ_ε has no quasi-inverse."""
    G = cyclic_group(2)
    e = G.identity()
    g = [h for h in G.elements() if not h.is_identity()][0]
    one = field.one
    table = {("1", "1"): "1", ("2", "2"): "2", ("u", "u"): "u", ("u", "t"): "t", ("t", "u"): "t"}

    def mul_basis(a, b):
        c = table.get((a, b))
        return {c: one} if c else {}

    labels = ["1", "2", "u", "t"]
    order = {lab: i for i, lab in enumerate(labels)}
    return AlgPartialAction(
        G, field, labels, mul_basis,
        {e: labels, g: ["1", "2"]},
        {e: {x: x for x in labels}, g: {"1": "2", "2": "1"}},
        name="K^2×K[t]/(t^2)", key=order.__getitem__,
    )


def example_graph():
    return Graph(["u", "v", "w"], [("alpha", "u", "w"), ("beta", "v", "w")])


def single_edge_graph():
    return Graph(["u", "w"], [("e", "u", "w")])


def chain_graph():
    return Graph(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")])


def loop_graph():
    return Graph(["v"], [("e", "v", "v")])


def toeplitz_graph():
    return Graph(["v", "w"], [("e", "v", "v"), ("f", "v", "w")])
