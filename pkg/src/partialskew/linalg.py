"""Exact linear algebra over QQ and prime fields on sparse dict vectors."""

import itertools

from .errors import OracleBudget
from .scalars import require_field, vec_add


class Span:
    """A subspace kept in reduced row echelon form.

    Columns are arbitrary hashable keys; ``order`` maps a key to a sortable
    position so that pivots are chosen deterministically (smallest key first).
    """

    def __init__(self, ring, order=None, vectors=()):
        self.ring = require_field(ring)
        self._order = order
        self.rows = {}  # pivot key -> vector with coefficient 1 at the pivot
        for v in vectors:
            self.add(v)

    def _key(self, k):
        return self._order(k) if self._order is not None else k

    def copy(self):
        other = Span.__new__(Span)
        other.ring = self.ring
        other._order = self._order
        other.rows = dict(self.rows)
        return other

    @property
    def dim(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows, key=self._key)]

    def pivots(self):
        return sorted(self.rows, key=self._key)

    def reduce(self, v):
        ring = self.ring
        hits = [k for k in v if k in self.rows]
        if not hits:
            return dict(v)
        out = dict(v)
        for p in hits:
            c = out.get(p)
            if c is None:
                continue
            out = vec_add(ring, out, self.rows[p], ring.neg(c))
        return out

    def __contains__(self, v):
        return not self.reduce(v)

    def add(self, v):
        """Insert v; return True if the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        ring = self.ring
        p = min(r, key=self._key)
        r = {k: ring.div(c, r[p]) for k, c in r.items()}
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if c is not None:
                self.rows[q] = vec_add(ring, row, r, ring.neg(c))
        self.rows[p] = r
        return True

    def contains_span(self, other):
        return all(v in self for v in other.basis())

    def __eq__(self, other):
        return isinstance(other, Span) and self.dim == other.dim and self.contains_span(other)

    def frozen(self):
        """A hashable canonical description (pivot -> sorted row)."""
        return frozenset(
            (p, frozenset(row.items())) for p, row in self.rows.items()
        )


def rank(ring, vectors, order=None):
    return Span(ring, order, vectors).dim


def solve(ring, columns, target, order=None):
    """Find coefficients c with sum_j c_j * columns[j] == target.

    Returns the solution whose free variables are all zero (pivot columns
    taken in index order), or ``None`` if the system is inconsistent.
    """
    ring = require_field(ring)
    n = len(columns)
    # Row-reduce the augmented system; rows are indexed by vector keys.
    keys = set(target)
    for col in columns:
        keys.update(col)
    keys = sorted(keys, key=order) if order is not None else sorted(keys, key=repr)
    rows = []
    for k in keys:
        row = [ring(col.get(k, ring.zero)) for col in columns]
        row.append(ring(target.get(k, ring.zero)))
        rows.append(row)
    pivots = []
    r = 0
    for j in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][j] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ring.inv(rows[r][j])
        rows[r] = [ring.mul(inv, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j] != 0:
                c = rows[i][j]
                rows[i] = [ring.sub(a, ring.mul(c, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            return None
    sol = [ring.zero] * n
    for i, j in enumerate(pivots):
        sol[j] = rows[i][n]
    return sol


def nullspace(ring, columns):
    """Basis (as coefficient lists) of {c : sum c_j columns[j] = 0}."""
    ring = require_field(ring)
    n = len(columns)
    keys = set()
    for col in columns:
        keys.update(col)
    keys = sorted(keys, key=repr)
    rows = [[ring(col.get(k, ring.zero)) for col in columns] for k in keys]
    pivots = []
    r = 0
    for j in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][j] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ring.inv(rows[r][j])
        rows[r] = [ring.mul(inv, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j] != 0:
                c = rows[i][j]
                rows[i] = [ring.sub(a, ring.mul(c, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    free = [j for j in range(n) if j not in pivots]
    out = []
    for f in free:
        sol = [ring.zero] * n
        sol[f] = ring.one
        for i, j in enumerate(pivots):
            sol[j] = ring.neg(rows[i][f])
        out.append(sol)
    return out


def enumerate_subspaces(ring, keys, budget=200_000):
    """Yield every subspace of the coordinate space on ``keys`` over GF(p).

    Subspaces are produced as lists of basis vectors in reduced row echelon
    form, one per RREF matrix, so each subspace appears exactly once.
    """
    p = getattr(ring, "p", None)
    if p is None:
        raise ValueError("subspace enumeration needs a finite prime field")
    n = len(keys)
    count = 0
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            # free entries: row i, column j > pivots[i], j not a pivot
            slots = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, n)
                if j not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(slots)):
                count += 1
                if count > budget:
                    raise OracleBudget(f"more than {budget} subspaces")
                rows = [{keys[pivots[i]]: 1} for i in range(k)]
                for (i, j), val in zip(slots, values):
                    if val:
                        rows[i][keys[j]] = val
                yield rows


def count_subspaces(p, n):
    """Gaussian binomial sum: number of subspaces of GF(p)^n."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total
