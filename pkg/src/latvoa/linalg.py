"""Exact rational linear algebra: small dense helpers and a sparse echelon reducer."""

from __future__ import annotations

import heapq
from fractions import Fraction


def as_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form of a dense rational matrix.

    Returns ``(reduced_rows, pivot_columns)``; the input is not modified.
    """
    a = as_fraction_matrix(rows)
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def det(rows) -> Fraction:
    a = as_fraction_matrix(rows)
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(rows):
    n = len(rows)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def integer_annihilator(vectors, dim):
    """Integer row vectors spanning the functionals that vanish on ``vectors``.

    Rows are primitive and in a deterministic (echelon-derived) order.  When
    ``vectors`` span nothing the identity is returned.
    """
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return [[int(i == j) for j in range(dim)] for i in range(dim)]
    red, piv = rref(vecs)
    free = [c for c in range(dim) if c not in piv]
    out = []
    for f in free:
        sol = [Fraction(0)] * dim
        sol[f] = Fraction(1)
        for row, p in zip(red, piv):
            sol[p] = -row[f]
        den = 1
        for x in sol:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in sol]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        ints = [x // g for x in ints]
        if next(x for x in ints if x) < 0:
            ints = [-x for x in ints]
        out.append(ints)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class Echelon:
    """Incrementally built echelon basis of sparse rational vectors.

    Vectors are dicts ``key -> Fraction`` with sortable keys.  The pivot of a
    row is its smallest key, and each stored row has pivot coefficient 1 and
    no entries on the pivots of earlier rows that were present when it was
    inserted, so reduction is a single pass in pivot order.
    """

    def __init__(self):
        self.rows: dict = {}  # pivot key -> row
        self._order: list = []  # pivots in insertion order

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        rows = self.rows
        # eliminating pivot p only adds keys larger than p, so a heap visits each key in order
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            key = heapq.heappop(heap)
            if key in seen:
                continue
            seen.add(key)
            c = v.get(key)
            if not c:
                continue
            for k, x in rows[key].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    if k not in v and k in rows and k not in seen:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def insert(self, vec: dict):
        """Reduce ``vec``; store and return the normalized residue if nonzero, else None."""
        v = self.reduce(vec)
        if not v:
            return None
        p = min(v)
        c = v[p]
        row = {k: x / c for k, x in v.items()}
        self.rows[p] = row
        self._order.append(p)
        return row

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self):
        return [self.rows[p] for p in self._order]
