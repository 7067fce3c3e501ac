"""The state space C{L} (x) S(h^-) of a lattice vertex algebra.

A basis monomial is a pair ``(point, word)``: ``point`` is the integer
coordinate tuple of the lattice vector carried by iota(e_point), and ``word``
is a sorted tuple of ``(direction, depth)`` factors standing for
b_direction(-depth), with b_i the lattice basis.  States are finite maps from
monomials to nonzero Fractions.
"""

from __future__ import annotations

import bisect
import re
from fractions import Fraction
from typing import Iterable

from .cocycle import TwoCocycle, build_standard_cocycle
from .lattice import Lattice, LatticeElement, _coords

INHOMOGENEOUS = "inhomogeneous"
MIXED = "mixed"


class ContextError(ValueError):
    pass


class LatticeVOA:
    """Shared lattice/cocycle context for states, plus the mode-evaluation memo."""

    def __init__(self, lattice: Lattice, cocycle: TwoCocycle | None = None):
        self.lattice = lattice
        self.cocycle = cocycle or build_standard_cocycle(lattice)
        if self.cocycle.lattice.gram != lattice.gram:
            raise ContextError("cocycle belongs to a different lattice")
        self.gram = lattice.gram
        self.rank = lattice.rank
        self._zero = (0,) * self.rank
        # keyed by (u monomial, n, v monomial); values are never mutated
        self.mode_cache: dict = {}
        self.schur_cache: dict = {}

    def clear_caches(self):
        self.mode_cache.clear()
        self.schur_cache.clear()

    def __repr__(self):
        return f"LatticeVOA({self.lattice.name or self.lattice.gram})"

    # constructors

    def state(self, terms) -> "State":
        return State(self, terms)

    def vacuum(self) -> "State":
        return State(self, {(self._zero, ()): Fraction(1)})

    def zero_state(self) -> "State":
        return State(self, {})

    def exp(self, point, coeff=1) -> "State":
        """iota(e_point)."""
        if isinstance(point, LatticeElement):
            point = point.require_integral()
        point = tuple(point)
        if len(point) != self.rank:
            raise ContextError(f"point {point} has wrong length for rank {self.rank}")
        return State(self, {(point, ()): Fraction(coeff)})

    def monomial(self, point, word=(), coeff=1) -> "State":
        point = tuple(_coords(point))
        return State(self, {(point, canonical_word(word)): Fraction(coeff)})

    def h(self, vector, depth: int = 1) -> "State":
        """h(-depth) 1 for h given in lattice-basis coordinates."""
        return heisenberg_act(vector, -depth, self.vacuum())

    # pairings

    def pairings(self, vector) -> tuple:
        """(<h, b_0>, ..., <h, b_{r-1}>) for h in lattice-basis coordinates."""
        g = self.gram
        return tuple(sum(vector[i] * g[i][j] for i in range(self.rank) if vector[i]) for j in range(self.rank))


def canonical_word(word) -> tuple:
    out = tuple(sorted((int(d), int(p)) for d, p in word))
    if any(p < 1 for _, p in out):
        raise ContextError("creation factors need depth >= 1")
    return out


def word_depth(word) -> int:
    return sum(p for _, p in word)


def merge_words(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def insert_factor(word: tuple, factor: tuple) -> tuple:
    i = bisect.bisect(word, factor)
    return word[:i] + (factor,) + word[i:]


def add_into(acc: dict, key, value):
    nv = acc.get(key, 0) + value
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def axpy(acc: dict, coef, terms: dict):
    """acc += coef * terms, dropping zeros."""
    if not coef:
        return
    for k, x in terms.items():
        nv = acc.get(k, 0) + coef * x
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class State:
    """Finite rational combination of basis monomials; treat as immutable."""

    __slots__ = ("space", "terms")

    def __init__(self, space: LatticeVOA, terms):
        self.space = space
        self.terms = {k: Fraction(v) for k, v in dict(terms).items() if v}

    @classmethod
    def _wrap(cls, space, terms: dict) -> "State":
        s = object.__new__(cls)
        s.space = space
        s.terms = terms
        return s

    def _check(self, other: "State"):
        if not isinstance(other, State):
            return NotImplemented
        if other.space is not self.space:
            raise ContextError("states live in different lattice vertex algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return State._wrap(self.space, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        axpy(out, -1, other.terms)
        return State._wrap(self.space, out)

    def __neg__(self):
        return State._wrap(self.space, {k: -v for k, v in self.terms.items()})

    def __mul__(self, c):
        c = Fraction(c)
        if not c:
            return State._wrap(self.space, {})
        return State._wrap(self.space, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = format_state(self).replace("\n", " + ")
        return f"State({body})"

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, point, word=()) -> Fraction:
        return self.terms.get((tuple(point), canonical_word(word)), Fraction(0))

    def ratio_to(self, other: "State"):
        """The scalar c with self == c * other, or None if not proportional (other nonzero)."""
        self._check(other)
        if not other.terms:
            return None
        if self.terms.keys() != other.terms.keys():
            return None if self.terms else Fraction(0)
        key = min(other.terms)
        c = self.terms[key] / other.terms[key]
        if all(self.terms[k] == c * v for k, v in other.terms.items()):
            return c
        return None

    def sort_key(self) -> str:
        return format_state(self)


# Heisenberg and group actions


def heisenberg_act(h, n: int, v: State) -> State:
    """Apply h(n) to v, with h in lattice-basis coordinates."""
    space = v.space
    h = tuple(Fraction(c) for c in _coords(h))
    if len(h) != space.rank:
        raise ContextError(f"vector {h} has wrong length for rank {space.rank}")
    out: dict = {}
    if n < 0:
        for i, c in enumerate(h):
            if c:
                f = (i, -n)
                for (pt, w), x in v.terms.items():
                    add_into(out, (pt, insert_factor(w, f)), c * x)
    elif n == 0:
        pair = space.pairings(h)
        for (pt, w), x in v.terms.items():
            add_into(out, (pt, w), x * sum(c * p for c, p in zip(pair, pt)))
    else:
        pair = space.pairings(h)
        for (pt, w), x in v.terms.items():
            for w2, c in annihilate(pair, n, w).items():
                add_into(out, (pt, w2), c * x)
    return State._wrap(space, out)


def annihilate(pair: tuple, k: int, word: tuple) -> dict:
    """h(k) on a creation word (k >= 1), where pair[j] = <h, b_j>."""
    out: dict = {}
    prev = None
    for idx, f in enumerate(word):
        if f[1] != k or f == prev:
            continue
        prev = f
        c = pair[f[0]]
        if not c:
            continue
        mult = word.count(f)
        rest = word[:idx] + word[idx + 1:]
        add_into(out, rest, k * mult * c)
    return out


def lattice_translate(a, v: State) -> State:
    """e_a acting on v: shift every point by a, times eps(a, point)."""
    space = v.space
    if isinstance(a, LatticeElement):
        a = a.require_integral()
    a = tuple(a)
    eps = space.cocycle.eval
    out = {}
    for (pt, w), x in v.terms.items():
        out[(tuple(p + q for p, q in zip(a, pt)), w)] = eps(a, pt) * x
    return State._wrap(space, out)


# gradings


def monomial_weight(space: LatticeVOA, mono) -> Fraction:
    pt, w = mono
    return Fraction(space.lattice.norm(pt), 2) + word_depth(w)


def weight(v: State):
    """Common L(0)-eigenvalue of the monomials of v, or INHOMOGENEOUS."""
    ws = {monomial_weight(v.space, m) for m in v.terms}
    if len(ws) == 1:
        return ws.pop()
    if not ws:
        return INHOMOGENEOUS
    return INHOMOGENEOUS


def charge(v: State):
    pts = {pt for pt, _ in v.terms}
    if len(pts) == 1:
        return LatticeElement(pts.pop())
    return MIXED


def parity(v: State):
    ps = {v.space.lattice.norm(pt) % 2 for pt, _ in v.terms}
    if not ps:
        return "even"
    if len(ps) == 1:
        return "odd" if ps.pop() else "even"
    return MIXED


def parity_bit(v: State) -> int:
    p = parity(v)
    if p == MIXED:
        raise ContextError("state has mixed parity")
    return 1 if p == "odd" else 0


def depth_of(v: State) -> int:
    return max((word_depth(w) for _, w in v.terms), default=0)


# serialization


def _format_coeff(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def format_monomial(mono) -> str:
    pt, w = mono
    parts = ["e[" + ",".join(str(c) for c in pt) + "]"]
    parts.extend(f"h({d + 1},-{p})" for d, p in w)
    return " ".join(parts)


def format_state(v: State) -> str:
    """One term per line, ``p/q e[c1,...] h(i,-n) ...``, sorted by monomial; ``0`` for the zero state."""
    if not v.terms:
        return "0"
    return "\n".join(f"{_format_coeff(v.terms[m])} {format_monomial(m)}" for m in sorted(v.terms))


_TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s+e\[([^\]]*)\]((?:\s+h\(\s*\d+\s*,\s*-\d+\s*\))*)\s*$")
_FACTOR = re.compile(r"h\(\s*(\d+)\s*,\s*-(\d+)\s*\)")


def parse_state(space: LatticeVOA, text: str) -> State:
    """Inverse of :func:`format_state`; terms may be separated by newlines or ``;``."""
    terms: dict = {}
    chunks = [c for c in re.split(r"[\n;]", text) if c.strip()]
    if len(chunks) == 1 and chunks[0].strip() == "0":
        return space.zero_state()
    for chunk in chunks:
        m = _TERM.match(chunk)
        if not m:
            raise ContextError(f"cannot parse state term {chunk!r}")
        coeff = Fraction(m.group(1))
        pt = tuple(int(c) for c in m.group(2).split(",")) if m.group(2).strip() else ()
        if len(pt) != space.rank:
            raise ContextError(f"term {chunk!r} has {len(pt)} coordinates, lattice rank is {space.rank}")
        word = canonical_word((int(d) - 1, int(p)) for d, p in _FACTOR.findall(m.group(3)))
        if any(not 0 <= d < space.rank for d, _ in word):
            raise ContextError(f"direction out of range in {chunk!r}")
        add_into(terms, (pt, word), coeff)
    return State._wrap(space, terms)


def enumerate_basis(space: LatticeVOA, weight_max, weight_min=0, charge_bound: int | None = None,
                    charges: Iterable | None = None):
    """All basis monomials of V_L with weight in [weight_min, weight_max].

    For lattices that are not positive definite a charge bound (max absolute
    coordinate) or explicit charge list is required.
    """
    weight_max = Fraction(weight_max)
    weight_min = Fraction(weight_min)
    L = space.lattice
    if charges is None:
        if charge_bound is None:
            if not L.is_positive_definite():
                raise ContextError("indefinite lattice needs a charge bound")
            charges = _charges_below(L, weight_max)
        else:
            import itertools

            charges = itertools.product(range(-charge_bound, charge_bound + 1), repeat=L.rank)
    out = []
    for pt in charges:
        pt = tuple(pt)
        w0 = Fraction(L.norm(pt), 2)
        if w0 > weight_max:
            continue
        lo = max(0, weight_min - w0)
        lo = int(lo) if lo == int(lo) else int(lo) + 1
        hi = weight_max - w0
        for d in range(lo, int(hi) + 1):
            for w in colored_partitions(space.rank, d):
                out.append((pt, w))
    return sorted(out)


def _charges_below(L: Lattice, weight_max):
    # on x^T G x <= N the coordinate x_i is bounded by sqrt(N * (G^-1)_ii)
    import itertools
    import math

    N = 2 * Fraction(weight_max)
    if N < 0:
        return []
    inv = L.gram_inverse()
    bounds = []
    for i in range(L.rank):
        q = N * inv[i][i]
        bounds.append(math.isqrt(q.numerator // q.denominator))
    ranges = [range(-b, b + 1) for b in bounds]
    return [pt for pt in itertools.product(*ranges) if Fraction(L.norm(pt), 2) <= weight_max]


_PARTITION_CACHE: dict = {}


def colored_partitions(rank: int, depth: int) -> list:
    """Canonical words of total depth ``depth`` over ``rank`` directions."""
    key = (rank, depth)
    if key not in _PARTITION_CACHE:
        factors = [(d, p) for d in range(rank) for p in range(1, depth + 1)]
        out = []

        def rec(start, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for i in range(start, len(factors)):
                f = factors[i]
                if f[1] <= remaining:
                    acc.append(f)
                    rec(i, remaining - f[1], acc)
                    acc.pop()

        rec(0, depth, [])
        _PARTITION_CACHE[key] = sorted(out)
    return _PARTITION_CACHE[key]


def vacuum(lattice: Lattice, cocycle: TwoCocycle | None = None) -> State:
    return LatticeVOA(lattice, cocycle).vacuum()
