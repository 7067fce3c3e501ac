"""Integral lattices presented by Gram matrices, and the named lattices of the D_{m,k} construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeElement:
    """Coordinate vector in the implicit ordered basis of a lattice.

    Half-integer coordinates are only allowed on elements that name the
    coset they belong to (``coset``), e.g. the shifted support of a module.
    """

    coords: tuple
    coset: str | None = None

    def __post_init__(self):
        coords = tuple(Fraction(c) if not isinstance(c, int) else c for c in self.coords)
        coords = tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in coords)
        object.__setattr__(self, "coords", coords)
        if self.coset is None and not self.is_integral:
            raise LatticeError(f"non-integral coordinates {self.coords} need a coset label")

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other):
        other = _coords(other)
        return LatticeElement(tuple(a + b for a, b in zip(self.coords, other)), self.coset)

    def __sub__(self, other):
        other = _coords(other)
        return LatticeElement(tuple(a - b for a, b in zip(self.coords, other)), self.coset)

    def __neg__(self):
        return LatticeElement(tuple(-a for a in self.coords), self.coset)

    def __rmul__(self, k):
        return LatticeElement(tuple(k * a for a in self.coords), self.coset)

    def require_integral(self):
        if not self.is_integral:
            raise LatticeError(f"coset element {self.coords} ({self.coset}) is not a lattice point")
        return self.coords


def _coords(x) -> tuple:
    return x.coords if isinstance(x, LatticeElement) else tuple(x)


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    basis_names: tuple = ()
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, x, y):
        x, y = _coords(x), _coords(y)
        if len(x) != self.rank or len(y) != self.rank:
            raise LatticeError(f"dimension mismatch: rank {self.rank}, got {len(x)} and {len(y)}")
        g = self.gram
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = g[i]
                total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
        return total

    def norm(self, x):
        return self.inner(x, x)

    def element(self, coords, coset=None) -> LatticeElement:
        if len(coords) != self.rank:
            raise LatticeError(f"expected {self.rank} coordinates, got {len(coords)}")
        return LatticeElement(tuple(coords), coset)

    def basis(self, i: int) -> LatticeElement:
        return self.element(tuple(int(j == i) for j in range(self.rank)))

    def zero(self) -> LatticeElement:
        return self.element((0,) * self.rank)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_positive_definite(self) -> bool:
        if "posdef" not in self._cache:
            minors = (linalg.det([row[:k] for row in self.gram[:k]]) for k in range(1, self.rank + 1))
            self._cache["posdef"] = all(d > 0 for d in minors)
        return self._cache["posdef"]

    def gram_inverse(self):
        if "inv" not in self._cache:
            try:
                self._cache["inv"] = linalg.inverse(self.gram)
            except ZeroDivisionError:
                raise LatticeError(f"degenerate Gram matrix for {self.name or 'lattice'}") from None
        return self._cache["inv"]

    def format(self, x) -> str:
        return "[" + ",".join(str(c) for c in _coords(x)) + "]"


def make_lattice(gram: Sequence[Sequence[int]], basis_names=None, name: str = "") -> Lattice:
    rows = [list(r) for r in gram]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise LatticeError("Gram matrix must be square and nonempty")
    for i in range(n):
        for j in range(n):
            if int(rows[i][j]) != rows[i][j]:
                raise LatticeError("Gram matrix must be integral")
            if rows[i][j] != rows[j][i]:
                raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
    names = tuple(basis_names) if basis_names else tuple(f"b{i + 1}" for i in range(n))
    if len(names) != n:
        raise LatticeError("one basis name per basis vector")
    return Lattice(tuple(tuple(int(x) for x in r) for r in rows), names, name)


def inner(L: Lattice, x, y):
    return L.inner(x, y)


def parity(L: Lattice, x) -> str:
    if isinstance(x, LatticeElement):
        x.require_integral()
    return "odd" if L.norm(x) % 2 else "even"


def _a1m_gram(m):
    return [[2 * (i == j) for j in range(m)] for i in range(m)]


def named_lattice(kind: str, m: int | None = None, k: int | None = None, n: int | None = None) -> Lattice:
    """Build one of the named lattices.

    ``A1m(m)``: orthogonal sum of m copies of the A1 root lattice.
    ``Gamma(m, k)``: basis gamma_i with <gamma_i, gamma_j> = 2 delta_ij + k.
    ``Ln(n)``: rank one, <beta, beta> = n.
    ``Gamma1(m, k)``: A1m(m) plus an orthogonal beta of norm k.
    ``SectionFiveL(m, n)``: A1m(m) plus an orthogonal beta of norm -2n(mn+1).
    """
    if kind == "A1m":
        _need(m is not None and m >= 1, "A1m needs m >= 1")
        return make_lattice(_a1m_gram(m), [f"alpha{i + 1}" for i in range(m)], f"A1m({m})")
    if kind == "Gamma":
        _need(m is not None and m >= 1 and k is not None and k >= 0, "Gamma needs m >= 1, k >= 0")
        g = [[2 * (i == j) + k for j in range(m)] for i in range(m)]
        return make_lattice(g, [f"gamma{i + 1}" for i in range(m)], f"Gamma({m},{k})")
    if kind == "Ln":
        _need(n is not None and n != 0, "Ln needs n != 0")
        return make_lattice([[n]], ["beta"], f"Ln({n})")
    if kind == "Gamma1":
        _need(m is not None and m >= 1 and k is not None and k >= 0, "Gamma1 needs m >= 1, k >= 0")
        return _alpha_plus_beta(m, k, f"Gamma1({m},{k})")
    if kind == "SectionFiveL":
        _need(m is not None and m >= 1 and n is not None and n >= 1, "SectionFiveL needs m, n >= 1")
        return _alpha_plus_beta(m, -2 * n * (m * n + 1), f"SectionFiveL({m},{n})")
    raise LatticeError(f"unknown lattice kind {kind!r}")


LATTICE_KINDS = ("A1m", "Gamma", "Ln", "Gamma1", "SectionFiveL")


def _alpha_plus_beta(m, beta_norm, name):
    g = _a1m_gram(m + 1)
    g[m][m] = beta_norm
    return make_lattice(g, [f"alpha{i + 1}" for i in range(m)] + ["beta"], name)


def _need(cond, msg):
    if not cond:
        raise LatticeError(msg)


def change_of_basis(
    L: Lattice, M: Sequence[Sequence[int]], basis_names=None
) -> tuple[Lattice, Callable, Callable]:
    """Rebase ``L`` on the vectors given by the rows of ``M`` (old coordinates).

    Returns ``(new_lattice, forward, inverse)``.  ``forward`` sends new
    coordinates to old ones and is total.  ``inverse`` sends old coordinates
    to new ones; it is total when det M = +-1 and otherwise raises on points
    outside the image sublattice.
    """
    M = [list(r) for r in M]
    if len(M) != L.rank or any(len(r) != L.rank for r in M):
        raise LatticeError("change of basis must be a square matrix of the lattice rank")
    d = linalg.det(M)
    if d == 0:
        raise LatticeError("change of basis matrix is singular")
    gram = linalg.matmul(linalg.matmul(M, [list(r) for r in L.gram]), linalg.transpose(M))
    new = make_lattice(gram, basis_names, f"{L.name}*M" if L.name else "")
    Minv = linalg.inverse(M)

    def forward(y):
        y = _coords(y)
        return L.element(tuple(sum(y[i] * M[i][j] for i in range(len(y))) for j in range(L.rank)))

    def inverse(x):
        x = _coords(x)
        out = [sum(Fraction(x[i]) * Minv[i][j] for i in range(len(x))) for j in range(L.rank)]
        if any(c.denominator != 1 for c in out):
            raise LatticeError(f"{tuple(x)} is not in the image sublattice")
        return new.element(tuple(int(c) for c in out))

    return new, forward, inverse


def delta_gamma_rebasing(m: int, n: int):
    """Rows expressing (gamma_1..gamma_m, delta) in the alpha/beta basis."""
    delta = [n] * m + [1]
    rows = [[delta[j] + (j == i) for j in range(m + 1)] for i in range(m)]
    rows.append(delta)
    return rows
