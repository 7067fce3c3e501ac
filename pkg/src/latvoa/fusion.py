"""Symbolic fusion rings of L(m,0) and rank-one lattice algebras, and irreducible-module counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True, order=True)
class AffineLabel:
    """L(m, j), the level-m integrable sl2 module with top weight j."""

    m: int
    j: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.j <= self.m:
            raise ValueError(f"need m >= 1 and 0 <= j <= m, got L({self.m},{self.j})")

    def __str__(self):
        return f"L({self.m},{self.j})"


@dataclass(frozen=True, order=True)
class LatticeLabel:
    """F_n^i, the coset module of the rank-one lattice algebra of norm n; i is kept mod |n|."""

    n: int
    i: int

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("lattice labels need n != 0")
        object.__setattr__(self, "i", self.i % abs(self.n))

    def __str__(self):
        return f"F({self.n})^{self.i}"


@dataclass(frozen=True, order=True)
class TensorLabel:
    factors: tuple

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)


def mf_label(k: int) -> LatticeLabel:
    """MF_{2k}: the half-shift module F_{2k}^k."""
    return LatticeLabel(2 * k, k)


def _shape(label):
    if isinstance(label, AffineLabel):
        return ("L", label.m)
    if isinstance(label, LatticeLabel):
        return ("F", label.n)
    return tuple(_shape(f) for f in label.factors)


class FusionElement:
    """Finite nonnegative integer combination of module labels."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        c = Counter()
        if terms:
            items = terms.items() if isinstance(terms, dict) else ((t, 1) for t in terms)
            for label, mult in items:
                if mult < 0:
                    raise ValueError("multiplicities are nonnegative")
                if mult:
                    c[label] += mult
        self.terms = c

    def __add__(self, other):
        return FusionElement(self.terms + other.terms)

    def __mul__(self, other):
        return fuse(self, other)

    def __eq__(self, other):
        return isinstance(other, FusionElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return " + ".join(f"{c}*{lab}" if c > 1 else str(lab) for lab, c in sorted(self.terms.items(), key=_sort_key)) or "0"

    def as_dict(self):
        return {str(lab): c for lab, c in sorted(self.terms.items(), key=_sort_key)}


def _sort_key(item):
    return str(item[0])


def fuse_lattice(n: int, i: int, j: int) -> FusionElement:
    """F_n^i x F_n^j = F_n^{i+j}."""
    return FusionElement([LatticeLabel(n, i + j)])


def fuse_affine(m: int, j: int, k: int) -> FusionElement:
    """L(m,j) x L(m,k) = sum_{i = max(0, j+k-m)}^{min(j,k)} L(m, j+k-2i)."""
    AffineLabel(m, j), AffineLabel(m, k)
    return FusionElement([AffineLabel(m, j + k - 2 * i) for i in range(max(0, j + k - m), min(j, k) + 1)])


def fuse_labels(a, b) -> FusionElement:
    if _shape(a) != _shape(b):
        raise ValueError(f"cannot fuse {a} with {b}: different shapes")
    if isinstance(a, AffineLabel):
        return fuse_affine(a.m, a.j, b.j)
    if isinstance(a, LatticeLabel):
        return fuse_lattice(a.n, a.i, b.i)
    parts = [fuse_labels(x, y) for x, y in zip(a.factors, b.factors)]
    out = Counter()
    for combo in product(*(list(p.terms.items()) for p in parts)):
        mult = 1
        for _, c in combo:
            mult *= c
        out[TensorLabel(tuple(lab for lab, _ in combo))] += mult
    return FusionElement(out)


def fuse(a: FusionElement, b: FusionElement) -> FusionElement:
    """Bilinear extension of the label products; tensor labels fuse factor by factor."""
    out = Counter()
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            for lab, c in fuse_labels(la, lb).terms.items():
                out[lab] += ca * cb * c
    return FusionElement(out)


def unit_like(label) -> FusionElement:
    """The vacuum label with the same shape as ``label``."""

    def vac(lab):
        if isinstance(lab, AffineLabel):
            return AffineLabel(lab.m, 0)
        if isinstance(lab, LatticeLabel):
            return LatticeLabel(lab.n, 0)
        return TensorLabel(tuple(vac(f) for f in lab.factors))

    return FusionElement([vac(label)])


def affine_labels(m: int) -> list:
    return [AffineLabel(m, j) for j in range(m + 1)]


def lattice_labels(n: int) -> list:
    return [LatticeLabel(n, i) for i in range(abs(n))]


def count_irreducibles(m: int, k: int) -> int:
    """Number of inequivalent irreducible D_{m,k}-modules for a positive integer level m.

    k = 0 gives the m+1 integrable L(m,0)-modules; k = 2n gives (m+1)(nm+1);
    odd k gives (m+1)(km+2)/2.
    """
    if m < 1 or k < 0:
        raise ValueError("need m >= 1 and k >= 0")
    if k == 0:
        return m + 1
    if k % 2 == 0:
        return (m + 1) * ((k // 2) * m + 1)
    total = (m + 1) * (k * m + 2)
    assert total % 2 == 0, "(m+1)(km+2) must be even for odd k"
    return total // 2
