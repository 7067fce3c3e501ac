"""Bimultiplicative 2-cocycles realizing the central extension of a lattice by {+1, -1}."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .lattice import Lattice, LatticeElement, _coords


@dataclass(frozen=True)
class TwoCocycle:
    """Sign function eps(x, y) = prod_{i,j} sign_table[i][j] ** (x_i * y_j)."""

    lattice: Lattice
    sign_table: tuple
    _flips: tuple = field(default=(), repr=False)

    def __post_init__(self):
        # indices (i, j) whose table entry is -1
        flips = tuple((i, j) for i, row in enumerate(self.sign_table) for j, s in enumerate(row) if s == -1)
        object.__setattr__(self, "_flips", flips)

    def eval(self, x, y) -> int:
        if isinstance(x, LatticeElement):
            x = x.require_integral()
        if isinstance(y, LatticeElement):
            y = y.require_integral()
        e = 0
        for i, j in self._flips:
            e += x[i] * y[j]
        return -1 if e % 2 else 1

    __call__ = eval


def build_standard_cocycle(L: Lattice) -> TwoCocycle:
    """Upper-triangular section of the super-commutator map.

    For i > j the table holds (-1)^(<b_i,b_j> + <b_i,b_i><b_j,b_j>), all other
    entries are +1.  The bimultiplicative extension then satisfies
    eps(x,y) eps(y,x) = (-1)^(<x,y> + <x,x><y,y>), which is the sign rule a
    lattice vertex superalgebra needs; on even lattices the second exponent
    vanishes and this is the plain commutator map (-1)^<x,y>.
    """
    g = L.gram
    table = tuple(
        tuple(
            (-1) ** ((g[i][j] + g[i][i] * g[j][j]) % 2) if i > j else 1
            for j in range(L.rank)
        )
        for i in range(L.rank)
    )
    return TwoCocycle(L, table)


def commutator_sign(L: Lattice, x, y) -> int:
    x, y = _coords(x), _coords(y)
    e = L.inner(x, y) + L.norm(x) * L.norm(y)
    return -1 if e % 2 else 1


@dataclass
class CocycleReport:
    passed: bool
    checked_pairs: int
    checked_triples: int
    witnesses: list

    def as_dict(self):
        return {
            "passed": self.passed,
            "checked_pairs": self.checked_pairs,
            "checked_triples": self.checked_triples,
            "witnesses": self.witnesses,
        }


def verify_cocycle(eps, sample_count: int = 200, seed: int = 0, coord_range: int = 3) -> CocycleReport:
    """Check the commutator rule on basis pairs and the 2-cocycle identity on random triples.

    ``eps`` is anything with ``.lattice`` and ``.eval(x, y)``.  Failures are
    collected as witnesses rather than raised.
    """
    L = eps.lattice
    rng = random.Random(seed)
    witnesses = []
    basis = [tuple(int(i == j) for j in range(L.rank)) for i in range(L.rank)]
    pairs = 0
    for x in basis:
        for y in basis:
            pairs += 1
            lhs = eps.eval(x, y) * eps.eval(y, x)
            rhs = commutator_sign(L, x, y)
            if lhs != rhs:
                witnesses.append({"identity": "commutator", "x": list(x), "y": list(y), "lhs": lhs, "rhs": rhs})

    def rand():
        return tuple(rng.randint(-coord_range, coord_range) for _ in range(L.rank))

    for _ in range(sample_count):
        a, b, c = rand(), rand(), rand()
        ab = tuple(p + q for p, q in zip(a, b))
        bc = tuple(p + q for p, q in zip(b, c))
        lhs = eps.eval(a, b) * eps.eval(ab, c)
        rhs = eps.eval(b, c) * eps.eval(a, bc)
        if lhs != rhs:
            witnesses.append({"identity": "2-cocycle", "a": list(a), "b": list(b), "c": list(c), "lhs": lhs, "rhs": rhs})
        pairs += 1
        if eps.eval(a, b) * eps.eval(b, a) != commutator_sign(L, a, b):
            witnesses.append({"identity": "commutator", "x": list(a), "y": list(b)})
    return CocycleReport(not witnesses, pairs, sample_count, witnesses)
