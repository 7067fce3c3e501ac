"""Distinguished vectors: vacua, Virasoro vectors, sl2 and D_{m,k} generators, and the rebased lattice dictionary."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fock import LatticeVOA, State, charge, heisenberg_act, weight
from .lattice import Lattice, LatticeError, named_lattice, delta_gamma_rebasing
from .vertex import central_charge, mode


class StructureError(AssertionError):
    """A structural identity that must hold exactly did not."""


@dataclass
class AlgebraContext:
    """A lattice vertex algebra together with its standard conformal vector and named states."""

    space: LatticeVOA
    omega: State
    vectors: dict = field(default_factory=dict)
    signs: dict = field(default_factory=dict)
    coords: dict = field(default_factory=dict)

    @property
    def lattice(self) -> Lattice:
        return self.space.lattice

    @property
    def cocycle(self):
        return self.space.cocycle

    def __getitem__(self, name) -> State:
        return self.vectors[name]


def _space(obj, cocycle=None) -> LatticeVOA:
    if isinstance(obj, LatticeVOA):
        return obj
    return LatticeVOA(obj, cocycle)


def _unit(rank, i):
    return tuple(int(j == i) for j in range(rank))


def standard_virasoro(lattice_or_space, cocycle=None) -> State:
    """omega = 1/2 sum_{i,j} (G^-1)_ij b_i(-1) b_j(-1) 1."""
    space = _space(lattice_or_space, cocycle)
    ginv = space.lattice.gram_inverse()
    vac = space.vacuum()
    out = space.zero_state()
    r = space.rank
    for i in range(r):
        for j in range(r):
            if ginv[i][j]:
                t = heisenberg_act(_unit(r, i), -1, heisenberg_act(_unit(r, j), -1, vac))
                out = out + Fraction(1, 2) * ginv[i][j] * t
    return out


def _exp_sum(space, points, sign=1):
    out = space.zero_state()
    for p in points:
        out = out + space.exp(tuple(sign * c for c in p))
    return out


def sl2_generators(m: int, space: LatticeVOA | None = None):
    """E = sum iota(e_{alpha_i}), F = sum iota(e_{-alpha_i}) in V_{A_{1,m}}."""
    if m < 1:
        raise LatticeError("m must be a positive integer")
    space = space or LatticeVOA(named_lattice("A1m", m=m))
    pts = [_unit(space.rank, i) for i in range(m)]
    return _exp_sum(space, pts), _exp_sum(space, pts, -1)


def dmk_generators(m: int, k: int, space: LatticeVOA | None = None):
    """X = sum iota(e_{gamma_i}), Y = sum iota(e_{-gamma_i}) in V_{Gamma_{m,k}}."""
    if m < 1 or k < 0:
        raise LatticeError("need m >= 1 and k >= 0")
    space = space or LatticeVOA(named_lattice("Gamma", m=m, k=k))
    pts = [_unit(space.rank, i) for i in range(m)]
    return _exp_sum(space, pts), _exp_sum(space, pts, -1)


def _gamma_sum_h(space, m):
    """(gamma_1 + ... + gamma_m)(-1) 1."""
    return heisenberg_act(tuple(1 if i < m else 0 for i in range(space.rank)), -1, space.vacuum())


def dmk_H_with_sign(m: int, k: int, space: LatticeVOA | None = None):
    """H = X_k Y, and the sign s with H = s * sum gamma_i(-1) 1."""
    X, Y = dmk_generators(m, k, space)
    space = X.space
    H = mode(X, k, Y)
    if weight(H) != 1 or charge(H) != space.lattice.zero():
        raise StructureError("X_k Y is not of weight 1 and charge 0")
    s = H.ratio_to(_gamma_sum_h(space, m))
    if s not in (1, -1):
        raise StructureError(f"X_k Y is not +-(sum gamma_i(-1))1 (ratio {s})")
    return H, int(s)


def dmk_H(m: int, k: int, space: LatticeVOA | None = None) -> State:
    return dmk_H_with_sign(m, k, space)[0]


def dmk_virasoro_pair(m: int, k: int, space: LatticeVOA | None = None):
    """omega_{m,k} from the mode formula and from the closed lattice formula."""
    X, Y = dmk_generators(m, k, space)
    space = X.space
    H = dmk_H(m, k, space)
    pre = Fraction(1, 2 * (m + 2))
    by_modes = pre * (mode(X, k - 1, Y) + mode(Y, k - 1, X) + Fraction(1 - k, m * k + 2) * mode(H, -1, H))

    r = space.rank
    vac = space.vacuum()
    closed = space.zero_state()
    for i in range(m):
        closed = closed + pre * heisenberg_act(_unit(r, i), -1, heisenberg_act(_unit(r, i), -1, vac))
    eps = space.cocycle
    for i in range(m):
        for j in range(m):
            if i != j:
                diff = tuple(a - b for a, b in zip(_unit(r, i), _unit(r, j)))
                # the sign is +1 for the standard section
                sgn = eps(_unit(r, i), _unit(r, j))
                closed = closed + Fraction(sgn, m + 2) * space.exp(diff)
    g = _gamma_sum_h(space, m)
    gsum = tuple(1 if i < m else 0 for i in range(r))
    closed = closed + Fraction(1 - k, 2 * (m + 2) * (m * k + 2)) * heisenberg_act(gsum, -1, g)
    return by_modes, closed


def dmk_virasoro(m: int, k: int, space: LatticeVOA | None = None) -> State:
    """omega_{m,k}; both formulas are computed and must agree, and c must be 3m/(m+2)."""
    by_modes, closed = dmk_virasoro_pair(m, k, space)
    if by_modes != closed:
        raise StructureError(f"the two formulas for omega_{{{m},{k}}} disagree")
    c = central_charge(by_modes)
    if c != Fraction(3 * m, m + 2):
        raise StructureError(f"central charge {c} != 3m/(m+2)")
    return by_modes


def sl2_context(m: int) -> AlgebraContext:
    space = LatticeVOA(named_lattice("A1m", m=m))
    E, F = sl2_generators(m, space)
    h = mode(E, 0, F)
    return AlgebraContext(space, standard_virasoro(space), {"E": E, "F": F, "h": h, "vacuum": space.vacuum()})


def dmk_context(m: int, k: int) -> AlgebraContext:
    space = LatticeVOA(named_lattice("Gamma", m=m, k=k))
    X, Y = dmk_generators(m, k, space)
    H, s = dmk_H_with_sign(m, k, space)
    om = dmk_virasoro(m, k, space)
    vectors = {"X": X, "Y": Y, "H": H, "omega_mk": om, "vacuum": space.vacuum()}
    return AlgebraContext(space, standard_virasoro(space), vectors, {"H": s})


def ambient_coordinates(m: int, n: int) -> dict:
    """alpha/beta coordinates of gamma_i, delta and the sums used by the relations."""
    rows = delta_gamma_rebasing(m, n)
    r = m + 1
    coords = {f"gamma{i + 1}": tuple(rows[i]) for i in range(m)}
    coords["delta"] = tuple(rows[m])
    coords["beta"] = _unit(r, m)
    coords["n_alpha_sum"] = tuple(n if i < m else 0 for i in range(r))
    coords["n_gamma_sum"] = tuple(n * sum(rows[i][j] for i in range(m)) for j in range(r))
    for i in range(m):
        coords[f"alpha{i + 1}"] = _unit(r, i)
    return coords


def section5_vectors(m: int, n: int, space: LatticeVOA | None = None) -> dict:
    """E, F, X, Y, iota(e_{+-beta}), iota(e_{+-delta}) in V_L with L = A_{1,m} + Z beta, <beta,beta> = -2n(mn+1)."""
    if m < 1 or n < 1:
        raise LatticeError("need m, n >= 1")
    space = space or LatticeVOA(named_lattice("SectionFiveL", m=m, n=n))
    c = ambient_coordinates(m, n)
    alphas = [c[f"alpha{i + 1}"] for i in range(m)]
    gammas = [c[f"gamma{i + 1}"] for i in range(m)]
    neg = lambda p: tuple(-x for x in p)  # noqa: E731
    return {
        "E": _exp_sum(space, alphas),
        "F": _exp_sum(space, alphas, -1),
        "X": _exp_sum(space, gammas),
        "Y": _exp_sum(space, gammas, -1),
        "e_beta": space.exp(c["beta"]),
        "e_-beta": space.exp(neg(c["beta"])),
        "e_delta": space.exp(c["delta"]),
        "e_-delta": space.exp(neg(c["delta"])),
    }


def ambient_context(m: int, n: int) -> AlgebraContext:
    space = LatticeVOA(named_lattice("SectionFiveL", m=m, n=n))
    vecs = section5_vectors(m, n, space)
    vecs["vacuum"] = space.vacuum()
    return AlgebraContext(space, standard_virasoro(space), vecs, {}, ambient_coordinates(m, n))


def konst_weight(m, k: int, q) -> Fraction:
    """t(m, k, q) = m/4 - q^2/(4(m+2)) + (1-k) q^2 / (2(m+2)(mk+2))."""
    m, q = Fraction(m), Fraction(q)
    if m == 0 or m == -2 or m * k + 2 == 0:
        raise ValueError("excluded parameters: m in {0, -2} or mk + 2 = 0")
    return m / 4 - q * q / (4 * (m + 2)) + (1 - k) * q * q / (2 * (m + 2) * (m * k + 2))
