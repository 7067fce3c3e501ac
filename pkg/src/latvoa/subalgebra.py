"""Window-truncated mode closures, membership, bigraded characters and derivation certificates.

A closure is graded by conformal weight and by the *projected* charge P.point,
where the rows of P annihilate the charge differences inside each generator.
For generators supported on a single lattice point P is the identity and the
grading is the full lattice charge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .fock import (
    INHOMOGENEOUS,
    ContextError,
    LatticeVOA,
    State,
    enumerate_basis,
    format_state,
    monomial_weight,
    weight,
)
from .linalg import Echelon, integer_annihilator
from .structures import dmk_generators
from .vertex import mode, mode_bound, virasoro_mode

DEFAULT_STEP_BUDGET = 2_000_000


class ClosureBudgetExceeded(RuntimeError):
    """The closure did not stabilise within the configured number of mode evaluations."""


class OutOfWindow(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    weight_min: Fraction
    weight_max: Fraction
    charge_bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "weight_min", Fraction(self.weight_min))
        object.__setattr__(self, "weight_max", Fraction(self.weight_max))
        if self.weight_min > self.weight_max:
            raise ValueError("weight_min > weight_max")
        if self.charge_bound is not None and self.charge_bound < 0:
            raise ValueError("charge bound must be nonnegative")

    def admits_weight(self, w) -> bool:
        return self.weight_min <= w <= self.weight_max

    def admits_point(self, pt) -> bool:
        return self.charge_bound is None or all(abs(c) <= self.charge_bound for c in pt)

    def admits(self, v: State) -> bool:
        """True when every monomial of v lies inside the window."""
        space = v.space
        return all(
            self.admits_point(pt) and self.admits_weight(monomial_weight(space, (pt, w))) for pt, w in v.terms
        )

    def as_dict(self):
        return {
            "weight_min": str(self.weight_min),
            "weight_max": str(self.weight_max),
            "charge_bound": self.charge_bound,
        }


def charge_projection(generators, rank: int):
    """Integer rows annihilating every charge difference within a generator."""
    diffs = []
    for g in generators:
        pts = sorted({pt for pt, _ in g.terms})
        for p in pts[1:]:
            diffs.append([a - b for a, b in zip(p, pts[0])])
    return tuple(tuple(r) for r in integer_annihilator(diffs, rank))


def _project(P, pt):
    return tuple(sum(r[i] * pt[i] for i in range(len(pt))) for r in P)


def bidegree_parts(v: State, P) -> dict:
    """Split v into components keyed by (weight, projected charge)."""
    out: dict = {}
    for mono, c in v.terms.items():
        key = (monomial_weight(v.space, mono), _project(P, mono[0]))
        out.setdefault(key, {})[mono] = c
    return out


def _bidegree(v: State, P):
    parts = bidegree_parts(v, P)
    if len(parts) != 1:
        raise ContextError(f"state is not bihomogeneous: {format_state(v)}")
    return next(iter(parts))


@dataclass
class GradedSubspace:
    """Echelon bases of a subspace, one per (weight, projected charge) bidegree."""

    space: LatticeVOA
    window: Window
    projection: tuple
    generators: list = field(default_factory=list)
    echelons: dict = field(default_factory=dict)
    states: list = field(default_factory=list)
    degrees: list = field(default_factory=list)
    steps: int = 0

    def bidegree(self, v: State):
        return _bidegree(v, self.projection)

    def insert(self, v: State) -> bool:
        """Add a bihomogeneous in-window state; return True if it enlarged the subspace."""
        key = self.bidegree(v)
        ech = self.echelons.setdefault(key, Echelon())
        if ech.insert(v.terms) is None:
            return False
        self.states.append(v)
        self.degrees.append(key)
        return True

    def contains(self, v: State) -> bool:
        for key, terms in bidegree_parts(v, self.projection).items():
            probe = State._wrap(v.space, terms)
            if not self.window.admits(probe):
                raise OutOfWindow(f"{format_state(probe)} lies outside {self.window.as_dict()}")
            ech = self.echelons.get(key)
            if ech is None or not ech.contains(terms):
                return False
        return True

    def dimension(self) -> int:
        return len(self.states)

    def character(self) -> dict:
        return {key: len(e) for key, e in sorted(self.echelons.items()) if len(e)}

    def basis(self, key) -> list:
        ech = self.echelons.get(key)
        if ech is None:
            return []
        return [State._wrap(self.space, dict(r)) for r in ech.basis()]


def _canonical_order(states, P):
    def key(v):
        w, q = _bidegree(v, P)
        return (w, q, format_state(v))

    return sorted(states, key=key)


def _n_range(window: Window, wu, wv, bound):
    # weight(u_n v) = wu + wv - n - 1 must land in the window
    lo = math.ceil(wu + wv - 1 - window.weight_max)
    hi = math.floor(wu + wv - 1 - window.weight_min)
    return range(lo, min(hi, bound - 1) + 1)


def _pair_bound(u: State, v: State) -> int:
    space = u.space
    return max(mode_bound(space, a, b) for a in u.terms for b in v.terms)


def close(generators, window: Window, omega: State | None = None, projection=None,
          step_budget: int = DEFAULT_STEP_BUDGET) -> GradedSubspace:
    """Smallest window-truncated subspace containing 1 and ``generators`` closed under in-window modes.

    Every pair of basis states (in both orders) is multiplied at every n
    whose result weight falls in the window; results with a monomial outside
    the window are dropped.  When ``omega`` is given each generator must be an
    L(0)-eigenvector with eigenvalue equal to its weight.
    """
    generators = [g for g in generators if g]
    if not generators:
        raise ValueError("need at least one generator")
    space = generators[0].space
    for g in generators:
        if g.space is not space:
            raise ContextError("generators live in different spaces")
        if weight(g) == INHOMOGENEOUS:
            raise ContextError(f"generator is not homogeneous: {format_state(g)}")
        if omega is not None and virasoro_mode(omega, 0, g) != weight(g) * g:
            raise ContextError("generator is not an L(0)-eigenvector for the given omega")
    L = space.lattice
    if window.charge_bound is None and not L.is_positive_definite():
        raise ContextError("indefinite lattice closures need a charge bound")
    P = projection if projection is not None else charge_projection(generators, space.rank)
    S = GradedSubspace(space, window, tuple(tuple(r) for r in P), list(generators))
    for g in _canonical_order([space.vacuum()] + generators, S.projection):
        if window.admits(g):
            S.insert(g)
    weights = []
    idx = 0
    while idx < len(S.states):
        w = S.states[idx]
        weights.append(weight(w))
        for j in range(idx + 1):
            u = S.states[j]
            pairs = [(w, weights[idx], u, weights[j])]
            if j != idx:
                pairs.append((u, weights[j], w, weights[idx]))
            for a, wa, b, wb in pairs:
                for n in _n_range(window, wa, wb, _pair_bound(a, b)):
                    S.steps += 1
                    if S.steps > step_budget:
                        raise ClosureBudgetExceeded(
                            f"closure exceeded {step_budget} mode evaluations at dimension {len(S.states)}"
                        )
                    r = mode(a, n, b)
                    if r and window.admits(r):
                        S.insert(r)
        idx += 1
    return S


def contains(S: GradedSubspace, v: State) -> bool:
    return S.contains(v)


def character(S: GradedSubspace) -> dict:
    return S.character()


def full_character(space: LatticeVOA, window: Window, projection=None) -> dict:
    """Bigraded dimensions of the whole window slice of V_L, by basis enumeration."""
    P = projection or charge_projection([], space.rank)
    out: dict = {}
    for pt, w in enumerate_basis(space, window.weight_max, window.weight_min, window.charge_bound):
        key = (monomial_weight(space, (pt, w)), _project(P, pt))
        out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items()))


def character_json(char: dict) -> dict:
    """Nested {"weight p/q": {"charge [c,...]": dim}} form."""
    out: dict = {}
    for (w, q), d in char.items():
        wkey = f"weight {w.numerator}/{w.denominator}"
        qkey = "charge [" + ",".join(str(c) for c in q) + "]"
        out.setdefault(wkey, {})[qkey] = d
    return out


def summed_by_weight(char: dict) -> dict:
    out: dict = {}
    for (w, _), d in char.items():
        out[w] = out.get(w, 0) + d
    return out


# regular subalgebras


def reg_sub_exponents(m: int, k: int, n: int) -> list:
    """Mode indices of the iterated product, in application order (rightmost first)."""
    return [-j * k - 2 * (j // m) - 1 for j in range(n * m)]


def reg_sub_product(m: int, k: int, n: int, space: LatticeVOA | None = None, limit: int = 6):
    """Apply X_{-jk-2t-1}, t = floor(j/m), for j = 0..nm-1 to 1; return (state, C).

    The result must be C * iota(e_{n(gamma_1+...+gamma_m)}) with C nonzero.
    """
    if min(m, k, n) < 1:
        raise ValueError("need m, k, n >= 1")
    if m * n * k > limit:
        raise ValueError(f"m*n*k = {m * n * k} exceeds the desk-scale bound {limit}")
    X, _ = dmk_generators(m, k, space)
    space = X.space
    v = space.vacuum()
    for e in reg_sub_exponents(m, k, n):
        v = mode(X, e, v)
    target = space.exp(tuple(n if i < m else 0 for i in range(space.rank)))
    C = v.ratio_to(target)
    if C is None or C == 0:
        raise AssertionError(f"product is not a nonzero multiple of the target: {format_state(v)}")
    return v, C


# derivation certificates


@dataclass
class Derivation:
    index: int
    state: State
    label: str
    left: int | None = None
    n: int | None = None
    right: int | None = None

    def describe(self) -> str:
        if self.left is None:
            return f"s{self.index} = {self.label}"
        return f"s{self.index} = s{self.left}_({self.n}) s{self.right}"


@dataclass
class CertificateSearch:
    window: Window
    projection: tuple
    nodes: list
    found: dict
    steps: int

    def chain(self, name) -> list:
        """Derivation lines for every node in the target's bidegree and their ancestors."""
        idxs = self.found.get(name)
        if idxs is None:
            return []
        seen = set()
        stack = list(idxs)
        while stack:
            i = stack.pop()
            if i in seen:
                continue
            seen.add(i)
            d = self.nodes[i]
            if d.left is not None:
                stack.extend([d.left, d.right])
        return [self.nodes[i].describe() + "   [" + format_state(self.nodes[i].state).replace("\n", " + ") + "]"
                for i in sorted(seen)]


def search_derivations(generators: dict, targets: dict, window: Window, projection=None,
                       step_budget: int = 400_000, pure_only: bool = True) -> CertificateSearch:
    """Breadth-first search for in-window product chains from ``generators`` reaching ``targets``.

    Every node is u_n v for earlier nodes u, v with the result inside the
    window, so each node lies in the truncated closure of the generators.
    With ``pure_only`` only results free of Heisenberg factors are kept,
    which keeps the search small.  A target is reached once it lies in the
    span of the nodes of its bidegree.
    """
    gens = list(generators.items())
    space = gens[0][1].space
    P = projection if projection is not None else charge_projection([g for _, g in gens], space.rank)
    P = tuple(tuple(r) for r in P)
    nodes: list = []
    echelons: dict = {}
    steps = 0

    def add(v, label, left=None, n=None, right=None):
        key = _bidegree(v, P)
        ech = echelons.setdefault(key, [Echelon(), []])
        if ech[0].insert(v.terms) is None:
            return False
        nodes.append(Derivation(len(nodes), v, label, left, n, right))
        ech[1].append(len(nodes) - 1)
        return True

    add(space.vacuum(), "1")
    for name, g in gens:
        if window.admits(g):
            add(g, name)

    found: dict = {}

    def check_targets():
        for name, t in targets.items():
            if name in found:
                continue
            parts = bidegree_parts(t, P)
            ok = True
            idxs = []
            for key, terms in parts.items():
                ech = echelons.get(key)
                if ech is None or not ech[0].contains(terms):
                    ok = False
                    break
                idxs.extend(ech[1])
            if ok:
                found[name] = idxs

    check_targets()
    weights = []
    idx = 0
    while idx < len(nodes) and len(found) < len(targets):
        w = nodes[idx].state
        weights.append(weight(w))
        for j in range(idx + 1):
            pairs = [(idx, j)] if j == idx else [(idx, j), (j, idx)]
            for a, b in pairs:
                sa, sb = nodes[a].state, nodes[b].state
                for n in _n_range(window, weights[a], weights[b], _pair_bound(sa, sb)):
                    steps += 1
                    if steps > step_budget:
                        check_targets()
                        return CertificateSearch(window, P, nodes, found, steps)
                    r = mode(sa, n, sb)
                    if not r or not window.admits(r):
                        continue
                    if pure_only and any(wd for _, wd in r.terms):
                        continue
                    add(r, "product", a, n, b)
        check_targets()
        idx += 1
    return CertificateSearch(window, P, nodes, found, steps)
