"""Mode evaluation u_n v in a lattice vertex (super)algebra, and identity checkers.

Two independent evaluators are provided.  :func:`mode` peels Heisenberg
factors off ``u`` with the iterate formula

    (h(-p) u')_n = sum_{j>=0} C(p+j-1, j) [ h(-p-j) u'_{n+j} - (-1)^p u'_{n-p-j} h(j) ]

and bottoms out in :func:`lattice_mode`.  :func:`mode_naive` expands the
normal-ordered product of derivative fields and lattice operator directly,
using literal exponential series.  Both truncate using the depth bound

    u_k v = 0   for   k >= -<a, b> + depth(u) + depth(v)

for monomials u = iota(e_a) (x) word, v = iota(e_b) (x) word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd

from .fock import (
    ContextError,
    LatticeVOA,
    State,
    add_into,
    annihilate,
    axpy,
    format_state,
    insert_factor,
    merge_words,
    parity_bit,
    word_depth,
)
from .lattice import LatticeElement, _coords


def binom(n: int, k: int):
    """C(n, k) for any integer n via the falling factorial; 0 for k < 0."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


def _exact(terms: dict) -> dict:
    # the engine keeps integral coefficients as ints for speed; states hold Fractions
    for k, x in terms.items():
        if type(x) is int:
            terms[k] = Fraction(x)
    return terms


def _small(q):
    return q.numerator if q.denominator == 1 else q


def _same_space(*states):
    space = states[0].space
    for s in states[1:]:
        if s.space is not space:
            raise ContextError("states live in different lattice vertex algebras")
    return space


def _inner(space: LatticeVOA, x, y):
    g = space.gram
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = g[i]
            for j, yj in enumerate(y):
                if yj:
                    total += xi * row[j] * yj
    return total


def mode_bound(space: LatticeVOA, umono, vmono) -> int:
    """Smallest k with u_k v = 0 guaranteed (for all larger k as well)."""
    (a, uw), (b, vw) = umono, vmono
    return -_inner(space, a, b) + word_depth(uw) + word_depth(vw)


def state_mode_bound(u: State, v: State) -> int:
    space = _same_space(u, v)
    if not u.terms or not v.terms:
        return -(10**9)
    return max(mode_bound(space, um, vm) for um in u.terms for vm in v.terms)


# Schur polynomials


def schur_words(space: LatticeVOA, a: tuple, s: int) -> dict:
    """p_s(a(-1), a(-2), ...) as {word: coefficient}.

    Expanding exp(sum_k a(-k) y^k / k) with a(-k) = sum_i a_i b_i(-k) gives,
    for each word with c copies of b_i(-k), the coefficient
    prod (a_i / k)^c / c!.
    """
    cache = space.schur_cache
    key = (a, s)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if s < 0:
        out = {}
    elif s == 0:
        out = {(): 1}
    else:
        support = [i for i, x in enumerate(a) if x]
        factors = [(i, k) for i in support for k in range(1, s + 1)]
        out = {}

        def rec(start, remaining, acc, coef):
            if remaining == 0:
                out[tuple(sorted(acc))] = _small(coef)
                return
            for idx in range(start, len(factors)):
                i, k = factors[idx]
                if k > remaining:
                    continue
                base = Fraction(a[i], k)
                for c in range(1, remaining // k + 1):
                    acc.extend([(i, k)] * c)
                    rec(idx + 1, remaining - c * k, acc, coef * base**c / factorial(c))
                    del acc[len(acc) - c:]

        rec(0, s, [], Fraction(1))
    cache[key] = out
    return out


def schur_apply(alpha, r: int, v: State) -> State:
    """Multiply v by the creation polynomial p_r(alpha(-1), alpha(-2), ...)."""
    a = tuple(_coords(alpha))
    space = v.space
    if len(a) != space.rank:
        raise ContextError("vector has wrong length")
    words = schur_words(space, a, r)
    out: dict = {}
    for (pt, w), x in v.terms.items():
        for sw, y in words.items():
            add_into(out, (pt, merge_words(w, sw)), x * y)
    return State._wrap(space, _exact(out))


# lattice operators


def _exp_annihilation(pair: tuple, word: tuple) -> dict:
    """E^+(a, z) on a creation word, as {(r, word'): coef} meaning coef * word' * z^-r.

    E^+(a, z) b_j(-k) E^+(a, z)^-1 = b_j(-k) - <a, b_j> z^-k and E^+ fixes the
    vacuum, so every factor independently survives or is replaced by
    -<a, b_j> z^-k.
    """
    res = {(0, ()): 1}
    idx = 0
    n = len(word)
    while idx < n:
        f = word[idx]
        c = 1
        while idx + c < n and word[idx + c] == f:
            c += 1
        idx += c
        j, k = f
        p = pair[j]
        opts = [(k * t, (f,) * (c - t), comb(c, t) * (-p) ** t) for t in range(c + 1 if p else 1)]
        new: dict = {}
        for (r, w), x in res.items():
            for dr, kept, y in opts:
                key = (r + dr, w + kept)
                new[key] = new.get(key, 0) + x * y
        res = new
    return res


def _lattice_mode_mono(space: LatticeVOA, a: tuple, n: int, vmono) -> dict:
    b, w = vmono
    ab = _inner(space, a, b)
    if n >= -ab + word_depth(w):
        return {}
    pair = space.pairings(a)
    sign = space.cocycle.eval(a, b)
    newpt = tuple(p + q for p, q in zip(a, b))
    out: dict = {}
    for (r, w2), x in _exp_annihilation(pair, w).items():
        if not x:
            continue
        s = -n - 1 - ab + r
        if s < 0:
            continue
        for sw, y in schur_words(space, a, s).items():
            add_into(out, (newpt, merge_words(w2, sw)), sign * x * y)
    return out


def lattice_mode(a, n: int, v: State) -> State:
    """iota(e_a)_n v: the z^(-n-1) coefficient of Y(iota(e_a), z) v."""
    if isinstance(a, LatticeElement):
        a = a.require_integral()
    a = tuple(a)
    space = v.space
    out: dict = {}
    for vm, x in v.terms.items():
        axpy(out, x, _lattice_mode_mono(space, a, n, vm))
    return State._wrap(space, _exact(out))


# general modes, fast path


def _mode_mono(space: LatticeVOA, umono, n: int, vmono) -> dict:
    key = (umono, n, vmono)
    cache = space.mode_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    a, uw = umono
    if not uw:
        res = _lattice_mode_mono(space, a, n, vmono)
    elif n >= mode_bound(space, umono, vmono):
        res = {}
    else:
        i, p = uw[0]
        rest = (a, uw[1:])
        b, vw = vmono
        res = {}
        bound = mode_bound(space, rest, vmono)
        j = 0
        while n + j < bound:
            inner = _mode_mono(space, rest, n + j, vmono)
            if inner:
                c = comb(p + j - 1, j)
                f = (i, p + j)
                for (pt, w), x in inner.items():
                    add_into(res, (pt, insert_factor(w, f)), c * x)
            j += 1
        sgn = 1 if p % 2 else -1  # -(-1)^p
        row = space.gram[i]
        h0 = sum(row[l] * b[l] for l in range(space.rank) if b[l])
        if h0:
            axpy(res, sgn * h0, _mode_mono(space, rest, n - p, vmono))
        for depth in sorted({d for _, d in vw}):
            c = comb(p + depth - 1, depth)
            for w2, y in annihilate(row, depth, vw).items():
                axpy(res, sgn * c * y, _mode_mono(space, rest, n - p - depth, (b, w2)))
    cache[key] = res
    return res


def _integral(terms: dict):
    """(scale, integer terms) with terms = integer terms / scale."""
    den = 1
    for x in terms.values():
        d = x.denominator
        if den % d:
            den = den * d // gcd(den, d)
    return den, {k: int(x * den) if den > 1 else x.numerator for k, x in terms.items()}


def mode(u: State, n: int, v: State) -> State:
    """u_n v."""
    space = _same_space(u, v)
    du, ui = _integral(u.terms)
    dv, vi = _integral(v.terms)
    out: dict = {}
    for um, x in ui.items():
        for vm, y in vi.items():
            axpy(out, x * y, _mode_mono(space, um, n, vm))
    den = du * dv
    return State._wrap(space, {k: Fraction(x, den) if type(x) is int else x / den for k, x in out.items()})


# general modes, naive oracle


def _series_mul_words(s1: dict, s2: dict, max_deg: int) -> dict:
    out: dict = {}
    for e1, t1 in s1.items():
        for e2, t2 in s2.items():
            if e1 + e2 > max_deg:
                continue
            acc = out.setdefault(e1 + e2, {})
            for w1, x in t1.items():
                for w2, y in t2.items():
                    add_into(acc, merge_words(w1, w2), x * y)
    return {e: t for e, t in out.items() if t}


def _naive_creation_series(a: tuple, creators: list, max_deg: int) -> dict:
    """E^-(a, z) * prod_h d^(p-1)h^-(z)/(p-1)!, truncated at z^max_deg; {degree: {word: coef}}."""
    rank = len(a)
    gen: dict = {}
    for k in range(1, max_deg + 1):
        t = {}
        for i in range(rank):
            if a[i]:
                t[((i, k),)] = Fraction(a[i], k)
        if t:
            gen[k] = t
    total = {0: {(): Fraction(1)}}
    term = {0: {(): Fraction(1)}}
    order = 1
    while term:
        term = _series_mul_words(term, gen, max_deg)
        term = {e: {w: x / order for w, x in t.items()} for e, t in term.items()}
        for e, t in term.items():
            acc = total.setdefault(e, {})
            for w, x in t.items():
                add_into(acc, w, x)
        order += 1
    for i, p in creators:
        field_series = {d: {((i, d + p),): Fraction(binom(d + p - 1, p - 1))} for d in range(max_deg + 1)}
        total = _series_mul_words(total, field_series, max_deg)
    return total


def _naive_mono(space: LatticeVOA, umono, n: int, vmono) -> dict:
    a, uw = umono
    b, vw = vmono
    target = -n - 1
    factors = list(uw)
    pair_a = space.pairings(a)
    out: dict = {}
    for mask in range(1 << len(factors)):
        creators = [f for t, f in enumerate(factors) if mask >> t & 1]
        annihilators = [f for t, f in enumerate(factors) if not mask >> t & 1]
        # z^a then E^+(a, z) = exp(-sum_k a(k) z^-k / k), as a literal series
        series = {_inner(space, a, b): {vw: Fraction(1)}}
        total = {e: dict(t) for e, t in series.items()}
        term = series
        order = 1
        while term:
            nxt: dict = {}
            for e, t in term.items():
                for w, x in t.items():
                    for k in sorted({d for _, d in w}):
                        for w2, y in annihilate(pair_a, k, w).items():
                            add_into(nxt.setdefault(e - k, {}), w2, -x * y / (k * order))
            term = {e: t for e, t in nxt.items() if t}
            for e, t in term.items():
                acc = total.setdefault(e, {})
                for w, x in t.items():
                    add_into(acc, w, x)
            order += 1
        series = {e: t for e, t in total.items() if t}
        # annihilation halves of the derivative fields, h(0) reading the original point b
        for i, p in annihilators:
            row = space.gram[i]
            nxt = {}
            for e, t in series.items():
                for w, x in t.items():
                    h0 = sum(row[l] * b[l] for l in range(space.rank))
                    if h0:
                        add_into(nxt.setdefault(e - p, {}), w, x * h0 * binom(-1, p - 1))
                    for m in range(1, word_depth(w) + 1):
                        for w2, y in annihilate(row, m, w).items():
                            add_into(nxt.setdefault(e - m - p, {}), w2, x * y * binom(-m - 1, p - 1))
            series = {e: t for e, t in nxt.items() if t}
        if not series:
            continue
        sign = space.cocycle.eval(a, b)
        newpt = tuple(p + q for p, q in zip(a, b))
        max_deg = target - min(series)
        if max_deg < 0:
            continue
        creation = _naive_creation_series(a, creators, max_deg)
        for e, t in series.items():
            c_terms = creation.get(target - e)
            if not c_terms:
                continue
            for w1, x in t.items():
                for w2, y in c_terms.items():
                    add_into(out, (newpt, merge_words(w1, w2)), sign * x * y)
    return out


def mode_naive(u: State, n: int, v: State) -> State:
    """u_n v by direct expansion of the normal-ordered product (slow oracle for :func:`mode`)."""
    space = _same_space(u, v)
    out: dict = {}
    for um, x in u.terms.items():
        for vm, y in v.terms.items():
            axpy(out, x * y, _naive_mono(space, um, n, vm))
    return State._wrap(space, _exact(out))


# Virasoro


def virasoro_mode(omega: State, n: int, v: State) -> State:
    """L(n) v = omega_{n+1} v."""
    return mode(omega, n + 1, v)


class NotConformal(ValueError):
    pass


def central_charge(omega: State) -> Fraction:
    """c with L(2) L(-2) 1 = (c/2) 1."""
    space = omega.space
    vac = space.vacuum()
    r = mode(omega, 3, mode(omega, -1, vac))
    c = r.ratio_to(vac)
    if c is None:
        raise NotConformal(f"L(2)L(-2)1 is not a multiple of the vacuum: {format_state(r)}")
    return 2 * c


def translation(omega: State, v: State) -> State:
    return virasoro_mode(omega, -1, v)


# identity checkers


@dataclass
class IdentityReport:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)

    def record(self, label: dict, lhs: State, rhs: State):
        self.checked += 1
        if lhs != rhs:
            self.passed = False
            self.failures.append({**label, "lhs": format_state(lhs), "rhs": format_state(rhs)})


def commutator_sides(u: State, p: int, v: State, q: int, w: State):
    """Both sides of u_p v_q w - (-1)^{|u||v|} v_q u_p w = sum_i C(p,i) (u_i v)_{p+q-i} w."""
    sign = -1 if parity_bit(u) and parity_bit(v) else 1
    lhs = mode(u, p, mode(v, q, w)) - sign * mode(v, q, mode(u, p, w))
    space = _same_space(u, v, w)
    rhs = space.zero_state()
    top = state_mode_bound(u, v)
    for i in range(0, max(top, 0)):
        c = binom(p, i)
        if c:
            rhs = rhs + c * mode(mode(u, i, v), p + q - i, w)
    return lhs, rhs


def check_commutator(u, p, v, q, w, report: IdentityReport | None = None) -> IdentityReport:
    report = report or IdentityReport("commutator")
    lhs, rhs = commutator_sides(u, p, v, q, w)
    report.record({"p": p, "q": q}, lhs, rhs)
    return report


def skew_symmetry_sides(u: State, v: State, n: int, omega: State):
    """u_n v against (-1)^{|u||v|} sum_i (-1)^{n+1+i} L(-1)^i/i! (v_{n+i} u)."""
    sign = -1 if parity_bit(u) and parity_bit(v) else 1
    lhs = mode(u, n, v)
    space = _same_space(u, v)
    rhs = space.zero_state()
    top = state_mode_bound(v, u)
    i = 0
    while n + i < top:
        t = mode(v, n + i, u)
        for _ in range(i):
            t = translation(omega, t)
        rhs = rhs + Fraction(sign if (n + 1 + i) % 2 == 0 else -sign, factorial(i)) * t
        i += 1
    return lhs, rhs


def check_skew_symmetry(u: State, v: State, window, omega: State) -> IdentityReport:
    report = IdentityReport("skew-symmetry")
    for n in window:
        lhs, rhs = skew_symmetry_sides(u, v, n, omega)
        report.record({"n": n}, lhs, rhs)
    return report


def check_virasoro_bracket(omega: State, c, states, ps=range(-3, 4), qs=range(-3, 4)) -> IdentityReport:
    """[L(p), L(q)] w = (p-q) L(p+q) w + delta_{p+q,0} (p^3-p)/12 c w on every w in ``states``."""
    report = IdentityReport("virasoro-bracket")
    c = Fraction(c)
    for idx, w in enumerate(states):
        single: dict = {}
        double: dict = {}

        def L(n):
            if n not in single:
                single[n] = virasoro_mode(omega, n, w)
            return single[n]

        def LL(a, b):
            if (a, b) not in double:
                double[(a, b)] = virasoro_mode(omega, a, L(b))
            return double[(a, b)]

        for p in ps:
            for q in qs:
                lhs = LL(p, q) - LL(q, p)
                rhs = (p - q) * L(p + q)
                if p + q == 0:
                    rhs = rhs + Fraction(p**3 - p, 12) * c * w
                report.record({"state": idx, "p": p, "q": q}, lhs, rhs)
    return report
