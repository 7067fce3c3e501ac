from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latvoa.fock import LatticeVOA, charge, heisenberg_act, weight
from latvoa.lattice import change_of_basis, named_lattice, delta_gamma_rebasing
from latvoa.structures import (
    dmk_generators,
    dmk_H,
    dmk_H_with_sign,
    dmk_virasoro,
    dmk_virasoro_pair,
    konst_weight,
    ambient_coordinates,
    section5_vectors,
    sl2_context,
    sl2_generators,
    standard_virasoro,
)
from latvoa.vertex import central_charge, mode, virasoro_mode


def test_standard_virasoro_rank_one():
    for n in (1, 2, 3, -4):
        sp = LatticeVOA(named_lattice("Ln", n=n))
        om = standard_virasoro(sp)
        b = heisenberg_act((1,), -1, sp.h((1,)))
        assert om == Fraction(1, 2 * n) * b
        assert virasoro_mode(om, 0, om) == 2 * om
    assert central_charge(standard_virasoro(named_lattice("A1m", m=2))) == 2


def test_sl2_generators():
    E, F = sl2_generators(1)
    assert E == E.space.exp((1,))
    assert weight(E) == 1
    for m in (1, 2, 3):
        ctx = sl2_context(m)
        E, F, h = ctx["E"], ctx["F"], ctx["h"]
        one = ctx.space.vacuum()
        assert mode(E, 1, F) == m * one
        assert mode(h, 0, E) == 2 * E
        assert mode(h, 0, F) == -2 * F
        assert mode(h, 1, h) == 2 * m * one
        assert mode(E, 0, E).is_zero() and mode(F, 0, F).is_zero()


def test_dmk_generators():
    X, Y = dmk_generators(2, 1)
    sp = X.space
    assert X == sp.exp((1, 0)) + sp.exp((0, 1))
    for m, k in [(1, 0), (1, 1), (2, 1), (2, 2), (3, 2)]:
        X, Y = dmk_generators(m, k)
        assert weight(X) == weight(Y) == 1 + Fraction(k, 2)
    X, _ = dmk_generators(1, 3)
    assert X.space.lattice.gram == ((5,),)


def test_dmk_H():
    H = dmk_H(1, 0)
    sp = H.space
    assert H == sp.cocycle((1,), (-1,)) * sp.h((1,))
    for m, k in [(1, 1), (2, 1), (2, 2), (3, 1)]:
        H, s = dmk_H_with_sign(m, k)
        X, _ = dmk_generators(m, k, H.space)
        assert weight(H) == 1
        assert s == 1
        assert mode(H, 0, X) == s * (2 + m * k) * X


def test_dmk_virasoro():
    om = dmk_virasoro(1, 0)
    assert om == standard_virasoro(om.space)
    assert central_charge(dmk_virasoro(3, 2)) == Fraction(9, 5)


@pytest.mark.parametrize("m,k", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)])
def test_omega_mk_is_conformal(m, k):
    a, b = dmk_virasoro_pair(m, k)
    assert a == b
    om = a
    c = Fraction(3 * m, m + 2)
    one = om.space.vacuum()
    assert virasoro_mode(om, 0, om) == 2 * om
    assert virasoro_mode(om, 1, om).is_zero()
    assert virasoro_mode(om, 2, om) == c / 2 * one
    for n in range(3, 6):
        assert virasoro_mode(om, n, om).is_zero()
    X, Y = dmk_generators(m, k, om.space)
    for n in range(0, 4):
        want = (1 + Fraction(k, 2)) * X if n == 0 else om.space.zero_state()
        assert virasoro_mode(om, n, X) == want


def test_ambient_vectors():
    for m, n in [(1, 1), (2, 1), (1, 2)]:
        c = ambient_coordinates(m, n)
        L = named_lattice("SectionFiveL", m=m, n=n)
        assert L.norm(c["delta"]) == -2 * n
        v = section5_vectors(m, n)
        assert charge(v["e_delta"]).coords == c["delta"]
        assert set(pt for pt, _ in v["X"].terms) == {c[f"gamma{i + 1}"] for i in range(m)}
        # beta = (nm+1) delta - n (gamma_1 + ... + gamma_m)
        _, fwd, inv = change_of_basis(L, delta_gamma_rebasing(m, n))
        beta_new = inv(c["beta"]).coords
        assert beta_new == tuple([-n] * m + [n * m + 1])
        assert fwd(beta_new).coords == c["beta"]


def test_konst_weight_examples():
    assert konst_weight(3, 1, 0) == Fraction(3, 4)
    assert konst_weight(1, 1, 2) == Fraction(-1, 12)
    with pytest.raises(ValueError):
        konst_weight(-2, 1, 1)


@given(st.fractions(min_value=1, max_value=20, max_denominator=7), st.integers(0, 6),
       st.fractions(min_value=-10, max_value=10, max_denominator=5))
def test_konst_weight_even_in_q(m, k, q):
    assert konst_weight(m, k, q) == konst_weight(m, k, -q)
