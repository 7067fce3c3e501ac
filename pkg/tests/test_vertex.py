from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latvoa.fock import LatticeVOA, charge, heisenberg_act, weight
from latvoa.lattice import make_lattice, named_lattice
from latvoa.structures import dmk_generators, sl2_generators, standard_virasoro
from latvoa.vertex import (
    NotConformal,
    binom,
    central_charge,
    check_commutator,
    check_skew_symmetry,
    check_virasoro_bracket,
    lattice_mode,
    mode,
    mode_naive,
    schur_apply,
    translation,
    virasoro_mode,
)


@pytest.fixture
def a11():
    return LatticeVOA(named_lattice("A1m", m=1))


def test_binom_negative_upper():
    assert binom(-1, 3) == -1
    assert binom(-2, 2) == 3
    assert binom(3, 5) == 0
    assert binom(5, -1) == 0


def test_schur_apply(a11):
    one = a11.vacuum()
    a = (1,)
    assert schur_apply(a, 0, one) == one
    assert schur_apply(a, 1, one) == a11.h(a)
    half = Fraction(1, 2)
    assert schur_apply(a, 2, one) == half * heisenberg_act(a, -1, a11.h(a)) + half * a11.h(a, 2)


def test_lattice_mode_examples(a11):
    eps = a11.cocycle
    ea, ema = a11.exp((1,)), a11.exp((-1,))
    assert lattice_mode((1,), -1, ea).is_zero()
    assert lattice_mode((1,), 1, ema) == eps((1,), (-1,)) * a11.vacuum()
    assert lattice_mode((1,), -3, ea) == eps((1,), (1,)) * a11.exp((2,))
    assert lattice_mode((1,), 2, ema).is_zero()


def test_mode_examples():
    sp = LatticeVOA(named_lattice("Gamma", m=2, k=1))
    one = sp.vacuum()
    v = sp.monomial((1, -1), ((0, 2),))
    assert mode(one, -1, v) == v
    assert mode(one, 0, v).is_zero()
    g = sp.exp((1, 2))
    h = (1, -1)
    assert mode(sp.h(h), 0, g) == sp.lattice.inner(h, (1, 2)) * g
    for m in (1, 2, 3):
        E, F = sl2_generators(m)
        assert mode(E, 1, F) == m * E.space.vacuum()


def test_virasoro_mode_examples():
    sp = LatticeVOA(named_lattice("Gamma", m=1, k=1))
    om = standard_virasoro(sp)
    assert virasoro_mode(om, -1, sp.vacuum()).is_zero()
    g = sp.exp((1,))
    assert virasoro_mode(om, 0, g) == Fraction(3, 2) * g


def test_central_charge_examples():
    for r in (1, 2, 3):
        assert central_charge(standard_virasoro(named_lattice("A1m", m=r))) == r
    L = make_lattice([[2, 1], [1, -3]])
    assert central_charge(standard_virasoro(L)) == 2
    sp = LatticeVOA(named_lattice("A1m", m=1))
    with pytest.raises(NotConformal):
        central_charge(sp.exp((2,)) + sp.exp((-2,)))


def test_commutator_examples(a11):
    om = standard_virasoro(a11)
    rep = None
    for p in range(-2, 3):
        for q in range(-2, 3):
            rep = check_commutator(om, p, om, q, a11.vacuum(), rep)
    assert rep.passed and rep.checked == 25
    one = a11.vacuum()
    assert check_commutator(one, -1, a11.exp((1,)), 0, a11.exp((-1,))).passed
    X, Y = dmk_generators(1, 1)
    rep = None
    for p in range(-2, 3):
        for q in range(-2, 3):
            rep = check_commutator(X, p, Y, q, X.space.vacuum(), rep)
    assert rep.passed


def test_commutator_detects_wrong_sign():
    # the bosonic rule on an odd pair must fail somewhere
    X, Y = dmk_generators(1, 1)
    sp = X.space
    w = sp.vacuum()
    mismatches = 0
    for p in range(-2, 3):
        for q in range(-2, 3):
            lhs = mode(X, p, mode(Y, q, w)) - mode(Y, q, mode(X, p, w))
            rhs = sum((binom(p, i) * mode(mode(X, i, Y), p + q - i, w) for i in range(4)), sp.zero_state())
            mismatches += lhs != rhs
    assert mismatches


def test_skew_symmetry(a11):
    om = standard_virasoro(a11)
    ea = a11.exp((1,))
    assert check_skew_symmetry(ea, ea, range(-4, 3), om).passed
    assert check_skew_symmetry(a11.vacuum(), ea, range(-3, 2), om).passed
    X, Y = dmk_generators(1, 1)
    assert check_skew_symmetry(X, Y, range(-4, 3), standard_virasoro(X.space)).passed


def test_virasoro_bracket_small(a11):
    om = standard_virasoro(a11)
    states = [a11.vacuum(), a11.exp((1,)), a11.h((1,))]
    assert check_virasoro_bracket(om, 1, states, range(-2, 3), range(-2, 3)).passed
    assert not check_virasoro_bracket(om, 2, states, range(-2, 3), range(-2, 3)).passed


# random states for the oracle and the additivity laws

GRAMS = [((2,),), ((3,),), ((-2,),), ((2, 1), (1, 2)), ((1, 0), (0, -1)), ((2, 1, 0), (1, 2, 1), (0, 1, 3))]
SPACES = [LatticeVOA(make_lattice(g)) for g in GRAMS]


@st.composite
def monomial_state(draw, space):
    pt = tuple(draw(st.integers(-1, 1)) for _ in range(space.rank))
    word = tuple(sorted((draw(st.integers(0, space.rank - 1)), draw(st.integers(1, 2)))
                        for _ in range(draw(st.integers(0, 2)))))
    return space.monomial(pt, word, draw(st.integers(1, 3)))


@st.composite
def request(draw):
    space = draw(st.sampled_from(SPACES))
    u = draw(monomial_state(space))
    v = draw(monomial_state(space))
    if draw(st.booleans()):
        u = u + draw(monomial_state(space))
    return u, draw(st.integers(-3, 3)), v


@settings(max_examples=60, deadline=None)
@given(request())
def test_mode_matches_naive(req):
    u, n, v = req
    assert mode(u, n, v) == mode_naive(u, n, v)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_weight_and_charge_additive(data):
    space = data.draw(st.sampled_from(SPACES))
    u = data.draw(monomial_state(space))
    v = data.draw(monomial_state(space))
    n = data.draw(st.integers(-3, 3))
    r = mode(u, n, v)
    if r:
        assert weight(r) == weight(u) + weight(v) - n - 1
        assert charge(r) == charge(u) + charge(v)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_translation_derivative(data):
    space = data.draw(st.sampled_from(SPACES[:4]))
    om = standard_virasoro(space)
    u = data.draw(monomial_state(space))
    v = data.draw(monomial_state(space))
    n = data.draw(st.integers(-2, 3))
    assert mode(translation(om, u), n, v) == -n * mode(u, n - 1, v)
