from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latvoa.fock import (
    INHOMOGENEOUS,
    MIXED,
    ContextError,
    LatticeVOA,
    charge,
    enumerate_basis,
    format_state,
    heisenberg_act,
    lattice_translate,
    parity,
    parse_state,
    weight,
)
from latvoa.lattice import make_lattice, named_lattice


@pytest.fixture
def g11():
    return LatticeVOA(named_lattice("Gamma", m=1, k=1))


def test_vacuum(g11):
    v = g11.vacuum()
    assert weight(v) == 0
    assert charge(v).coords == (0,)
    assert parity(v) == "even"


def test_heisenberg_examples():
    sp = LatticeVOA(make_lattice([[2, 1], [1, 2]]))
    h, h2 = (1, 2), (3, -1)
    assert heisenberg_act(h, 0, sp.exp((1, 1))) == sp.lattice.inner(h, (1, 1)) * sp.exp((1, 1))
    one = sp.vacuum()
    assert heisenberg_act(h, 1, sp.h(h2)) == sp.lattice.inner(h, h2) * one
    assert heisenberg_act(h, 2, sp.h(h2)).is_zero()


def test_translate():
    sp = LatticeVOA(make_lattice([[2, 1], [1, 2]]))
    eps = sp.cocycle
    v = sp.exp((0, 1))
    assert lattice_translate((0, 0), v) == v
    assert lattice_translate((1, 0), v) == eps((1, 0), (0, 1)) * sp.exp((1, 1))
    w = sp.monomial((1, -1), ((0, 2),))
    assert lattice_translate((1, 0), lattice_translate((-1, 0), w)) == eps((1, 0), (-1, 0)) * w


def test_weights_and_charges(g11):
    assert weight(g11.exp((1,))) == Fraction(3, 2)
    a1 = LatticeVOA(named_lattice("A1m", m=1))
    assert weight(a1.monomial((0,), ((0, 2), (0, 1)))) == 3
    assert weight(LatticeVOA(named_lattice("Ln", n=-4)).exp((1,))) == -2
    assert charge(a1.exp((1,))).coords == (1,)
    assert charge(a1.h((1,))).coords == (0,)
    assert charge(a1.exp((1,)) + a1.exp((-1,))) == MIXED
    assert weight(a1.exp((1,)) + a1.vacuum()) == INHOMOGENEOUS


def test_parity_of_states(g11):
    assert parity(g11.exp((1,))) == "odd"
    assert parity(g11.exp((1,)) + g11.vacuum()) == MIXED


def test_format_round_trip(g11):
    v = Fraction(-3, 4) * g11.monomial((2,), ((0, 3), (0, 1))) + g11.exp((-1,))
    text = format_state(v)
    assert parse_state(g11, text) == v
    assert parse_state(g11, text.replace("\n", ";")) == v
    assert format_state(g11.zero_state()) == "0"
    assert parse_state(g11, "0").is_zero()
    assert format_state(g11.monomial((0,), ((0, 2),))) == "1/1 e[0] h(1,-2)"
    for bad in ("1 e[0] h(0,-1)", "1 e[0] h(2,-1)", "1 e[0,1]", "x e[0]"):
        with pytest.raises(ContextError):
            parse_state(g11, bad)


def test_mixing_spaces_is_an_error(g11):
    other = LatticeVOA(named_lattice("Gamma", m=1, k=1))
    with pytest.raises(ContextError):
        g11.vacuum() + other.vacuum()


def test_enumerate_basis_counts():
    sp = LatticeVOA(named_lattice("A1m", m=1))
    # 1, {e_a, e_-a, a(-1)}, {a(-2), a(-1)^2, a(-1)e_{+-a}}
    counts = {}
    for mono in enumerate_basis(sp, 2):
        w = Fraction(sp.lattice.norm(mono[0]), 2) + sum(d for _, d in mono[1])
        counts[w] = counts.get(w, 0) + 1
    assert counts == {0: 1, 1: 3, 2: 4}


def test_indefinite_basis_needs_bound():
    sp = LatticeVOA(named_lattice("SectionFiveL", m=1, n=1))
    with pytest.raises(ContextError):
        enumerate_basis(sp, 2)
    assert enumerate_basis(sp, 1, weight_min=-1, charge_bound=1)


def random_state(space, draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        pt = tuple(draw(st.integers(-2, 2)) for _ in range(space.rank))
        word = tuple(sorted((draw(st.integers(0, space.rank - 1)), draw(st.integers(1, 3)))
                            for _ in range(draw(st.integers(0, 2)))))
        terms[(pt, word)] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    return space.state(terms)


SPACE = LatticeVOA(make_lattice([[2, 1], [1, -3]]))


@settings(max_examples=50)
@given(st.data(), st.integers(-3, 3), st.integers(-3, 3))
def test_heisenberg_commutator(data, n, m):
    v = random_state(SPACE, data.draw)
    h = (data.draw(st.integers(-2, 2)), data.draw(st.integers(-2, 2)))
    h2 = (data.draw(st.integers(-2, 2)), data.draw(st.integers(-2, 2)))
    lhs = heisenberg_act(h, n, heisenberg_act(h2, m, v)) - heisenberg_act(h2, m, heisenberg_act(h, n, v))
    rhs = (n * (n + m == 0) * SPACE.lattice.inner(h, h2)) * v
    assert lhs == rhs


@settings(max_examples=50)
@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
       st.integers(0, 3), st.integers(-3, 3))
def test_weight_shifts(pt, a, d, n):
    L = SPACE.lattice
    v = SPACE.monomial(pt, ((0, d),) if d else ())
    hv = heisenberg_act((1, 1), n, v)
    if hv:
        assert weight(hv) == weight(v) - n
    t = lattice_translate(a, v)
    assert weight(t) == weight(v) + Fraction(L.norm(a), 2) + L.inner(a, pt)
