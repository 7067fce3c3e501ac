from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latvoa.lattice import (
    LatticeElement,
    LatticeError,
    change_of_basis,
    inner,
    make_lattice,
    named_lattice,
    parity,
    delta_gamma_rebasing,
)


def test_make_lattice_examples():
    L = make_lattice([[2]])
    assert L.rank == 1 and L.is_even()
    assert make_lattice([[0]]).inner((1,), (1,)) == 0
    assert make_lattice([[2, 1], [1, 2]]).inner((1, 0), (0, 1)) == 1


def test_make_lattice_rejects_nonsymmetric():
    with pytest.raises(LatticeError):
        make_lattice([[2, 1], [0, 2]])
    with pytest.raises(LatticeError):
        make_lattice([[2, 1]])


def test_named_lattices():
    assert inner(named_lattice("A1m", m=2), (1, 0), (0, 1)) == 0
    G = named_lattice("Gamma", m=3, k=2)
    for i in range(3):
        for j in range(3):
            assert G.gram[i][j] == 2 * (i == j) + 2
    assert named_lattice("Gamma", m=2, k=2).gram == ((4, 2), (2, 4))
    S = named_lattice("SectionFiveL", m=1, n=1)
    assert S.norm((0, 1)) == -4
    assert named_lattice("Ln", n=-1).gram == ((-1,),)
    assert inner(G, G.zero(), (1, 2, 3)) == 0


def test_parity_examples():
    L3 = named_lattice("Ln", n=3)
    assert parity(L3, (1,)) == "odd"
    assert parity(L3, (0,)) == "even"
    assert parity(named_lattice("Gamma", m=1, k=1), (1,)) == "odd"


def test_coset_elements_need_a_label():
    with pytest.raises(LatticeError):
        LatticeElement((Fraction(1, 2),))
    x = LatticeElement((Fraction(1, 2),), coset="MF")
    assert not x.is_integral
    with pytest.raises(LatticeError):
        x.require_integral()


def test_delta_gamma_rebasing_gram():
    for m in range(1, 4):
        for n in range(1, 4):
            L = named_lattice("SectionFiveL", m=m, n=n)
            new, fwd, inv = change_of_basis(L, delta_gamma_rebasing(m, n))
            for i in range(m):
                for j in range(m):
                    assert new.gram[i][j] == 2 * (i == j) + 2 * n
                assert new.gram[i][m] == 0
            assert new.gram[m][m] == -2 * n


def test_gamma1_rebasing():
    m, k = 2, 3
    L = named_lattice("Gamma1", m=m, k=k)
    M = [[int(i == j) + (j == m) for j in range(m + 1)] for i in range(m)] + [[0] * m + [1]]
    new, _, _ = change_of_basis(L, M)
    for i in range(m):
        for j in range(m):
            assert new.gram[i][j] == 2 * (i == j) + k


def test_identity_change_of_basis():
    L = make_lattice([[2, 1], [1, -2]])
    new, fwd, inv = change_of_basis(L, [[1, 0], [0, 1]])
    assert new.gram == L.gram
    assert fwd((3, -1)).coords == (3, -1)


def test_inverse_outside_image():
    L = make_lattice([[2]])
    _, _, inv = change_of_basis(L, [[2]])
    assert inv((4,)).coords == (2,)
    with pytest.raises(LatticeError):
        inv((1,))


GRAM = ((2, 1, 0), (1, -2, 3), (0, 3, 1))
vec = st.tuples(*[st.integers(-20, 20)] * 3)


@given(vec, vec, vec, st.integers(-5, 5))
def test_inner_symmetric_bilinear(x, y, z, c):
    L = make_lattice(GRAM)
    assert L.inner(x, y) == L.inner(y, x)
    xz = tuple(a + c * b for a, b in zip(x, z))
    assert L.inner(xz, y) == L.inner(x, y) + c * L.inner(z, y)


@given(vec, vec)
def test_norm_parity_additive(x, y):
    L = make_lattice(GRAM)
    s = tuple(a + b for a, b in zip(x, y))
    assert (L.norm(s) - L.norm(x) - L.norm(y)) % 2 == 0


@given(st.tuples(*[st.integers(-10, 10)] * 3))
def test_change_of_basis_round_trip(y):
    L = make_lattice(GRAM)
    M = [[1, 1, 0], [0, 1, 2], [1, 0, 3]]
    new, fwd, inv = change_of_basis(L, M)
    assert inv(fwd(y)).coords == y
    assert new.inner(y, y) == L.norm(fwd(y))
