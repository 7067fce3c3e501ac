from fractions import Fraction

from latvoa.linalg import Echelon, det, integer_annihilator, inverse, matmul, rank, rref


def test_rref_and_rank():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    r, pivots = rref(rows)
    assert rank(rows) == 2
    assert pivots == [0, 1]
    assert r == [[1, 0, 1], [0, 1, 1]]
    assert all(isinstance(x, Fraction) for row in r for x in row)


def test_det_and_inverse():
    g = [[2, 1], [1, 2]]
    assert det(g) == 3
    inv = inverse(g)
    assert inv == [[Fraction(2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(2, 3)]]
    assert matmul(g, inv) == [[1, 0], [0, 1]]


def test_integer_annihilator_kills_differences():
    diffs = [(1, -1, 0), (0, 1, -1)]
    P = integer_annihilator(diffs, 3)
    for row in P:
        assert all(isinstance(c, int) for c in row)
        for d in diffs:
            assert sum(a * b for a, b in zip(row, d)) == 0
    assert len(P) == 1


def test_echelon_membership():
    ech = Echelon()
    assert ech.insert({"a": 1, "b": 1}) is not None
    assert ech.insert({"b": 2, "c": 1}) is not None
    # a - c/2 is in the span: (a+b) - (b + c/2)
    assert ech.contains({"a": 1, "c": Fraction(-1, 2)})
    assert not ech.contains({"c": 1})
    assert ech.insert({"a": 2, "b": 2}) is None
    assert len(ech) == 2
