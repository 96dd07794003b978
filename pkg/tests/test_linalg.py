"""Exact linear algebra helpers."""

from fractions import Fraction

import pytest

from hankelkit.linalg import (
    SpanEchelon,
    gauss_rank,
    nullspace,
    poly_divide_exact,
    poly_matrix_rank,
    solve_consistent,
    span_dimension,
)
from hankelkit.polyring import Polynomial, PrimeField, QQ


def x(i, n=3):
    return Polynomial.variable(QQ, n, i)


def test_gauss_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert gauss_rank(rows) == 2
    basis = nullspace(rows, 3)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0


def test_nullspace_over_gf3():
    f3 = PrimeField(3)
    rows = [[1, 2], [2, 1]]
    assert gauss_rank(rows, f3) == 1  # second row = 2 * first mod 3
    basis = nullspace(rows, 2, f3)
    assert len(basis) == 1


def test_solve_consistent():
    rows = [[1, 0], [0, 1], [1, 1]]
    assert solve_consistent(rows, [2, 3, 5]) == [2, 3]
    assert solve_consistent(rows, [2, 3, 6]) is None


def test_span_echelon_membership():
    span = SpanEchelon(QQ)
    p = x(1) * x(3) - x(2) * x(2)
    q = x(1) * x(2)
    assert span.insert(p.terms)
    assert span.insert(q.terms)
    assert not span.insert((p + q).terms)
    assert span.contains((p - q.scale(7)).terms)
    assert not span.contains(x(3).terms)
    assert span.dim == 2


def test_span_dimension():
    polys = [x(1), x(2), x(1) + x(2), x(3)]
    assert span_dimension(polys) == 3


def test_poly_divide_exact():
    f = x(1) + x(2)
    g = x(1) * x(1) - x(2) * x(2)
    assert poly_divide_exact(g, f) == x(1) - x(2)
    with pytest.raises(ArithmeticError):
        poly_divide_exact(x(1) * x(1) + x(2), f)


def test_poly_matrix_rank_linear_forms():
    zero = Polynomial.zero(QQ, 3)
    m = [[x(1), x(2)], [x(2), x(3)]]
    assert poly_matrix_rank(m) == 2
    assert poly_matrix_rank([[x(1), x(2)], [x(1), x(2)]]) == 1
    assert poly_matrix_rank([[zero, zero]]) == 0
    # rank over the fraction field sees through scalar multiples only
    assert poly_matrix_rank([[x(1), x(2)], [x(1).scale(5), x(2).scale(5)]]) == 1
