"""Hankel builders, determinants against the permutation oracle, cofactors,
minors, block partitions, and the maximal-minor transfer."""

import json

import pytest

from hankelkit.linalg import span_dimension
from hankelkit.polyring import Polynomial, QQ
from hankelkit.symmatrix import (
    HankelSpec,
    MatrixShapeError,
    SymMatrix,
    block_partition,
    gruson_peskine_check,
    hankel,
    hankel_degeneration,
    hankel_square,
    phi_endomorphism,
)


def test_hankel_generic_3x3():
    h = hankel(HankelSpec(3, 3, 0))
    assert h.nvars == 5
    grid = [[h.at(i, j).to_string() for j in (1, 2, 3)] for i in (1, 2, 3)]
    assert grid == [["x1", "x2", "x3"], ["x2", "x3", "x4"], ["x3", "x4", "x5"]]


def test_hankel_degeneration_slot_zero():
    h = hankel(HankelSpec(3, 3, 1))
    assert h.nvars == 4
    assert h.at(3, 3).is_zero()
    assert h.at(2, 3) == Polynomial.variable(QQ, 4, 4)


def test_hankel_one_by_one():
    h = hankel(HankelSpec(1, 1, 0))
    assert h.at(1, 1) == Polynomial.variable(QQ, 1, 1)


def test_hankel_rejects_empty_shape():
    with pytest.raises(MatrixShapeError):
        HankelSpec(2, 2, 4)


def test_det_h2_by_hand():
    f = hankel_square(2, 0).determinant()
    assert f.to_string() == "-x2^2+x1*x3"


def test_det_h3_matches_oracle():
    h = hankel_square(3, 0)
    f = h.determinant()
    assert f == h.determinant_perm_oracle()
    assert f.to_string() == "-x3^3+2*x2*x3*x4-x1*x4^2-x2^2*x5+x1*x3*x5"


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_det_memo_equals_permutation_oracle(m):
    for r in range(0, m - 1):
        h = hankel_square(m, r)
        assert h.determinant() == h.determinant_perm_oracle()


def test_det_nonzero_with_unit_antidiagonal_coefficient():
    for m in range(2, 7):
        for r in range(0, m - 1):
            f = hankel_square(m, r).determinant()
            assert not f.is_zero()
            assert abs(f.pure_term_coefficient(m, m)) == 1


def test_det_alternating_row_swap(rng):
    for m in (3, 4):
        r = rng.randrange(0, m - 1)
        h = hankel_square(m, r)
        a, b = sorted(rng.sample(range(1, m + 1), 2))
        assert h.swap_rows(a, b).determinant() == -h.determinant()


def test_laplace_first_row():
    for (m, r) in [(3, 0), (4, 1)]:
        h = hankel_square(m, r)
        f = h.determinant()
        total = Polynomial.zero(QQ, h.nvars)
        for j in range(1, m + 1):
            total = total + h.at(1, j) * h.cofactor(1, j)
        assert total == f


def test_cofactor_h3_corner():
    h = hankel_square(3, 0)
    x = lambda i: Polynomial.variable(QQ, 5, i)
    assert h.cofactor(1, 1) == x(3) * x(5) - x(4) * x(4)


def test_adjugate_identity_and_symmetry():
    for (m, r) in [(2, 0), (3, 0), (3, 1), (4, 1), (5, 2)]:
        h = hankel_square(m, r)
        f = h.determinant()
        adj = h.adjugate()
        assert adj.is_symmetric()  # adjugate of a symmetric matrix
        left = adj.mul(h)
        right = h.mul(adj)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                expect = f if i == j else Polynomial.zero(QQ, h.nvars)
                assert left.at(i, j) == expect
                assert right.at(i, j) == expect


def test_adjugate_of_1x1():
    m = SymMatrix(1, 1, [Polynomial.variable(QQ, 1, 1)])
    assert m.adjugate().at(1, 1) == Polynomial.one(QQ, 1)


def test_delta_accessor_is_transposed_cofactor():
    h = hankel_square(4, 1)
    assert h.delta(2, 3) == h.cofactor(3, 2)


def test_minors_count_and_values():
    h24 = hankel(HankelSpec(2, 4, 0))
    ms = h24.minors(2)
    assert len(ms) == 6
    first = ms[0]
    assert first.rows == (1, 2) and first.cols == (1, 2)
    assert first.value.to_string() == "-x2^2+x1*x3"
    # count of maximal minors of the (m-1) x (m+1) shape is C(m+1, 2)
    h35 = hankel(HankelSpec(3, 5, 0))
    assert len(h35.minors(3)) == 10
    sq = hankel_square(3, 1)
    assert len(sq.minors(3)) == 1 and sq.minors(3)[0].value == sq.determinant()


def test_minor_enumeration_is_lexicographic():
    h = hankel_square(3, 0)
    pairs = [(mn.rows, mn.cols) for mn in h.minors(2)]
    assert pairs == sorted(pairs)


def test_phi_endomorphism_images():
    phi = phi_endomorphism(3, 1)
    assert phi.images[4].is_zero()
    assert phi.images[0] == Polynomial.variable(QQ, 5, 1)
    ident = phi_endomorphism(3, 0)
    f = hankel_square(3, 0).determinant()
    assert ident.apply(f) == f


def test_phi_matches_direct_degeneration():
    for m in (2, 3, 4, 5):
        for r in range(0, m - 1):
            hankel_degeneration(m, r)  # raises on mismatch


def test_phi_carries_minor_ideals():
    # the kill map sends the t-minor set of the generic shape onto the
    # degeneration's t-minor set
    m, r, t = 3, 1, 2
    phi = phi_endomorphism(m, r)
    generic = hankel_square(m, 0)
    degen = hankel_square(m, r)
    mapped = {phi.apply(mn.value).restrict_nvars(degen.nvars).to_string()
              for mn in generic.minors(t)}
    direct = {mn.value.to_string() for mn in degen.minors(t)}
    assert mapped == direct


def test_linear_span_preserved_by_degeneration():
    # the span dimension of the t-minors is insensitive to r whenever r < t;
    # in particular for the submaximal minors (t = m-1 >= r+1 always)
    for m in (3, 4, 5):
        for t in range(1, m + 1):
            base = span_dimension([mn.value for mn in hankel_square(m, 0).minors(t)])
            for r in range(1, min(t, m - 1)):
                d = span_dimension([mn.value for mn in hankel_square(m, r).minors(t)])
                assert d == base


def test_linear_span_drops_when_r_reaches_t():
    # frozen counterexample to the blanket claim: entries of the order-3
    # one-zero degeneration span 4 dimensions, the generic entries span 5
    assert span_dimension([mn.value for mn in hankel_square(3, 1).minors(1)]) == 4
    assert span_dimension([mn.value for mn in hankel_square(3, 0).minors(1)]) == 5
    assert span_dimension([mn.value for mn in hankel_square(4, 2).minors(2)]) == 10
    assert span_dimension([mn.value for mn in hankel_square(4, 0).minors(2)]) == 15


def test_gruson_peskine_square_case():
    rep = gruson_peskine_check(3, 2, 5, 0)
    assert rep.equal
    rep = gruson_peskine_check(3, 3, 5, 0)
    assert rep.equal  # t = s is trivial
    rep = gruson_peskine_check(4, 3, 7, 1)
    assert rep.equal


def test_gruson_peskine_extends_to_m5():
    for r in range(0, 4):
        for t in range(1, 6):
            assert gruson_peskine_check(5, t, 9, r).equal, (t, r)


def test_block_partition_shapes_and_identity():
    m, r = 4, 1
    part = block_partition(m, r, 1)
    assert part.upper.rows == 3 and part.lower.rows == 1
    assert part.adj_b.rows == 3 and part.adj_b.cols == 1
    h = hankel_square(m, r)
    f = h.determinant()
    adj = h.adjugate()
    # B' = B^t by symmetry of the adjugate
    bt = part.adj_b.transpose()
    for i in range(1, 2):
        for j in range(1, 4):
            assert bt.at(i, j) == adj.at(m - 1 + i, j)
    # blockwise product: A U + B D reproduces the top rows of f I
    top = part.adj_a.mul(part.upper)
    rest = part.adj_b.mul(part.lower)
    for i in range(1, m):
        for j in range(1, m + 1):
            expect = f if i == j else Polynomial.zero(QQ, h.nvars)
            assert top.at(i, j) + rest.at(i, j) == expect
    with pytest.raises(Exception):
        block_partition(m, r, m - 1)


def test_matrix_json_round_trip():
    h = hankel_square(3, 1)
    text = h.to_json()
    parsed = json.loads(text)
    assert parsed[2][2] == "0"
    again = SymMatrix.from_json(text, QQ, 4)
    assert again == h
