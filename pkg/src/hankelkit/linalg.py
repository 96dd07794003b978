"""Exact linear algebra: dense Gauss over a field, fraction-free polynomial
rank, and an incremental sparse echelon form for spans of polynomials.

Everything here is exact; the rationals go through integer-primitive rows to
keep big-integer growth in check.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .polyring import DEGREVLEX, QQ, Polynomial


def _row_primitive(row: dict) -> dict:
    g = 0
    for c in row.values():
        g = gcd(g, abs(c))
        if g == 1:
            return row
    if g <= 1:
        return row
    return {k: c // g for k, c in row.items()}


class SpanEchelon:
    """Incremental echelon basis of a k-span of sparse vectors.

    Vectors are dicts keyed by hashable coordinates (exponent tuples).  Over
    QQ the rows are kept integer and primitive; over GF(p) coefficients are
    canonical residues.  ``insert`` reduces the vector against the current
    pivots and either absorbs it (returns False) or installs a new pivot row
    (returns True).
    """

    def __init__(self, field=QQ, keyfn=None):
        self.field = field
        self.keyfn = keyfn or DEGREVLEX.key
        self.pivots: dict = {}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _lead(self, row: dict):
        return max(row, key=self.keyfn)

    def _to_int_row(self, terms: dict) -> dict:
        if self.field == QQ:
            den = 1
            for c in terms.values():
                f = Fraction(c)
                den = den * f.denominator // gcd(den, f.denominator)
            return _row_primitive({k: int(Fraction(c) * den) for k, c in terms.items()})
        p = self.field.p
        return {k: int(c) % p for k, c in terms.items() if int(c) % p}

    def reduce(self, terms: dict) -> dict:
        """Fully reduce a vector against the pivots; result is primitive."""
        row = self._to_int_row(terms)
        if self.field == QQ:
            while row:
                lead = self._lead(row)
                piv = self.pivots.get(lead)
                if piv is None:
                    break
                a, b = piv[lead], row[lead]
                g = gcd(a, b)
                ca, cb = a // g, b // g
                new = {k: c * ca for k, c in row.items()}
                for k, c in piv.items():
                    v = new.get(k, 0) - cb * c
                    if v:
                        new[k] = v
                    else:
                        new.pop(k, None)
                row = _row_primitive(new)
            return row
        p = self.field.p
        while row:
            lead = self._lead(row)
            piv = self.pivots.get(lead)
            if piv is None:
                break
            factor = row[lead] * pow(piv[lead], p - 2, p) % p
            new = dict(row)
            for k, c in piv.items():
                v = (new.get(k, 0) - factor * c) % p
                if v:
                    new[k] = v
                else:
                    new.pop(k, None)
            row = new
        return row

    def insert(self, terms: dict) -> bool:
        row = self.reduce(terms)
        if not row:
            return False
        self.pivots[self._lead(row)] = row
        return True

    def contains(self, terms: dict) -> bool:
        return not self.reduce(terms)

    def insert_poly(self, p: Polynomial) -> bool:
        return self.insert(p.terms)

    def contains_poly(self, p: Polynomial) -> bool:
        return self.contains(p.terms)

    def basis_rows(self) -> list:
        return [self.pivots[k] for k in sorted(self.pivots, key=self.keyfn, reverse=True)]


def span_dimension(polys: Sequence[Polynomial], field=None) -> int:
    """Dimension of the k-linear span of a family of polynomials."""
    span = SpanEchelon(field or (polys[0].field if polys else QQ))
    for p in polys:
        span.insert(p.terms)
    return span.dim


def gauss_rank(rows: Sequence[Sequence], field=QQ) -> int:
    """Exact rank of a dense matrix given as rows of field elements."""
    mat = [[field.coerce(c) for c in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    col = 0
    zero = field.zero()
    while rank < len(mat) and col < ncols:
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != zero:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = field.inv(mat[rank][col])
        mat[rank] = [field.mul(c, inv) for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != zero:
                factor = mat[r][col]
                mat[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def nullspace(rows: Sequence[Sequence], ncols: int, field=QQ) -> list:
    """Basis of the right nullspace of the matrix, reduced row echelon based.

    Returns vectors normalized with leading free coordinate 1, ordered by the
    free-column index, so the output is deterministic.
    """
    mat = [[field.coerce(c) for c in row] for row in rows]
    zero = field.zero()
    one = field.one()
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != zero:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = field.inv(mat[rank][col])
        mat[rank] = [field.mul(c, inv) for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != zero:
                factor = mat[r][col]
                mat[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for r, pcol in enumerate(pivots):
            coeff = mat[r][free]
            if coeff != zero:
                vec[pcol] = field.neg(coeff)
        basis.append(vec)
    return basis


def solve_consistent(rows: Sequence[Sequence], rhs: Sequence, field=QQ):
    """Solve A x = b for a consistent (possibly overdetermined) system.

    Returns the solution with free coordinates set to zero, or None if the
    system is inconsistent.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [[field.coerce(c) for c in row] + [field.coerce(b)] for row, b in zip(rows, rhs)]
    zero = field.zero()
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != zero:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = field.inv(mat[rank][col])
        mat[rank] = [field.mul(c, inv) for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != zero:
                factor = mat[r][col]
                mat[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(mat)):
        if mat[r][ncols] != zero:
            return None
    sol = [zero] * ncols
    for r, col in enumerate(pivots):
        sol[col] = mat[r][ncols]
    return sol


def poly_divide_exact(p: Polynomial, f: Polynomial) -> Polynomial:
    """Exact quotient p / f; raises if f does not divide p."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    fld = p.field
    quotient = Polynomial.zero(fld, p.nvars)
    rem = p
    f_lm, f_lc = f.initial_term(DEGREVLEX)
    while not rem.is_zero():
        lm, lc = rem.initial_term(DEGREVLEX)
        if not all(a >= b for a, b in zip(lm, f_lm)):
            raise ArithmeticError("inexact polynomial division")
        mono = tuple(a - b for a, b in zip(lm, f_lm))
        coeff = fld.mul(lc, fld.inv(f_lc))
        quotient = quotient + Polynomial(fld, p.nvars, {mono: coeff})
        rem = rem - f.mul_term(mono, coeff)
    return quotient


def poly_matrix_rank(matrix: Sequence[Sequence[Polynomial]]) -> int:
    """Rank over the fraction field of a matrix of polynomials.

    Bareiss fraction-free elimination: every division is by the previous
    pivot and is exact in the polynomial ring.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    if ncols == 0:
        return 0
    sample = rows[0][0]
    one = Polynomial.one(sample.field, sample.nvars)
    prev = one
    rank = 0
    for col in range(ncols):
        if rank >= nrows:
            break
        piv = None
        for r in range(rank, nrows):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, nrows):
            if all(rows[r][c].is_zero() for c in range(col, ncols)):
                continue
            for c in range(ncols):
                if c == col:
                    continue
                num = pivot * rows[r][c] - rows[r][col] * rows[rank][c]
                rows[r][c] = num if prev == one else poly_divide_exact(num, prev)
            rows[r][col] = Polynomial.zero(sample.field, sample.nvars)
        prev = pivot
        rank += 1
    return rank
