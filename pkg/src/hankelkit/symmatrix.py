"""Symbolic matrices with Hankel/degeneration builders, exact determinants,
cofactors, minors, and the block partitions used by the gradient analysis.

Matrices are immutable; all indices in the public API are 1-based to match
the usual matrix conventions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Sequence

from .linalg import SpanEchelon
from .polyring import (
    DEGREVLEX,
    QQ,
    ArityMismatchError,
    IndexRangeError,
    PolyError,
    Polynomial,
    RingMap,
    parse_polynomial,
)


class MatrixShapeError(PolyError):
    pass


@dataclass(frozen=True)
class HankelSpec:
    """A (possibly degenerated) Hankel matrix shape.

    ``rows x cols`` with entry (i, j) = x_{i+j-1} while i+j-1 <= nvars and 0
    beyond; ``zeros`` counts the trailing anti-diagonals replaced by zero, so
    nvars = rows + cols - 1 - zeros.
    """

    rows: int
    cols: int
    zeros: int = 0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise MatrixShapeError("matrix sides must be positive")
        # nvars >= min side keeps the main anti-diagonal product nonzero;
        # square determinant users additionally restrict to zeros <= m-2
        if not 0 <= self.zeros <= max(self.rows, self.cols) - 1:
            raise MatrixShapeError(
                f"zeros={self.zeros} leaves no nonzero anti-diagonal product "
                f"in a {self.rows}x{self.cols} Hankel matrix")

    @property
    def nvars(self) -> int:
        return self.rows + self.cols - 1 - self.zeros


class SymMatrix:
    """A rows x cols matrix of polynomials over one ring."""

    __slots__ = ("rows", "cols", "entries", "field", "nvars")

    def __init__(self, rows: int, cols: int, entries: Sequence[Polynomial]):
        if rows < 1 or cols < 1:
            raise MatrixShapeError("matrix sides must be positive")
        if len(entries) != rows * cols:
            raise MatrixShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries")
        field = entries[0].field
        nvars = entries[0].nvars
        for e in entries:
            if e.field != field or e.nvars != nvars:
                raise ArityMismatchError("matrix entries live in different rings")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)
        self.field = field
        self.nvars = nvars

    def at(self, i: int, j: int) -> Polynomial:
        """Entry in row i, column j (1-based)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexRangeError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return self.entries[(i - 1) * self.cols + (j - 1)]

    def row(self, i: int) -> tuple:
        return tuple(self.at(i, j) for j in range(1, self.cols + 1))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.at(i, j) == self.at(j, i)
            for i in range(1, self.rows + 1) for j in range(i + 1, self.cols + 1))

    def transpose(self) -> "SymMatrix":
        return SymMatrix(self.cols, self.rows,
                         [self.at(i, j) for j in range(1, self.cols + 1)
                          for i in range(1, self.rows + 1)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SymMatrix":
        return SymMatrix(len(rows), len(cols),
                         [self.at(i, j) for i in rows for j in cols])

    def swap_rows(self, a: int, b: int) -> "SymMatrix":
        order = list(range(1, self.rows + 1))
        order[a - 1], order[b - 1] = order[b - 1], order[a - 1]
        return self.submatrix(order, range(1, self.cols + 1))

    def map_entries(self, fn: Callable[[Polynomial], Polynomial]) -> "SymMatrix":
        return SymMatrix(self.rows, self.cols, [fn(e) for e in self.entries])

    def apply_map(self, rmap: RingMap) -> "SymMatrix":
        return self.map_entries(rmap.apply)

    def mul(self, other: "SymMatrix") -> "SymMatrix":
        if self.cols != other.rows:
            raise MatrixShapeError("inner dimensions differ")
        out = []
        for i in range(1, self.rows + 1):
            for j in range(1, other.cols + 1):
                acc = Polynomial.zero(self.field, self.nvars)
                for k in range(1, self.cols + 1):
                    acc = acc + self.at(i, k) * other.at(k, j)
                out.append(acc)
        return SymMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return (isinstance(other, SymMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    # -- determinants -----------------------------------------------------------

    def determinant(self) -> Polynomial:
        """Exact determinant by memoized expansion over column subsets.

        Row k is expanded against every k-subset of columns, giving 2^n
        subproblems instead of n! cofactor paths; entries that are zero are
        skipped, which matters for the degenerated matrices.
        """
        if not self.is_square():
            raise MatrixShapeError("determinant of a non-square matrix")
        n = self.rows
        zero = Polynomial.zero(self.field, self.nvars)
        memo: dict = {(): Polynomial.one(self.field, self.nvars)}
        for size in range(1, n + 1):
            for cols in combinations(range(1, n + 1), size):
                acc = zero
                for pos, j in enumerate(cols):
                    e = self.at(size, j)
                    if e.is_zero():
                        continue
                    rest = cols[:pos] + cols[pos + 1:]
                    term = e * memo[rest]
                    # expansion along row `size`: sign (-1)^(size + pos + 1), pos 0-based
                    acc = acc + term if (size + pos) % 2 == 1 else acc - term
                memo[cols] = acc
        return memo[tuple(range(1, n + 1))]

    def determinant_perm_oracle(self) -> Polynomial:
        """Permutation-sum determinant; independent cross-check for n <= 5."""
        if not self.is_square():
            raise MatrixShapeError("determinant of a non-square matrix")
        n = self.rows
        if n > 6:
            raise MatrixShapeError("permutation oracle limited to n <= 6")
        total = Polynomial.zero(self.field, self.nvars)
        for perm in permutations(range(1, n + 1)):
            inversions = sum(1 for a in range(n) for b in range(a + 1, n)
                             if perm[a] > perm[b])
            prod = Polynomial.one(self.field, self.nvars)
            dead = False
            for i, j in enumerate(perm, start=1):
                e = self.at(i, j)
                if e.is_zero():
                    dead = True
                    break
                prod = prod * e
            if dead:
                continue
            total = total + prod if inversions % 2 == 0 else total - prod
        return total

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        return self.submatrix(sorted(rows), sorted(cols)).determinant()

    def cofactor(self, i: int, j: int) -> Polynomial:
        """(-1)^(i+j) times the determinant with row i and column j deleted."""
        if not self.is_square():
            raise MatrixShapeError("cofactor of a non-square matrix")
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexRangeError(f"cofactor index ({i},{j}) out of range")
        if self.rows == 1:
            return Polynomial.one(self.field, self.nvars)
        rows = [r for r in range(1, self.rows + 1) if r != i]
        cols = [c for c in range(1, self.cols + 1) if c != j]
        d = self.submatrix(rows, cols).determinant()
        return d if (i + j) % 2 == 0 else -d

    def adjugate(self) -> "SymMatrix":
        """The matrix satisfying adjugate(M) * M = det(M) * I."""
        if not self.is_square():
            raise MatrixShapeError("adjugate of a non-square matrix")
        n = self.rows
        return SymMatrix(n, n, [self.cofactor(j, i)
                                for i in range(1, n + 1) for j in range(1, n + 1)])

    def delta(self, i: int, j: int) -> Polynomial:
        """Signed cofactor of the (j, i) entry; equals adjugate()[i, j]."""
        return self.cofactor(j, i)

    def minors(self, t: int) -> list:
        """All t x t minors with (row-set, col-set) metadata, lexicographic order."""
        if not 1 <= t <= min(self.rows, self.cols):
            raise IndexRangeError(f"minor size {t} out of range")
        out = []
        for rows in combinations(range(1, self.rows + 1), t):
            for cols in combinations(range(1, self.cols + 1), t):
                out.append(Minor(rows, cols, self.submatrix(rows, cols).determinant()))
        return out

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> str:
        grid = [[self.at(i, j).to_string() for j in range(1, self.cols + 1)]
                for i in range(1, self.rows + 1)]
        return json.dumps(grid)

    @classmethod
    def from_json(cls, text: str, field, nvars: int) -> "SymMatrix":
        grid = json.loads(text)
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        entries = [parse_polynomial(cell, field, nvars) for row in grid for cell in row]
        return cls(rows, cols, entries)

    def __repr__(self):
        return f"SymMatrix({self.rows}x{self.cols}, {self.nvars} vars)"


@dataclass(frozen=True)
class Minor:
    rows: tuple
    cols: tuple
    value: Polynomial


def hankel(spec: HankelSpec, field=QQ) -> SymMatrix:
    """The Hankel matrix of the given shape: entry (i, j) = x_{i+j-1}, with the
    last ``spec.zeros`` anti-diagonals replaced by zero."""
    n = spec.nvars
    entries = []
    for i in range(1, spec.rows + 1):
        for j in range(1, spec.cols + 1):
            k = i + j - 1
            if k <= n:
                entries.append(Polynomial.variable(field, n, k))
            else:
                entries.append(Polynomial.zero(field, n))
    return SymMatrix(spec.rows, spec.cols, entries)


def hankel_square(m: int, r: int = 0, field=QQ) -> SymMatrix:
    """The square degeneration of order m with r zeroed anti-diagonals."""
    return hankel(HankelSpec(m, m, r), field)


def phi_endomorphism(m: int, r: int, field=QQ) -> RingMap:
    """The degeneration endomorphism of k[x_1..x_{2m-1}] that kills exactly the
    variables absent from the order-m degeneration with r zeros, i.e. x_i -> 0
    for i > 2m-1-r and x_i -> x_i otherwise."""
    if not 0 <= r <= m - 1:
        raise IndexRangeError(f"r={r} out of range for m={m}")
    nvars = 2 * m - 1
    dead = range(2 * m - r, 2 * m)
    return RingMap.kill_variables(field, nvars, dead)


def hankel_degeneration(m: int, r: int, field=QQ) -> SymMatrix:
    """Build the square degeneration both directly and through the generic
    matrix plus the kill map, compare, and return it (a standing self-test)."""
    direct = hankel_square(m, r, field)
    generic = hankel_square(m, 0, field)
    phi = phi_endomorphism(m, r, field)
    via_phi = generic.apply_map(phi).map_entries(lambda p: p.restrict_nvars(2 * m - 1 - r))
    if via_phi != direct:
        raise AssertionError(f"degeneration self-test failed at m={m}, r={r}")
    return direct


@dataclass
class GPReport:
    """Result of the maximal-minor transfer check I_t(H_{s,.}[r]) = I_t(H_{t,.}[r])."""

    s: int
    t: int
    n: int
    r: int
    equal: bool
    span_dims: tuple
    counts: tuple

    def as_dict(self) -> dict:
        return {
            "s": self.s, "t": self.t, "n": self.n, "r": self.r,
            "equal": self.equal,
            "span_dims": list(self.span_dims),
            "generator_counts": list(self.counts),
        }


def gruson_peskine_check(s: int, t_size: int, n: int, r: int, field=QQ,
                         budget=None) -> GPReport:
    """Verify that the t-minors of the s-rowed and t-rowed Hankel shapes on the
    same variables generate the same ideal: Groebner mutual membership, with
    the equality of coefficient spans as a second, independent route."""
    from . import groebner

    if t_size > s:
        raise IndexRangeError("t must be at most s")
    big = hankel(HankelSpec(s, n - s + 1, r), field)
    small = hankel(HankelSpec(t_size, n - t_size + 1, r), field)
    if big.nvars != small.nvars:
        raise MatrixShapeError("shapes do not share a variable set")
    gens_big = [mn.value for mn in big.minors(t_size)]
    gens_small = [mn.value for mn in small.minors(t_size)]
    ideal_big = groebner.Ideal(field, big.nvars, gens_big)
    ideal_small = groebner.Ideal(field, small.nvars, gens_small)
    equal = groebner.ideal_equal(ideal_big, ideal_small, budget=budget)
    span_big = SpanEchelon(field)
    for g in gens_big:
        span_big.insert(g.terms)
    span_small = SpanEchelon(field)
    for g in gens_small:
        span_small.insert(g.terms)
    spans_match = (span_big.dim == span_small.dim
                   and all(span_big.contains(g.terms) for g in gens_small))
    if equal != spans_match:
        raise AssertionError(
            f"Groebner and span routes disagree for s={s}, t={t_size}, n={n}, r={r}")
    return GPReport(s, t_size, n, r, equal,
                    (span_big.dim, span_small.dim),
                    (len(ideal_big.generators), len(ideal_small.generators)))


@dataclass
class BlockPartition:
    """Row blocks of the degeneration and matching blocks of its adjugate:
    H = [U over D], adj(H) = [[A, B], [B^t, C]], with A square of size m-j."""

    m: int
    r: int
    j: int
    upper: SymMatrix      # U, (m-j) x m
    lower: SymMatrix      # D, j x m
    adj_a: SymMatrix      # A, (m-j) x (m-j)
    adj_b: SymMatrix      # B, (m-j) x j
    adj_c: SymMatrix      # C, j x j


def block_partition(m: int, r: int, j: int, field=QQ) -> BlockPartition:
    if not 1 <= j <= m - 2:
        raise IndexRangeError(f"j={j} outside 1..{m - 2}")
    h = hankel_square(m, r, field)
    adj = h.adjugate()
    top = list(range(1, m - j + 1))
    bottom = list(range(m - j + 1, m + 1))
    full = list(range(1, m + 1))
    return BlockPartition(
        m, r, j,
        upper=h.submatrix(top, full),
        lower=h.submatrix(bottom, full),
        adj_a=adj.submatrix(top, top),
        adj_b=adj.submatrix(top, bottom),
        adj_c=adj.submatrix(bottom, bottom),
    )
