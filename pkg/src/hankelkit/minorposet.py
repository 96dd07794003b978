"""The poset of maximal minors of the (m-1) x (m+1) Hankel matrix: bracket
combinatorics, level structure, the derivative-level decomposition, three-term
bracket relations, and the special-fiber kernel comparisons.

A bracket is a strictly increasing (m-1)-subset of {1..m+1}, the column set of
a maximal minor.  Its normalized level is l' = (sum of entries) - C(m,2) + 1,
which runs over 1..2m-1 and pairs with the partial derivative f_{2m-l'}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Optional

from . import groebner
from .groebner import BudgetExceededError, GBBudget
from .linalg import SpanEchelon, solve_consistent
from .polyring import DEGREVLEX, IndexRangeError, PolyError, Polynomial, QQ
from .symmatrix import HankelSpec, SymMatrix, hankel, hankel_square

Bracket = tuple


def brackets(m: int) -> list:
    """All brackets for order m, in lexicographic order."""
    return [tuple(c) for c in combinations(range(1, m + 2), m - 1)]


def bracket_level(b: Bracket, m: int) -> int:
    return sum(b) - m * (m - 1) // 2 + 1


@dataclass
class MinorPoset:
    m: int
    nodes: list                 # brackets, lexicographic
    upper_covers: dict          # bracket -> tuple of brackets
    levels: dict                # bracket -> normalized level

    def level_members(self, level: int) -> list:
        return [b for b in self.nodes if self.levels[b] == level]

    def level_sizes(self) -> list:
        top = 2 * self.m - 1
        return [len(self.level_members(l)) for l in range(1, top + 1)]

    def lower_covers(self, b: Bracket) -> list:
        return [a for a in self.nodes if b in self.upper_covers[a]]

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "nodes": [list(b) for b in self.nodes],
            "levels": {"".join(map(str, b)): self.levels[b] for b in self.nodes},
            "edges": [[list(a), list(b)] for a in self.nodes
                      for b in self.upper_covers[a]],
        }


def build_poset(m: int) -> MinorPoset:
    """Brackets under the componentwise order; covers bump one index by 1."""
    if m < 2:
        raise IndexRangeError("poset needs m >= 2")
    nodes = brackets(m)
    node_set = set(nodes)
    covers = {}
    for b in nodes:
        ups = []
        for pos in range(len(b)):
            cand = b[:pos] + (b[pos] + 1,) + b[pos + 1:]
            if cand in node_set:
                ups.append(cand)
        covers[b] = tuple(sorted(ups))
    levels = {b: bracket_level(b, m) for b in nodes}
    poset = MinorPoset(m, nodes, covers, levels)
    # cover rule sanity: bumping one slot is exactly the Hasse relation of
    # the componentwise order on increasing tuples
    for a in nodes:
        for b in covers[a]:
            assert all(x <= y for x, y in zip(a, b)) and sum(b) == sum(a) + 1
    return poset


def hankel_bracket_minors(m: int, r: int = 0, field=QQ) -> dict:
    """Bracket -> maximal minor of the (m-1) x (m+1) Hankel degeneration."""
    h = hankel(HankelSpec(m - 1, m + 1, r), field)
    rows = tuple(range(1, m))
    return {b: h.submatrix(rows, b).determinant() for b in brackets(m)}


def generic_bracket_minors(m: int, field=QQ) -> dict:
    """Bracket -> maximal minor of the fully generic (m-1) x (m+1) matrix."""
    rows, cols = m - 1, m + 1
    n = rows * cols
    entries = [Polynomial.variable(field, n, (u - 1) * cols + v)
               for u in range(1, rows + 1) for v in range(1, cols + 1)]
    g = SymMatrix(rows, cols, entries)
    rr = tuple(range(1, rows + 1))
    return {b: g.submatrix(rr, b).determinant() for b in brackets(m)}


class LevelDecompositionError(PolyError):
    pass


@dataclass
class LevelDecomposition:
    m: int
    coefficients: dict          # k -> {bracket: Fraction}
    reproduces: bool

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "coefficients": {
                str(k): {"".join(map(str, b)): str(c) for b, c in row.items()}
                for k, row in self.coefficients.items()
            },
            "reproduces": self.reproduces,
        }


def derivative_level_decomposition(m: int, field=QQ) -> LevelDecomposition:
    """Exact coefficients c_B with f_k = sum c_B [B] over the level-(2m-k)
    brackets, solved on monomial coefficients; the solved expansion is
    re-checked symbolically."""
    if m < 2:
        raise IndexRangeError("decomposition needs m >= 2")
    minors = hankel_bracket_minors(m, 0, field)
    f = hankel_square(m, 0, field).determinant()
    n = 2 * m - 1
    coefficients = {}
    ok = True
    for k in range(1, n + 1):
        fk = f.derivative(k)
        level = 2 * m - k
        members = [b for b in brackets(m) if bracket_level(b, m) == level]
        monomials = set(fk.terms)
        for b in members:
            monomials.update(minors[b].terms)
        monomials = sorted(monomials)
        rows = [[minors[b].terms.get(mu, field.zero()) for b in members]
                for mu in monomials]
        rhs = [fk.terms.get(mu, field.zero()) for mu in monomials]
        sol = solve_consistent(rows, rhs, field)
        if sol is None:
            raise LevelDecompositionError(
                f"f_{k} is not a combination of the level-{level} brackets")
        coefficients[k] = {b: c for b, c in zip(members, sol)}
        total = Polynomial.zero(field, n)
        for b, c in coefficients[k].items():
            total = total + minors[b].scale(c)
        if total != fk:
            ok = False
    return LevelDecomposition(m, coefficients, ok)


@dataclass
class BracketRelation:
    """A three-term quadratic relation among brackets: sum of coeff * [a][b]."""

    terms: tuple                # ((coeff, bracketA, bracketB), ...)

    def substitute(self, minors: dict, field=QQ) -> Polynomial:
        sample = next(iter(minors.values()))
        total = Polynomial.zero(field, sample.nvars)
        for coeff, a, b in self.terms:
            total = total + (minors[a] * minors[b]).scale(coeff)
        return total

    def tag_polynomial(self, m: int, field=QQ) -> Polynomial:
        tags = {b: i for i, b in enumerate(brackets(m), start=1)}
        n = len(tags)
        total = Polynomial.zero(field, n)
        for coeff, a, b in self.terms:
            term = Polynomial.variable(field, n, tags[a]) * Polynomial.variable(field, n, tags[b])
            total = total + term.scale(coeff)
        return total

    def to_string(self) -> str:
        bits = []
        for coeff, a, b in self.terms:
            c = Fraction(coeff)
            sign = "-" if c < 0 else ("+" if bits else "")
            mag = abs(c)
            prefix = "" if mag == 1 else f"{mag}*"
            bits.append(f"{sign}{prefix}[{''.join(map(str, a))}][{''.join(map(str, b))}]")
        return "".join(bits)


def _complement_bracket(pair: tuple, m: int) -> Bracket:
    return tuple(i for i in range(1, m + 2) if i not in pair)


def pluecker_relations(m: int, field=QQ) -> list:
    """All three-term relations: one per 4-subset of the columns, with the
    signs solved against the generic minors and re-verified on the Hankel
    minors.  Each relation's terms pair brackets sharing m-3 indices."""
    if m < 3:
        raise IndexRangeError("relations need m >= 3")
    generic = generic_bracket_minors(m, field)
    hank = hankel_bracket_minors(m, 0, field)
    relations = []
    for quad in combinations(range(1, m + 2), 4):
        a, b, c, d = quad
        pairs = [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]
        products = []
        for p, q in pairs:
            ba, bb = _complement_bracket(p, m), _complement_bracket(q, m)
            products.append((ba, bb, generic[ba] * generic[bb]))
        solution = None
        for s2 in (1, -1):
            for s3 in (1, -1):
                total = products[0][2] + products[1][2].scale(s2) + products[2][2].scale(s3)
                if total.is_zero():
                    solution = (1, s2, s3)
                    break
            if solution:
                break
        if solution is None:
            raise AssertionError(f"no sign choice kills the relation for columns {quad}")
        rel = BracketRelation(tuple(
            (Fraction(s), ba, bb)
            for s, (ba, bb, _) in zip(solution, products)))
        if not rel.substitute(hank, field).is_zero():
            raise AssertionError(f"relation for columns {quad} fails on Hankel minors")
        relations.append(rel)
    return relations


def pluecker_relations_vanish_on_degeneration(m: int, r: int, field=QQ) -> bool:
    minors = hankel_bracket_minors(m, r, field)
    return all(rel.substitute(minors, field).is_zero()
               for rel in pluecker_relations(m, field))


@dataclass
class StepIdentityReport:
    m: int
    delta: Bracket
    delta_prime: Bracket
    lam: Fraction               # coefficient of delta in f_{2m-3}
    mu: Fraction                # coefficient of delta_prime in f_{2m-3}
    c1: Fraction                # 1/2-sized coefficient in the product relation
    c2: Fraction
    product_identity: bool      # Delta Delta' = c1 [..] f_{2m-2} + c2 [..] f_{2m-1}
    square_identity: bool       # Delta^2 rewritten into (f) k[brackets]
    displayed_m3_identity: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "delta": list(self.delta),
            "delta_prime": list(self.delta_prime),
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "c1": str(self.c1),
            "c2": str(self.c2),
            "product_identity": self.product_identity,
            "square_identity": self.square_identity,
            "displayed_m3_identity": self.displayed_m3_identity,
        }


def pluecker_step_identities(m: int, field=QQ) -> StepIdentityReport:
    """The central-level product relation and the integral-dependence
    bookkeeping that puts Delta^2 into (gradient) k[brackets].

    Delta = [1..m-3, m-1, m] and Delta' = [1..m-2, m+1] are the two brackets
    of level 3; f_{2m-3} = lambda Delta + mu Delta'.  The product relation
    Delta Delta' = c1 [1..m-3, m-1, m+1] f_{2m-2} + c2 [1..m-3, m, m+1] f_{2m-1}
    is solved exactly (|c1| = 1/2, |c2| = 1), and then
    Delta^2 = (1/lambda) (Delta f_{2m-3} - mu Delta Delta') is expanded through
    it and verified symbolically.
    """
    if m < 3:
        raise IndexRangeError("step identities need m >= 3")
    minors = hankel_bracket_minors(m, 0, field)
    f = hankel_square(m, 0, field).determinant()
    prefix = tuple(range(1, m - 2))
    delta = prefix + (m - 1, m)
    delta_p = tuple(range(1, m - 1)) + (m + 1,)
    f3 = f.derivative(2 * m - 3)
    f2 = f.derivative(2 * m - 2)
    f1 = f.derivative(2 * m - 1)
    decomp = derivative_level_decomposition(m, field)
    row = decomp.coefficients[2 * m - 3]
    lam = Fraction(row[delta])
    mu = Fraction(row[delta_p])
    bracket_a = prefix + (m - 1, m + 1)
    bracket_b = prefix + (m, m + 1)
    lhs = minors[delta] * minors[delta_p]
    term_a = minors[bracket_a] * f2
    term_b = minors[bracket_b] * f1
    monos = sorted(set(lhs.terms) | set(term_a.terms) | set(term_b.terms))
    rows = [[term_a.terms.get(mu_, field.zero()), term_b.terms.get(mu_, field.zero())]
            for mu_ in monos]
    rhs = [lhs.terms.get(mu_, field.zero()) for mu_ in monos]
    sol = solve_consistent(rows, rhs, field)
    product_ok = sol is not None
    c1 = Fraction(sol[0]) if sol else Fraction(0)
    c2 = Fraction(sol[1]) if sol else Fraction(0)
    if product_ok:
        product_ok = (abs(c1) == Fraction(1, 2) and abs(c2) == 1)
    # Delta^2 = (1/lam) Delta f_{2m-3} - (mu/lam) (c1 [..] f_{2m-2} + c2 [..] f_{2m-1})
    square_ok = False
    if product_ok and lam != 0:
        reconstructed = (minors[delta] * f3).scale(Fraction(1, 1) / lam) \
            - term_a.scale(mu * c1 / lam) - term_b.scale(mu * c2 / lam)
        square_ok = reconstructed == minors[delta] * minors[delta]
    displayed = None
    if m == 3:
        # the displayed equation carries 1/3 in place of 1/lambda; exact at m=3
        d2 = minors[delta] * minors[delta]
        lin = minors[delta].scale(lam) + minors[delta_p]
        displayed = (d2 - (minors[delta] * lin).scale(Fraction(1, 3))
                     + (minors[delta] * minors[delta_p]).scale(Fraction(1, 1) / lam)).is_zero()
    return StepIdentityReport(m, delta, delta_p, lam, mu, c1, c2,
                              product_ok, square_ok, displayed)


@dataclass
class FiberKernelReport:
    m: int
    r: int
    tags: int
    kernel_generators: Optional[list]   # strings, None when over budget
    generator_degrees: Optional[dict]
    quadric_relations: int
    cubic_relations: int
    new_cubic_generators: int
    kernels_equal: Optional[bool]       # r = 0 comparison with the generic side
    verdict: str

    def as_dict(self) -> dict:
        return {
            "m": self.m, "r": self.r, "tags": self.tags,
            "kernel_generators": self.kernel_generators,
            "generator_degrees": self.generator_degrees,
            "quadric_relations": self.quadric_relations,
            "cubic_relations": self.cubic_relations,
            "new_cubic_generators": self.new_cubic_generators,
            "kernels_equal": self.kernels_equal,
            "verdict": self.verdict,
        }


def _relation_space(minor_list: list, degree: int, field=QQ) -> list:
    """Exact basis of the degree-d part of the kernel of t_i -> minor_i,
    as vectors over the degree-d tag monomials (combination order)."""
    combos = list(combinations_with_replacement(range(len(minor_list)), degree))
    products = []
    for combo in combos:
        prod = minor_list[combo[0]]
        for idx in combo[1:]:
            prod = prod * minor_list[idx]
        products.append(prod)
    monomials = sorted(set().union(*[set(p.terms) for p in products]))
    rows = [[p.terms.get(mu, field.zero()) for p in products] for mu in monomials]
    from .linalg import nullspace
    return nullspace(rows, len(combos), field), combos


def fiber_kernel_compare(m: int, r: int, field=QQ,
                         budget: Optional[GBBudget] = None, cache=None,
                         scan_only: bool = False) -> FiberKernelReport:
    """Defining relations of the algebra generated by the maximal minors of
    the (m-1) x (m+1) degeneration.

    The full kernel goes through elimination (budget-aware); independently an
    exact linear-algebra scan finds the relation spaces in degrees 2 and 3 and
    the count of minimal cubic generators (cubic relations not of the form
    linear * quadric).  At r = 0 the kernel is compared with the generic
    (m-1) x (m+1) matrix's bracket kernel.
    """
    if m < 3:
        raise IndexRangeError("fiber comparison needs m >= 3")
    if not 0 <= r <= m - 2:
        raise IndexRangeError(f"r={r} outside 0..{m - 2}")
    bracket_list = brackets(m)
    minors = hankel_bracket_minors(m, r, field)
    minor_list = [minors[b] for b in bracket_list]
    tags = len(bracket_list)

    (quad_kernel, quad_combos) = _relation_space(minor_list, 2, field)
    (cubic_kernel, cubic_combos) = _relation_space(minor_list, 3, field)
    # minimal cubics: cubic kernel modulo tag * quadric-kernel
    trivial = SpanEchelon(field, keyfn=lambda k: k)
    for vec in quad_kernel:
        for t in range(tags):
            lifted = {}
            for combo, coeff in zip(quad_combos, vec):
                if coeff == field.zero():
                    continue
                key = tuple(sorted(combo + (t,)))
                lifted[key] = field.add(lifted.get(key, field.zero()), coeff)
            lifted = {k: v for k, v in lifted.items() if v != field.zero()}
            if lifted:
                trivial.insert(lifted)
    cubic_span = SpanEchelon(field, keyfn=lambda k: k)
    new_cubics = 0
    for vec in cubic_kernel:
        terms = {combo: c for combo, c in zip(cubic_combos, vec) if c != field.zero()}
        reduced = trivial.reduce(terms)
        if reduced and cubic_span.insert(reduced):
            new_cubics += 1

    kernel_gens = None
    degrees = None
    kernels_equal = None
    verdict = "pass"
    if not scan_only:
        try:
            kernel = groebner.kernel_of_algebra_map(minor_list, budget, cache)
            kernel_gens = [g.to_string() for g in kernel.generators]
            degrees = {}
            for g in kernel.generators:
                degrees[g.total_degree()] = degrees.get(g.total_degree(), 0) + 1
            degrees = {str(k): v for k, v in sorted(degrees.items())}
            # the elimination route must agree with the exact scan: reduced
            # basis elements of degree 2 span the quadric relation space
            if degrees.get("2", 0) != len(quad_kernel):
                raise AssertionError(
                    "elimination and relation-scan quadric counts disagree")
            if r == 0:
                generic = generic_bracket_minors(m, field)
                generic_kernel = groebner.kernel_of_algebra_map(
                    [generic[b] for b in bracket_list], budget, cache)
                kernels_equal = groebner.ideal_equal(kernel, generic_kernel,
                                                     DEGREVLEX, budget, cache)
        except BudgetExceededError:
            verdict = "budget-exceeded"
    return FiberKernelReport(m, r, tags, kernel_gens, degrees,
                             len(quad_kernel), len(cubic_kernel), new_cubics,
                             kernels_equal, verdict)
