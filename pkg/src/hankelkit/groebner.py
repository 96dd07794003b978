"""Exact Groebner-basis engine over QQ and GF(p).

Supplies reduced bases (Buchberger with the coprime and chain criteria),
normal forms, Krull dimension via the initial ideal, elimination,
intersection-based ideal quotients, radical membership, kernels of algebra
maps, linear syzygies, and reduction-number checks.

Over QQ every intermediate polynomial is kept integer and primitive; leading
coefficients are only normalized in the final reduced basis.  Budgets make
resource exhaustion a first-class outcome instead of a crash.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .linalg import SpanEchelon, nullspace, poly_divide_exact, poly_matrix_rank
from .polyring import (
    BlockOrder,
    DEGREVLEX,
    MonomialOrder,
    PolyError,
    Polynomial,
    QQ,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class BudgetExceededError(Exception):
    """A Groebner computation ran over its configured budget."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"budget exceeded: {what} > {limit}")
        self.what = what
        self.limit = limit


@dataclass(frozen=True)
class GBBudget:
    """Caps for one basis computation."""

    max_pairs: int = 200_000
    max_basis: int = 5_000
    max_terms: int = 2_000_000


DEFAULT_BUDGET = GBBudget()

_default_cache = None


def set_default_cache(cache) -> None:
    """Install a process-wide basis cache (see hankelkit.cache)."""
    global _default_cache
    _default_cache = cache


class Ideal:
    """An ordered generator list over one ring.

    Generators are nonzero, deduplicated and, over QQ, integer-primitive with
    a positive leading coefficient, so the generator list is canonical given
    the caller's order.
    """

    __slots__ = ("field", "nvars", "generators")

    def __init__(self, field, nvars: int, generators: Sequence[Polynomial]):
        seen = set()
        gens = []
        for g in generators:
            if g.field != field or g.nvars != nvars:
                raise PolyError("generator outside the ideal's ring")
            if g.is_zero():
                continue
            if field == QQ:
                g = g.primitive()
            else:
                g = g.monic()
            key = frozenset(g.terms.items())
            if key in seen:
                continue
            seen.add(key)
            gens.append(g)
        self.field = field
        self.nvars = nvars
        self.generators = tuple(gens)

    def __repr__(self):
        return f"Ideal({self.field!r}, {self.nvars} vars, {len(self.generators)} gens)"

    def degrees(self) -> set:
        return {g.total_degree() for g in self.generators}

    def is_equigenerated(self) -> bool:
        return (len(self.degrees()) == 1
                and all(g.is_homogeneous() for g in self.generators))


@dataclass
class GroebnerBasis:
    field: object
    nvars: int
    order: MonomialOrder
    polys: tuple
    stats: dict = dc_field(default_factory=dict)

    def monic(self) -> list:
        return [p.monic(self.order) for p in self.polys]

    def leading_monomials(self) -> list:
        return [p.leading_monomial(self.order) for p in self.polys]

    def __len__(self):
        return len(self.polys)


# ---------------------------------------------------------------------------
# integer kernel: polynomials as dict[exps -> int], QQ handled integer-primitive,
# GF(p) handled as residues with p > 0

def _strip_content(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = gcd(g, abs(c))
        if g == 1:
            return terms
    if g <= 1:
        return terms
    return {k: c // g for k, c in terms.items()}


def _to_int_terms(p: Polynomial) -> dict:
    if p.field == QQ:
        den = 1
        for c in p.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        return _strip_content({k: int(c * den) for k, c in p.terms.items()})
    return dict(p.terms)


def _from_int_terms(terms: dict, field, nvars: int) -> Polynomial:
    if field == QQ:
        return Polynomial(field, nvars, {k: Fraction(c) for k, c in terms.items()},
                          _trusted=True)
    return Polynomial(field, nvars, dict(terms), _trusted=True)


def _reduce_full(work: dict, basis: list, keyfn, p: int, arena_limit: int) -> dict:
    """Full normal form of ``work`` against ``basis`` entries (lm, lc, terms).

    Over QQ (p == 0) this is pseudo-reduction: the result is a positive scalar
    multiple of the true remainder, returned integer-primitive, which is all
    the callers need (zero-ness and canonical basis construction).
    """
    work = dict(work)
    rem: dict = {}
    steps = 0
    while work:
        if len(work) + len(rem) > arena_limit:
            raise BudgetExceededError("term arena", arena_limit)
        lm = max(work, key=keyfn)
        lc = work.pop(lm)
        hit = None
        for blm, blc, bterms in basis:
            if mono_divides(blm, lm):
                hit = (blm, blc, bterms)
                break
        if hit is None:
            rem[lm] = lc
            continue
        blm, blc, bterms = hit
        shift = mono_div(lm, blm)
        if p:
            factor = lc * pow(blc, p - 2, p) % p
            for k, c in bterms.items():
                if k == blm:
                    continue
                kk = mono_mul(k, shift)
                v = (work.get(kk, 0) - factor * c) % p
                if v:
                    work[kk] = v
                else:
                    work.pop(kk, None)
        else:
            g = gcd(abs(lc), abs(blc))
            a = blc // g
            b = lc // g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for k in work:
                    work[k] *= a
                for k in rem:
                    rem[k] *= a
            for k, c in bterms.items():
                if k == blm:
                    continue
                kk = mono_mul(k, shift)
                v = work.get(kk, 0) - b * c
                if v:
                    work[kk] = v
                else:
                    work.pop(kk, None)
            steps += 1
            if steps % 32 == 0 and rem:
                merged = _strip_content({**rem, **work})
                rem = {k: merged[k] for k in rem}
                work = {k: merged[k] for k in work}
    if p:
        return rem
    return _strip_content(rem)


def _spoly(a, b, keyfn, p: int) -> dict:
    """S-polynomial of two kernel entries (lm, lc, terms)."""
    alm, alc, aterms = a
    blm, blc, bterms = b
    lcm = mono_lcm(alm, blm)
    sa = mono_div(lcm, alm)
    sb = mono_div(lcm, blm)
    out: dict = {}
    if p:
        fb = alc * pow(blc, p - 2, p) % p
        for k, c in aterms.items():
            kk = mono_mul(k, sa)
            out[kk] = c % p
        for k, c in bterms.items():
            kk = mono_mul(k, sb)
            v = (out.get(kk, 0) - fb * c) % p
            if v:
                out[kk] = v
            else:
                out.pop(kk, None)
        return out
    g = gcd(abs(alc), abs(blc))
    ca = blc // g
    cb = alc // g
    for k, c in aterms.items():
        out[mono_mul(k, sa)] = ca * c
    for k, c in bterms.items():
        kk = mono_mul(k, sb)
        v = out.get(kk, 0) - cb * c
        if v:
            out[kk] = v
        else:
            out.pop(kk, None)
    return _strip_content(out)


def _normalize_entry(terms: dict, keyfn, p: int):
    lm = max(terms, key=keyfn)
    if p == 0 and terms[lm] < 0:
        terms = {k: -c for k, c in terms.items()}
    return (lm, terms[lm], terms)


def buchberger(ideal: Ideal, order: MonomialOrder = DEGREVLEX,
               budget: Optional[GBBudget] = None, cache=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal under the given order.

    Deterministic: pair selection by lcm degree then first index, with the
    coprime-leading-term and chain criteria; the reduced basis is unique for
    the order, so results are byte-reproducible and cacheable.
    """
    budget = budget or DEFAULT_BUDGET
    cache = cache if cache is not None else _default_cache
    if cache is not None:
        hit = cache.get(ideal, order)
        if hit is not None:
            return hit
    p = 0 if ideal.field == QQ else ideal.field.p
    keyfn = order.key
    basis: list = []
    for g in ideal.generators:
        terms = _to_int_terms(g)
        if terms:
            basis.append(_normalize_entry(terms, keyfn, p))
    pairs: list = []
    pending = set()

    def push_pairs(new_index: int):
        for i in range(new_index):
            lcm = mono_lcm(basis[i][0], basis[new_index][0])
            heapq.heappush(pairs, (sum(lcm), i, new_index))
            pending.add((i, new_index))

    for idx in range(1, len(basis)):
        push_pairs(idx)

    processed = 0
    term_total = sum(len(b[2]) for b in basis)
    while pairs:
        _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        lm_i, lm_j = basis[i][0], basis[j][0]
        lcm = mono_lcm(lm_i, lm_j)
        if lcm == mono_mul(lm_i, lm_j):
            continue
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_divides(basis[k][0], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceededError("pair reductions", budget.max_pairs)
        s = _spoly(basis[i], basis[j], keyfn, p)
        if not s:
            continue
        nf = _reduce_full(s, basis, keyfn, p, budget.max_terms)
        if not nf:
            continue
        basis.append(_normalize_entry(nf, keyfn, p))
        term_total += len(nf)
        if len(basis) > budget.max_basis:
            raise BudgetExceededError("basis size", budget.max_basis)
        if term_total > budget.max_terms:
            raise BudgetExceededError("term arena", budget.max_terms)
        push_pairs(len(basis) - 1)

    # minimalize: drop entries whose lead is divisible by another surviving lead
    basis.sort(key=lambda e: keyfn(e[0]))
    minimal: list = []
    for entry in basis:
        if not any(mono_divides(other[0], entry[0]) for other in minimal):
            minimal.append(entry)
    # tail-reduce each element against the others for the reduced basis
    reduced = []
    for idx, entry in enumerate(minimal):
        others = [e for k, e in enumerate(minimal) if k != idx]
        nf = _reduce_full(dict(entry[2]), others, keyfn, p, budget.max_terms)
        reduced.append(_normalize_entry(nf, keyfn, p))
    reduced.sort(key=lambda e: keyfn(e[0]))
    polys = []
    for lm, lc, terms in reduced:
        poly = _from_int_terms(terms, ideal.field, ideal.nvars)
        if ideal.field != QQ:
            poly = poly.monic(order)
        polys.append(poly)
    gb = GroebnerBasis(ideal.field, ideal.nvars, order, tuple(polys),
                       {"pairs_processed": processed, "basis_size": len(polys),
                        "from_cache": False})
    if cache is not None:
        cache.put(ideal, order, gb)
    return gb


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of p under multivariate division by the basis; zero iff p is
    in the ideal."""
    if p.field != gb.field or p.nvars != gb.nvars:
        raise PolyError("polynomial outside the basis ring")
    order = gb.order
    fld = p.field
    divisors = [(g.leading_monomial(order), g.initial_term(order)[1], g) for g in gb.polys]
    work = p
    rem = Polynomial.zero(fld, p.nvars)
    while not work.is_zero():
        lm, lc = work.initial_term(order)
        hit = None
        for blm, blc, g in divisors:
            if mono_divides(blm, lm):
                hit = (blm, blc, g)
                break
        if hit is None:
            t = Polynomial(fld, p.nvars, {lm: lc}, _trusted=True)
            rem = rem + t
            work = work - t
            continue
        blm, blc, g = hit
        work = work - g.mul_term(mono_div(lm, blm), fld.mul(lc, fld.inv(blc)))
    return rem


def _nf_is_zero(p: Polynomial, gb: GroebnerBasis, budget: GBBudget) -> bool:
    mod = 0 if gb.field == QQ else gb.field.p
    keyfn = gb.order.key
    basis = [_normalize_entry(_to_int_terms(g), keyfn, mod) for g in gb.polys]
    terms = _to_int_terms(p)
    if not terms:
        return True
    return not _reduce_full(terms, basis, keyfn, mod, budget.max_terms)


def ideal_membership(p: Polynomial, ideal: Ideal, order: MonomialOrder = DEGREVLEX,
                     budget: Optional[GBBudget] = None, cache=None) -> bool:
    gb = buchberger(ideal, order, budget, cache)
    return _nf_is_zero(p, gb, budget or DEFAULT_BUDGET)


def ideal_equal(a: Ideal, b: Ideal, order: MonomialOrder = DEGREVLEX,
                budget: Optional[GBBudget] = None, cache=None) -> bool:
    """Mutual normal-form membership of the generators."""
    if a.field != b.field or a.nvars != b.nvars:
        raise PolyError("ideals live in different rings")
    budget = budget or DEFAULT_BUDGET
    gb_a = buchberger(a, order, budget, cache)
    if not all(_nf_is_zero(g, gb_a, budget) for g in b.generators):
        return False
    gb_b = buchberger(b, order, budget, cache)
    return all(_nf_is_zero(g, gb_b, budget) for g in a.generators)


def dimension(ideal: Ideal, order: MonomialOrder = DEGREVLEX,
              budget: Optional[GBBudget] = None, cache=None) -> int:
    """Krull dimension of R/I, combinatorially from the initial ideal: the
    largest variable subset S such that no leading-term support is inside S."""
    gb = buchberger(ideal, order, budget, cache)
    if any(p.total_degree() == 0 for p in gb.polys):
        return -1
    supports = sorted({frozenset(i for i, e in enumerate(lm) if e)
                       for lm in gb.leading_monomials()}, key=lambda s: (len(s), sorted(s)))
    cover = _min_hitting_set(supports, ideal.nvars)
    return ideal.nvars - cover


def codimension(ideal: Ideal, order: MonomialOrder = DEGREVLEX,
                budget: Optional[GBBudget] = None, cache=None) -> int:
    return ideal.nvars - dimension(ideal, order, budget, cache)


def _min_hitting_set(supports: list, nvars: int) -> int:
    if not supports:
        return 0
    best = nvars

    def search(idx: int, chosen: frozenset):
        nonlocal best
        if len(chosen) >= best:
            return
        while idx < len(supports) and supports[idx] & chosen:
            idx += 1
        if idx == len(supports):
            best = len(chosen)
            return
        for v in sorted(supports[idx]):
            search(idx + 1, chosen | {v})

    search(0, frozenset())
    return best


def elimination(ideal: Ideal, elim_vars: Sequence[int],
                budget: Optional[GBBudget] = None, cache=None) -> Ideal:
    """Generators of I intersected with the subring omitting ``elim_vars``
    (1-based).  The surviving variables keep their relative order."""
    elim = sorted(set(elim_vars))
    if any(not 1 <= v <= ideal.nvars for v in elim):
        raise PolyError("elimination variable out of range")
    rest = [v for v in range(1, ideal.nvars + 1) if v not in elim]
    new_pos = {v: i for i, v in enumerate(elim + rest)}
    k = len(elim)

    def permute(p: Polynomial) -> Polynomial:
        out = {}
        for exps, c in p.terms.items():
            ne = [0] * ideal.nvars
            for v0, e in enumerate(exps):
                ne[new_pos[v0 + 1]] = e
            out[tuple(ne)] = c
        return Polynomial(p.field, ideal.nvars, out, _trusted=True)

    permuted = Ideal(ideal.field, ideal.nvars, [permute(g) for g in ideal.generators])
    gb = buchberger(permuted, BlockOrder(k), budget, cache)
    kept = []
    for g in gb.polys:
        if any(any(exps[:k]) for exps in g.terms):
            continue
        kept.append(Polynomial(g.field, len(rest),
                               {exps[k:]: c for exps, c in g.terms.items()}, _trusted=True))
    return Ideal(ideal.field, len(rest), kept)


def ideal_quotient(ideal: Ideal, f: Polynomial,
                   budget: Optional[GBBudget] = None, cache=None) -> Ideal:
    """(I : f) through the tag-variable intersection I cap (f), then exact
    division by f."""
    if f.is_zero():
        raise PolyError("quotient by the zero polynomial")
    n = ideal.nvars
    fld = ideal.field

    def embed(p: Polynomial) -> Polynomial:
        return Polynomial(fld, n + 1, {(0,) + e: c for e, c in p.terms.items()},
                          _trusted=True)

    t = Polynomial.variable(fld, n + 1, 1)
    gens = [t * embed(g) for g in ideal.generators]
    fe = embed(f)
    gens.append(fe - t * fe)
    inter = elimination(Ideal(fld, n + 1, gens), [1], budget, cache)
    quotients = [poly_divide_exact(h, f) for h in inter.generators]
    return Ideal(fld, n, quotients)


def radical_membership(p: Polynomial, ideal: Ideal,
                       budget: Optional[GBBudget] = None, cache=None) -> bool:
    """True iff some power of p lies in the ideal: 1 in I + (1 - y p)."""
    n = ideal.nvars
    fld = ideal.field
    gens = [g.extend_nvars(n + 1) for g in ideal.generators]
    y = Polynomial.variable(fld, n + 1, n + 1)
    gens.append(Polynomial.one(fld, n + 1) - y * p.extend_nvars(n + 1))
    gb = buchberger(Ideal(fld, n + 1, gens), DEGREVLEX, budget, cache)
    return any(g.total_degree() == 0 for g in gb.polys)


def kernel_of_algebra_map(images: Sequence[Polynomial],
                          budget: Optional[GBBudget] = None, cache=None) -> Ideal:
    """Defining ideal of k[images] inside a tag polynomial ring: eliminate the
    source variables from (t_i - g_i).  Tag variable i corresponds to
    images[i-1]."""
    if not images:
        raise PolyError("empty image list")
    n = images[0].nvars
    fld = images[0].field
    degrees = set()
    for g in images:
        if g.nvars != n or g.field != fld:
            raise PolyError("images live in different rings")
        if not g.is_homogeneous() or g.is_zero():
            raise PolyError("images must be homogeneous and nonzero")
        degrees.add(g.total_degree())
    if len(degrees) != 1:
        raise PolyError("images must share one degree")
    s = len(images)
    big = n + s
    gens = []
    for i, g in enumerate(images, start=1):
        t_i = Polynomial.variable(fld, big, n + i)
        embedded = Polynomial(fld, big, {e + (0,) * s: c for e, c in g.terms.items()},
                              _trusted=True)
        gens.append(t_i - embedded)
    return elimination(Ideal(fld, big, gens), list(range(1, n + 1)), budget, cache)


@dataclass
class SyzygyReport:
    generator_count: int
    space_dim: int
    linear_rank: int
    syzygies: tuple  # each a tuple of linear Polynomials, one per generator

    def as_dict(self) -> dict:
        return {
            "generator_count": self.generator_count,
            "space_dim": self.space_dim,
            "linear_rank": self.linear_rank,
            "syzygies": [[lf.to_string() for lf in syz] for syz in self.syzygies],
        }


def linear_syzygies(F: Sequence[Polynomial], rng=None) -> SyzygyReport:
    """Solve sum_i (sum_j c_ij x_j) F_i = 0 exactly and report a basis plus the
    rank of the stacked linear-syzygy matrix over the fraction field.

    The rank uses fraction-free elimination on the matrix of linear forms; a
    randomized evaluation is run first as a cheap consistency pre-check.
    """
    if not F:
        raise PolyError("empty generator list")
    fld = F[0].field
    n = F[0].nvars
    d = F[0].total_degree()
    for f in F:
        if f.field != fld or f.nvars != n:
            raise PolyError("generators live in different rings")
        if f.is_zero() or not f.is_homogeneous() or f.total_degree() != d:
            raise PolyError("generators must be homogeneous of one degree")
    g = len(F)
    cols = g * n
    row_index: dict = {}
    entries: dict = {}
    for i, f in enumerate(F):
        for exps, coeff in f.terms.items():
            for j in range(n):
                mu = exps[:j] + (exps[j] + 1,) + exps[j + 1:]
                row = row_index.setdefault(mu, len(row_index))
                entries[(row, i * n + j)] = fld.add(
                    entries.get((row, i * n + j), fld.zero()), coeff)
    matrix = [[fld.zero()] * cols for _ in range(len(row_index))]
    for (r, c), v in entries.items():
        matrix[r][c] = v
    kernel = nullspace(matrix, cols, fld)
    syzygies = []
    for vec in kernel:
        forms = []
        for i in range(g):
            forms.append(Polynomial(fld, n,
                                    {tuple(1 if jj == j else 0 for jj in range(n)): vec[i * n + j]
                                     for j in range(n)}))
        total = Polynomial.zero(fld, n)
        for form, f in zip(forms, F):
            total = total + form * f
        if not total.is_zero():
            raise AssertionError("computed syzygy does not annihilate the generators")
        syzygies.append(tuple(forms))
    if not syzygies:
        return SyzygyReport(g, 0, 0, ())
    stacked = [list(s) for s in syzygies]
    if rng is not None:
        point = [rng.randint(2, 97) for _ in range(n)]
        numeric = [[form.evaluate(point) for form in row] for row in stacked]
        from .linalg import gauss_rank
        pre = gauss_rank(numeric, fld)
    else:
        pre = None
    rank = poly_matrix_rank(stacked)
    if pre is not None and pre > rank:
        raise AssertionError("evaluation rank exceeds symbolic rank")
    return SyzygyReport(g, len(syzygies), rank, tuple(syzygies))


@dataclass
class ReductionStep:
    n: int
    dim_product: int
    dim_power: int
    equal: bool
    groebner_checked: bool = False


@dataclass
class ReductionReport:
    contained: bool
    reduction_number: Optional[int]
    steps: list
    method: str

    def as_dict(self) -> dict:
        return {
            "contained": self.contained,
            "reduction_number": self.reduction_number,
            "steps": [vars(s) for s in self.steps],
            "method": self.method,
        }


def reduction_check(J: Ideal, I: Ideal, nmax: int,
                    budget: Optional[GBBudget] = None, cache=None,
                    groebner_limit: int = 80) -> ReductionReport:
    """Smallest n <= nmax with J I^n = I^(n+1), or None.

    Requires J, I homogeneous and equigenerated in one common degree, which
    makes ideal equality of the equigenerated products the same as equality of
    the k-spans of their generators in that degree; the span route is exact
    linear algebra.  When the generator products stay small the Groebner
    ideal_equal route is also run and must agree.
    """
    budget = budget or DEFAULT_BUDGET
    if not (J.is_equigenerated() and I.is_equigenerated()):
        raise PolyError("reduction_check needs equigenerated homogeneous ideals")
    dJ = next(iter(J.degrees()))
    dI = next(iter(I.degrees()))
    if dJ != dI:
        raise PolyError("J and I must share their generation degree")
    gb_i = buchberger(I, DEGREVLEX, budget, cache)
    contained = all(_nf_is_zero(g, gb_i, budget) for g in J.generators)
    if not contained:
        return ReductionReport(False, None, [], "span")
    fld = I.field

    def span_of(polys):
        span = SpanEchelon(fld)
        for q in polys:
            span.insert(q.terms)
        return span

    def basis_polys(span):
        return [_from_int_terms(row, fld, I.nvars) for row in span.basis_rows()]

    # power_basis spans (I^n) in its generation degree; n = 0 starts at k itself
    power_basis = [Polynomial.one(fld, I.nvars)]
    steps = []
    result = None
    groebner_used = False
    for n in range(nmax + 1):
        product_polys = [w * f for w in power_basis for f in J.generators]
        power_polys = [w * g for w in power_basis for g in I.generators]
        power_span = span_of(power_polys)
        product_span = span_of(product_polys)
        for row in product_span.basis_rows():
            if not power_span.contains(row):
                raise AssertionError("J I^n escaped I^(n+1); containment logic broken")
        equal = product_span.dim == power_span.dim
        step = ReductionStep(n, product_span.dim, power_span.dim, equal)
        if len(product_polys) + len(power_polys) <= groebner_limit:
            gb_equal = ideal_equal(Ideal(fld, I.nvars, product_polys),
                                   Ideal(fld, I.nvars, power_polys),
                                   DEGREVLEX, budget, cache)
            if gb_equal != equal:
                raise AssertionError("span and Groebner routes disagree in reduction_check")
            step.groebner_checked = True
            groebner_used = True
        steps.append(step)
        if equal:
            result = n
            break
        power_basis = basis_polys(power_span)
    method = "span+groebner" if groebner_used else "span"
    return ReductionReport(True, result, steps, method)


def verify_basis(gb: GroebnerBasis, budget: Optional[GBBudget] = None) -> bool:
    """Post-hoc check: every S-polynomial of basis pairs reduces to zero, and
    no basis leading term divides another (reducedness)."""
    budget = budget or DEFAULT_BUDGET
    mod = 0 if gb.field == QQ else gb.field.p
    keyfn = gb.order.key
    entries = [_normalize_entry(_to_int_terms(g), keyfn, mod) for g in gb.polys]
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            s = _spoly(entries[i], entries[j], keyfn, mod)
            if s and _reduce_full(s, entries, keyfn, mod, budget.max_terms):
                return False
    for i, (lm_i, _, _) in enumerate(entries):
        for j, (lm_j, _, _) in enumerate(entries):
            if i != j and mono_divides(lm_i, lm_j):
                return False
    return True
