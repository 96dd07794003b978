"""Gradient ideals, Euler identity, Hessian matrices, the trivariate Hessian
degeneration with its closed form, and the principal-block rank check.

Everything is for f = det of the order-m Hankel degeneration with r zeroed
anti-diagonals, over a ring with n = 2m-r-1 variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import factorial
from typing import Optional

from . import groebner
from .groebner import BudgetExceededError, GBBudget, Ideal
from .polyring import DEGREVLEX, IndexRangeError, Polynomial, QQ, RingMap
from .symmatrix import SymMatrix, block_partition, hankel_degeneration


def _check_params(m: int, r: int):
    if m < 2:
        raise IndexRangeError("matrix order must be at least 2")
    if not 0 <= r <= m - 2:
        raise IndexRangeError(f"r={r} outside 0..{m - 2}")


@dataclass
class GradientData:
    """f, its partials f_1..f_n, and the full signed-cofactor table.

    delta(i, j) is the signed cofactor of the (j, i) entry of the matrix,
    built lazily and memoized.  Constructed through :func:`gradient`, which
    verifies the cofactor decomposition of every partial and (over QQ) the
    Euler identity.
    """

    m: int
    r: int
    matrix: SymMatrix
    f: Polynomial
    partials: tuple
    _cofactors: dict = dc_field(default_factory=dict, repr=False)

    def delta(self, i: int, j: int) -> Polynomial:
        key = (i, j)
        if key not in self._cofactors:
            self._cofactors[key] = self.matrix.cofactor(j, i)
        return self._cofactors[key]

    def cofactor_table(self) -> dict:
        """All delta(i, j), keyed by (i, j)."""
        for i in range(1, self.m + 1):
            for j in range(1, self.m + 1):
                self.delta(i, j)
        return dict(self._cofactors)

    @property
    def nvars(self) -> int:
        return self.matrix.nvars

    def ideal(self) -> Ideal:
        return Ideal(self.f.field, self.nvars, list(self.partials))


def gradient(m: int, r: int, field=QQ) -> GradientData:
    _check_params(m, r)
    h = hankel_degeneration(m, r, field)
    f = h.determinant()
    n = h.nvars
    partials = tuple(f.derivative(k) for k in range(1, n + 1))
    data = GradientData(m, r, h, f, partials)
    report = cofactor_decomposition_check(data)
    if not report["all_equal"]:
        raise AssertionError(f"cofactor decomposition failed at m={m}, r={r}")
    if field == QQ:
        euler = Polynomial.zero(field, n)
        for k, fk in enumerate(partials, start=1):
            euler = euler + Polynomial.variable(field, n, k) * fk
        if euler != f.scale(m):
            raise AssertionError(f"Euler identity failed at m={m}, r={r}")
    return data


def cofactor_decomposition_check(data: GradientData) -> dict:
    """f_k must equal the sum of the signed cofactors of every slot holding
    x_k, i.e. the slots (i, j) with i + j = k + 1."""
    m, h = data.m, data.matrix
    verdicts = {}
    for k, fk in enumerate(data.partials, start=1):
        total = Polynomial.zero(fk.field, fk.nvars)
        for i in range(1, m + 1):
            j = k + 1 - i
            if 1 <= j <= m:
                total = total + h.cofactor(i, j)
        verdicts[k] = (total == fk)
    return {"m": m, "r": data.r, "per_k": verdicts,
            "all_equal": all(verdicts.values())}


@dataclass
class HessianData:
    m: int
    r: int
    f: Polynomial
    matrix: SymMatrix           # n x n second partials
    degenerated: Polynomial     # det of the matrix after the three-variable kill

    @property
    def nvars(self) -> int:
        return self.matrix.nvars


def survivors(m: int, r: int) -> set:
    """The variable indices kept by the Hessian degeneration map."""
    return {1, m - r - 1, 2 * m - r - 1}


def hessian(m: int, r: int, field=QQ) -> HessianData:
    _check_params(m, r)
    h = hankel_degeneration(m, r, field)
    f = h.determinant()
    n = h.nvars
    partials = [f.derivative(k) for k in range(1, n + 1)]
    entries = []
    for i in range(n):
        row = [partials[i].derivative(j + 1) for j in range(n)]
        entries.extend(row)
    matrix = SymMatrix(n, n, entries)
    keep = survivors(m, r)
    kill = RingMap.kill_variables(field, n, [i for i in range(1, n + 1) if i not in keep])
    degenerated = matrix.apply_map(kill).determinant()
    return HessianData(m, r, f, matrix, degenerated)


def hessian_degenerated(m: int, r: int, field=QQ) -> Polynomial:
    return hessian(m, r, field).degenerated


@dataclass
class HessianCertificate:
    m: int
    r: int
    nonzero: bool
    route: str                  # "degeneration", "evaluation" or "symbolic"
    witness: str


def hessian_nonzero_certificate(m: int, r: int, rng=None, field=QQ) -> HessianCertificate:
    """Certify that the Hessian determinant of f does not vanish.

    Primary route: the three-variable degeneration (a nonzero image proves a
    nonzero source).  Fallbacks: exact evaluation of the full Hessian at
    random rational points (up to 5 tries), then the full symbolic
    determinant.
    """
    data = hessian(m, r, field)
    if not data.degenerated.is_zero():
        return HessianCertificate(m, r, True, "degeneration",
                                  data.degenerated.to_string())
    if rng is not None:
        n = data.nvars
        for _ in range(5):
            point = [rng.randint(1, 1000) for _ in range(n)]
            numeric = [[e.evaluate(point) for e in data.matrix.row(i)]
                       for i in range(1, n + 1)]
            value = _fraction_det(numeric)
            if value != 0:
                return HessianCertificate(m, r, True, "evaluation",
                                          f"h(f)({point}) = {value}")
    full = data.matrix.determinant()
    return HessianCertificate(m, r, not full.is_zero(), "symbolic",
                              f"{len(full.terms)} terms")


def _fraction_det(rows: list) -> object:
    from fractions import Fraction
    mat = [[Fraction(c) for c in row] for row in rows]
    n = len(mat)
    sign = 1
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            sign = -sign
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                factor = mat[r][col] * inv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det * sign


@dataclass
class ClosedForm:
    """The two-term product expression for the degenerated Hessian.

    The outer factor is the monomial C * p^(2m-2r-4) * q^(r+1) with
    C = 2^(r+1) (r+1) (m-r-1)! (m-r-2)!,
    p = x_{m-r-1}^(m-r-3) x_{2m-r-1}^(r+1),  q = x1 x_{m-r-1}^(m-r-3) x_{2m-r-1}^r.
    The two inner terms carry unresolved signs; they share one monomial, so
    the expanded absolute coefficient is C*(a+b) or C*|a-b| depending on the
    relative sign, with a = r(m-r-2) and b = (m-r-1)(r+1).
    """

    m: int
    r: int
    support: frozenset          # exponent tuples of the expansion (one element)
    abs_coefficients: dict      # monomial -> set of candidate absolute coefficients

    def candidates(self) -> dict:
        return {mono: sorted(vals) for mono, vals in self.abs_coefficients.items()}


def closed_form(m: int, r: int) -> ClosedForm:
    _check_params(m, r)
    if r == m - 2:
        raise IndexRangeError(
            "r = m-2 has a pure-power Hessian degeneration; the two-term "
            "closed form needs r <= m-3")
    n = 2 * m - r - 1
    a_idx = m - r - 1
    b_idx = 2 * m - r - 1

    def mono(x1: int, a: int, b: int) -> tuple:
        exps = [0] * n
        exps[0] += x1
        exps[a_idx - 1] += a
        exps[b_idx - 1] += b
        return tuple(exps)

    c_out = 2 ** (r + 1) * (r + 1) * factorial(m - r - 1) * factorial(m - r - 2)
    # outer monomial: p^(2m-2r-4) * q^(r+1)
    e = 2 * m - 2 * r - 4
    outer = mono(r + 1,
                 (m - r - 3) * e + (m - r - 3) * (r + 1),
                 (r + 1) * e + r * (r + 1))
    coeff_a = r * (m - r - 2)
    inner_a = mono(0, (m - r - 3) + (m - r - 1), (r + 1) + (r - 1)) if coeff_a else None
    coeff_b = (m - r - 1) * (r + 1)
    inner_b = mono(0, 2 * m - 2 * r - 4, 2 * r)
    terms: dict = {}
    combined = tuple(x + y for x, y in zip(outer, inner_b))
    if inner_a is not None:
        assert inner_a == inner_b  # the two inner terms collide for every valid (m, r)
        terms[combined] = {c_out * (coeff_a + coeff_b), c_out * abs(coeff_b - coeff_a)}
    else:
        terms[combined] = {c_out * coeff_b}
    return ClosedForm(m, r, frozenset(terms), terms)


@dataclass
class ClosedFormReport:
    m: int
    r: int
    matches: bool
    branch: str                 # "hard" for m-r >= 4, "empirical" at m-r = 3
    resolved_relative_sign: Optional[str]
    computed: str
    candidates: dict


def closed_form_check(m: int, r: int) -> ClosedFormReport:
    """Compare the degenerated Hessian with the closed form: same support and
    an absolute coefficient realized by one choice of the unresolved signs."""
    form = closed_form(m, r)
    computed = hessian_degenerated(m, r)
    branch = "hard" if m - r >= 4 else "empirical"
    if set(computed.terms) != set(form.support):
        return ClosedFormReport(m, r, False, branch, None, computed.to_string(),
                                form.candidates())
    resolved = None
    matches = True
    for mono, c in computed.terms.items():
        options = form.abs_coefficients[mono]
        if abs(c) not in options:
            matches = False
            break
        if len(options) > 1:
            a = r * (m - r - 2)
            b = (m - r - 1) * (r + 1)
            c_out = 2 ** (r + 1) * (r + 1) * factorial(m - r - 1) * factorial(m - r - 2)
            resolved = "opposite" if abs(c) == c_out * abs(b - a) else "same"
    return ClosedFormReport(m, r, matches, branch, resolved,
                            computed.to_string(), form.candidates())


@dataclass
class ThetaReport:
    m: int
    r: int
    ok: bool
    scalar: Optional[object]
    exponent: int
    determinant: str


def theta_check(m: int, r: int, field=QQ) -> ThetaReport:
    """The leading (m+1) x (m+1) principal block of the Hessian, with
    x_{m+2}.. killed, must have determinant c * x_{m+1}^((m+1)(m-2))."""
    if m < 3:
        raise IndexRangeError("the principal-block check needs m >= 3")
    _check_params(m, r)
    data = hessian(m, r, field)
    n = data.nvars
    sub = data.matrix.submatrix(range(1, m + 2), range(1, m + 2))
    dead = list(range(m + 2, n + 1))
    if dead:
        sub = sub.apply_map(RingMap.kill_variables(field, n, dead))
    det = sub.determinant()
    exponent = (m + 1) * (m - 2)
    mono = tuple(exponent if i == m else 0 for i in range(n))
    scalar = det.terms.get(mono)
    ok = (len(det.terms) == 1 and scalar is not None and scalar != field.zero())
    return ThetaReport(m, r, ok, scalar, exponent, det.to_string())


@dataclass
class CofactorRelationsReport:
    m: int
    r: int
    adjugate_identity: bool
    block_identity: bool
    displayed_relations: Optional[dict]
    all_ok: bool


def cofactor_relations_check(m: int, r: int, field=QQ,
                             budget: Optional[GBBudget] = None, cache=None) -> CofactorRelationsReport:
    """Adjugate-based linear relations among cofactors.

    Always: adj(H) H = det(H) I and the blockwise identity that the entries of
    A U + B D equal f on the diagonal and 0 off it (hence lie in the gradient
    ideal).  When m - r = 3 additionally the displayed three-term relations
    x_{m-k+2} Delta_{1,j} + ... + x_{m+2} Delta_{k+1,j} = 0 hold identically.
    """
    _check_params(m, r)
    data = gradient(m, r, field)
    h = data.matrix
    n = h.nvars
    adj = h.adjugate()
    prod = adj.mul(h)
    zero = Polynomial.zero(field, n)
    adj_ok = all(prod.at(i, j) == (data.f if i == j else zero)
                 for i in range(1, m + 1) for j in range(1, m + 1))

    block_ok = True
    gb = groebner.buchberger(data.ideal(), DEGREVLEX, budget, cache)
    for j in range(1, m - 1):
        part = block_partition(m, r, j, field)
        top = part.adj_a.mul(part.upper)
        rest = part.adj_b.mul(part.lower)
        for i in range(1, m - j + 1):
            for c in range(1, m + 1):
                entry = top.at(i, c) + rest.at(i, c)
                expected = data.f if i == c else zero
                if entry != expected:
                    block_ok = False
                if not groebner.normal_form(entry, gb).is_zero():
                    block_ok = False

    displayed = None
    if m - r == 3:
        # x_{m-k+2} Delta_{1,j} + .. + x_{m+2} Delta_{k+1,j} is the cofactor
        # expansion of det(H with row j replaced by column m-k+2), so it is 0
        # except at j = m-k+2 where it equals f itself; the display omits
        # that exception, which only enters the j-range once 2k >= m+1.
        displayed = {}
        for k in range(2, m):
            for j in range(1, k + 2):
                total = zero
                for i in range(1, k + 2):
                    x_idx = m - k + 1 + i
                    total = total + Polynomial.variable(field, n, x_idx) * data.delta(i, j)
                expected = data.f if j == m - k + 2 else zero
                displayed[(k, j)] = (total == expected)
    all_ok = adj_ok and block_ok and (displayed is None or all(displayed.values()))
    return CofactorRelationsReport(m, r, adj_ok, block_ok, displayed, all_ok)


def gradient_codim(m: int, r: int, budget: Optional[GBBudget] = None,
                   cache=None) -> int:
    if m - r < 2:
        raise IndexRangeError("the codimension statement needs m - r >= 2")
    data = gradient(m, r)
    return groebner.codimension(data.ideal(), DEGREVLEX, budget, cache)


@dataclass
class MinimalPrimesReport:
    m: int
    r: int
    in_q: bool                      # (a) every f_k dies under x_m.. -> 0
    in_p: bool                      # (b) every f_k in the submaximal minors
    codim_q: Optional[int]
    codim_p: Optional[int]
    codims_ok: Optional[bool]       # (c)
    radical_spot: Optional[bool]    # (d), None when skipped or budget-bound
    budget_hit: bool = False

    def checks_abc(self) -> bool:
        return self.in_q and self.in_p and bool(self.codims_ok)


def minimal_primes_checks(m: int, r: int, budget: Optional[GBBudget] = None,
                          cache=None, radical_samples: int = 4) -> MinimalPrimesReport:
    """Computable containments for the two minimal primes of the gradient
    ideal at 1 <= r <= m-3: Q = (x_m..x_{2m-r-1}) and P = submaximal minors."""
    if not 1 <= r <= m - 3:
        raise IndexRangeError("minimal-prime structure needs 1 <= r <= m-3")
    data = gradient(m, r)
    n = data.nvars
    kill = RingMap.kill_variables(QQ, n, range(m, n + 1))
    in_q = all(kill.apply(fk).is_zero() for fk in data.partials)
    p_gens = [mn.value for mn in data.matrix.minors(m - 1)]
    P = Ideal(QQ, n, p_gens)
    Q = Ideal(QQ, n, [Polynomial.variable(QQ, n, i) for i in range(m, n + 1)])
    budget_hit = False
    in_p = codim_q = codim_p = codims_ok = radical_spot = None
    try:
        gb_p = groebner.buchberger(P, DEGREVLEX, budget, cache)
        in_p = all(groebner.normal_form(fk, gb_p).is_zero() for fk in data.partials)
        codim_q = groebner.codimension(Q, DEGREVLEX, budget, cache)
        codim_p = groebner.codimension(P, DEGREVLEX, budget, cache)
        codims_ok = (codim_q == m - r) and (codim_p == 3)
    except BudgetExceededError:
        budget_hit = True
    if not budget_hit:
        try:
            J = data.ideal()
            spot = True
            count = 0
            for qg in Q.generators:
                for pg in P.generators:
                    if count >= radical_samples:
                        break
                    spot = spot and groebner.radical_membership(qg * pg, J, budget, cache)
                    count += 1
                if count >= radical_samples:
                    break
            radical_spot = spot
        except BudgetExceededError:
            radical_spot = None
            budget_hit = True
    return MinimalPrimesReport(m, r, bool(in_q), bool(in_p), codim_q, codim_p,
                               codims_ok, radical_spot, budget_hit)


@dataclass
class SyzygyShapeReport:
    """The three linear syzygies of the generic gradient in banded form.

    Column shapes (entries indexed by the generator/variable index i):
    down-shift lambda_i = a_i x_{i-1} with a_1 = 0 and every other a_i
    nonzero; up-shift lambda_i = b_i x_{i+1} with b_n = 0; diagonal
    lambda_i = c_i x_i.  Together they span the full linear-syzygy space.
    """

    m: int
    down_shift: Optional[list]
    up_shift: Optional[list]
    diagonal: Optional[list]
    down_nonzero: bool
    spans_space: bool

    def ok(self) -> bool:
        return (self.down_shift is not None and self.up_shift is not None
                and self.diagonal is not None and self.down_nonzero
                and self.spans_space)


def generic_syzygy_shape_check(m: int) -> SyzygyShapeReport:
    """Solve for linear syzygies of the generic gradient constrained to the
    three banded supports and confirm they span the whole linear-syzygy
    space (of dimension 3)."""
    from .linalg import nullspace

    data = gradient(m, 0)
    n = data.nvars
    F = data.partials

    def constrained(var_of):
        # one unknown per generator; lambda_i = u_i * x_{var_of(i)};
        # var_of(i) = None forces lambda_i = 0
        columns = [i for i in range(1, n + 1) if var_of(i) is not None]
        rows: dict = {}
        for col, i in enumerate(columns):
            v = var_of(i)
            for exps, coeff in F[i - 1].terms.items():
                mu = exps[:v - 1] + (exps[v - 1] + 1,) + exps[v:]
                row = rows.setdefault(mu, [QQ.zero()] * len(columns))
                row[col] = QQ.add(row[col], coeff)
        matrix = [rows[mu] for mu in sorted(rows)]
        kernel = nullspace(matrix, len(columns), QQ)
        if len(kernel) != 1:
            return None
        out = [QQ.zero()] * n
        for col, i in enumerate(columns):
            out[i - 1] = kernel[0][col]
        return out

    down = constrained(lambda i: i - 1 if i >= 2 else None)
    up = constrained(lambda i: i + 1 if i <= n - 1 else None)
    diag = constrained(lambda i: i)
    down_nonzero = down is not None and all(down[i] != 0 for i in range(1, n))
    spans = False
    if down and up and diag:
        full = linear_syzygy_space_dim(F)
        candidates = []
        for vec, var_of in ((down, lambda i: i - 1), (up, lambda i: i + 1),
                            (diag, lambda i: i)):
            flat = [QQ.zero()] * (n * n)
            for i in range(1, n + 1):
                v = var_of(i)
                if 1 <= v <= n:
                    flat[(i - 1) * n + (v - 1)] = vec[i - 1]
            candidates.append(flat)
        from .linalg import gauss_rank
        spans = (gauss_rank(candidates, QQ) == 3 == full)
    return SyzygyShapeReport(m, down, up, diag, down_nonzero, spans)


def linear_syzygy_space_dim(F) -> int:
    return groebner.linear_syzygies(list(F)).space_dim


@dataclass
class RegularSequenceReport:
    m: int
    sequence: list                  # variable indices tested, in test order
    regular: list                   # per-element verdicts
    first_failure: Optional[int]
    verdict: str                    # consistent / counterexample / budget-exceeded


def regular_sequence_experiment(m: int, upto: Optional[int] = None,
                                budget: Optional[GBBudget] = None,
                                cache=None) -> RegularSequenceReport:
    """Conjecture-class experiment: is {x_{m+3},..,x_{2m-1}} regular modulo the
    generic gradient ideal?  Tested in reverse order by ideal quotients; never
    raises on budget, returning a budget-exceeded verdict instead."""
    data = gradient(m, 0)
    n = data.nvars
    seq = list(range(2 * m - 1, m + 2, -1))
    if upto is not None:
        seq = seq[:upto]
    current = data.ideal()
    regular = []
    first_failure = None
    try:
        for idx in seq:
            x = Polynomial.variable(QQ, n, idx)
            quotient = groebner.ideal_quotient(current, x, budget, cache)
            ok = groebner.ideal_equal(quotient, current, DEGREVLEX, budget, cache)
            regular.append(ok)
            if not ok:
                first_failure = idx
                break
            current = Ideal(QQ, n, list(current.generators) + [x])
    except BudgetExceededError:
        return RegularSequenceReport(m, seq, regular, first_failure, "budget-exceeded")
    verdict = "consistent" if first_failure is None else "counterexample"
    return RegularSequenceReport(m, seq, regular, first_failure, verdict)
