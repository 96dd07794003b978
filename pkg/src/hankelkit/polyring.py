"""Exact sparse multivariate polynomials over the rationals or a prime field.

Polynomials are immutable values: every operation returns a fresh object, so
they are safe to share between threads.  Coefficients are `fractions.Fraction`
in lowest terms over the rationals and canonical residues in ``[0, p)`` over a
prime field.  A monomial is an exponent tuple of fixed length ``nvars``;
variable ``i`` (1-based, printed ``x<i>``) lives at tuple index ``i - 1``.

The canonical text form (used for fixtures and the on-disk cache) is:
signed terms joined by ``+``/``-``, each term ``c`` or ``c*x<i>^<e>*...`` with
``c`` a rational ``p/q`` (``/q`` omitted when q = 1, ``c*`` omitted when
c = 1, ``^e`` omitted when e = 1), variables in increasing index and terms in
decreasing degree-reverse-lexicographic order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class PolyError(ValueError):
    """Base class for ring-usage errors."""


class FieldMismatchError(PolyError):
    pass


class ArityMismatchError(PolyError):
    pass


class ZeroPolynomialError(PolyError):
    pass


class IndexRangeError(PolyError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The coefficient field QQ."""

    characteristic = 0
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def coerce(self, value) -> Fraction:
        return Fraction(value)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def format(self, a) -> str:
        f = Fraction(a)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def descriptor(self) -> str:
        return "QQ"


class PrimeField:
    """The coefficient field GF(p) with canonical residues in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise PolyError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def coerce(self, value) -> int:
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return (value.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p
        return int(value) % self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def format(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def descriptor(self) -> str:
        return f"F{self.p}"


QQ = Rationals()


def field_from_descriptor(text: str):
    if text in ("QQ", "q"):
        return QQ
    m = re.fullmatch(r"[Ff](\d+)", text)
    if not m:
        raise PolyError(f"unknown field descriptor {text!r}")
    return PrimeField(int(m.group(1)))


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)

def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)


class MonomialOrder:
    """Total multiplicative monomial order, exposed as a sort key on exponent tuples."""

    name = "abstract"

    def key(self, exps: tuple):
        raise NotImplementedError

    def descriptor(self) -> str:
        return self.name

    def __repr__(self):
        return self.descriptor()

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())


class DegRevLex(MonomialOrder):
    """Degree then reverse-lexicographic, with x1 > x2 > ... > xn."""

    name = "degrevlex"

    def key(self, exps: tuple):
        return (sum(exps), tuple(-e for e in reversed(exps)))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps: tuple):
        return exps


class BlockOrder(MonomialOrder):
    """Two-block degrevlex eliminating the first ``elim_count`` variables."""

    name = "block"

    def __init__(self, elim_count: int):
        if elim_count < 1:
            raise PolyError("elim_count must be positive")
        self.elim_count = elim_count

    def key(self, exps: tuple):
        k = self.elim_count
        head, tail = exps[:k], exps[k:]
        return (
            sum(head), tuple(-e for e in reversed(head)),
            sum(tail), tuple(-e for e in reversed(tail)),
        )

    def descriptor(self) -> str:
        return f"block{self.elim_count}"


DEGREVLEX = DegRevLex()
LEX = Lex()


def order_from_descriptor(text: str) -> MonomialOrder:
    if text == "degrevlex":
        return DEGREVLEX
    if text == "lex":
        return LEX
    m = re.fullmatch(r"block(\d+)", text)
    if m:
        return BlockOrder(int(m.group(1)))
    raise PolyError(f"unknown order descriptor {text!r}")


# ---------------------------------------------------------------------------


class Polynomial:
    """A sparse exact polynomial: ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms: Mapping[tuple, object] | None = None,
                 _trusted: bool = False):
        self.field = field
        self.nvars = nvars
        if _trusted:
            self.terms = dict(terms) if terms else {}
            return
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ArityMismatchError(f"monomial {exps} has arity {len(exps)}, ring has {nvars}")
                if any(e < 0 or not isinstance(e, int) for e in exps):
                    raise PolyError(f"bad exponent vector {exps}")
                c = field.coerce(coeff)
                if c == field.zero():
                    continue
                if exps in clean:
                    c = field.add(clean[exps], c)
                    if c == field.zero():
                        del clean[exps]
                        continue
                clean[exps] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars: int) -> "Polynomial":
        return cls(field, nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, field, nvars: int, value) -> "Polynomial":
        return cls(field, nvars, {tuple([0] * nvars): value})

    @classmethod
    def one(cls, field, nvars: int) -> "Polynomial":
        return cls.constant(field, nvars, 1)

    @classmethod
    def variable(cls, field, nvars: int, i: int) -> "Polynomial":
        """The variable x_i, 1-based."""
        if not 1 <= i <= nvars:
            raise IndexRangeError(f"variable index {i} outside 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(field, nvars, {tuple(exps): 1})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.field.zero())

    def constant_term(self):
        return self.terms.get(tuple([0] * self.nvars), self.field.zero())

    def pure_term_coefficient(self, i: int, d: int):
        """Coefficient of x_i^d (1-based i); 0 if the term is absent."""
        if not 1 <= i <= self.nvars:
            raise IndexRangeError(f"variable index {i} outside 1..{self.nvars}")
        exps = [0] * self.nvars
        exps[i - 1] = d
        return self.terms.get(tuple(exps), self.field.zero())

    def variables_used(self) -> set:
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(i + 1)
        return used

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
        if self.nvars != other.nvars:
            raise ArityMismatchError(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fld = self.field
        zero = fld.zero()
        res = dict(self.terms)
        for exps, c in other.terms.items():
            s = fld.add(res.get(exps, zero), c)
            if s == zero:
                res.pop(exps, None)
            else:
                res[exps] = s
        return Polynomial(fld, self.nvars, res, _trusted=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fld = self.field
        zero = fld.zero()
        res = dict(self.terms)
        for exps, c in other.terms.items():
            s = fld.sub(res.get(exps, zero), c)
            if s == zero:
                res.pop(exps, None)
            else:
                res[exps] = s
        return Polynomial(fld, self.nvars, res, _trusted=True)

    def __neg__(self) -> "Polynomial":
        fld = self.field
        return Polynomial(fld, self.nvars, {e: fld.neg(c) for e, c in self.terms.items()},
                          _trusted=True)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fld = self.field
        zero = fld.zero()
        res: dict = {}
        if len(self.terms) > len(other.terms):
            left, right = other.terms, self.terms
        else:
            left, right = self.terms, other.terms
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = fld.add(res.get(key, zero), fld.mul(c1, c2))
                if s == zero:
                    res.pop(key, None)
                else:
                    res[key] = s
        return Polynomial(fld, self.nvars, res, _trusted=True)

    def scale(self, value) -> "Polynomial":
        fld = self.field
        c0 = fld.coerce(value)
        if c0 == fld.zero():
            return Polynomial.zero(fld, self.nvars)
        return Polynomial(fld, self.nvars,
                          {e: fld.mul(c, c0) for e, c in self.terms.items()}, _trusted=True)

    def mul_term(self, exps: tuple, coeff) -> "Polynomial":
        fld = self.field
        c0 = fld.coerce(coeff)
        if c0 == fld.zero():
            return Polynomial.zero(fld, self.nvars)
        return Polynomial(fld, self.nvars,
                          {mono_mul(e, exps): fld.mul(c, c0) for e, c in self.terms.items()},
                          _trusted=True)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise PolyError("negative power")
        result = Polynomial.one(self.field, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    # -- calculus and maps ----------------------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self.nvars:
            raise IndexRangeError(f"variable index {i} outside 1..{self.nvars}")
        fld = self.field
        zero = fld.zero()
        idx = i - 1
        res: dict = {}
        for exps, c in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            c2 = fld.mul(c, fld.coerce(e))
            if c2 == zero:
                continue
            key = exps[:idx] + (e - 1,) + exps[idx + 1:]
            s = fld.add(res.get(key, zero), c2)
            if s == zero:
                res.pop(key, None)
            else:
                res[key] = s
        return Polynomial(fld, self.nvars, res, _trusted=True)

    def evaluate(self, point: Sequence):
        """Exact value at a point of field elements."""
        if len(point) != self.nvars:
            raise ArityMismatchError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        fld = self.field
        vals = [fld.coerce(v) for v in point]
        total = fld.zero()
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term = fld.mul(term, v ** e if isinstance(v, Fraction) else pow(v, e, fld.p))
            total = fld.add(total, term)
        return total

    # -- order-dependent views -------------------------------------------------

    def initial_term(self, order: MonomialOrder = DEGREVLEX) -> tuple:
        """The maximal (monomial, coefficient) pair under ``order``."""
        if not self.terms:
            raise ZeroPolynomialError("initial term of the zero polynomial")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> tuple:
        return self.initial_term(order)[0]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    # -- QQ normalization -------------------------------------------------------

    def content_and_primitive(self):
        """Over QQ: (content, primitive) with integer primitive part, positive leading sign.

        The primitive part has integer coefficients with gcd 1 and a positive
        coefficient on its degrevlex-leading monomial; content * primitive == self.
        """
        if self.field != QQ:
            raise FieldMismatchError("content extraction is defined over QQ")
        if not self.terms:
            return Fraction(0), self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = _gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        lead = max(self.terms, key=DEGREVLEX.key)
        if self.terms[lead] < 0:
            content = -content
        prim = Polynomial(QQ, self.nvars,
                          {e: c / content for e, c in self.terms.items()}, _trusted=True)
        return content, prim

    def primitive(self) -> "Polynomial":
        return self.content_and_primitive()[1]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        _, lc = self.initial_term(order)
        return self.scale(self.field.inv(lc))

    # -- arity changes ------------------------------------------------------------

    def extend_nvars(self, nvars: int) -> "Polynomial":
        if nvars < self.nvars:
            raise ArityMismatchError("extend_nvars cannot shrink the ring")
        pad = (0,) * (nvars - self.nvars)
        return Polynomial(self.field, nvars,
                          {e + pad: c for e, c in self.terms.items()}, _trusted=True)

    def restrict_nvars(self, nvars: int) -> "Polynomial":
        if nvars > self.nvars:
            raise ArityMismatchError("restrict_nvars cannot grow the ring")
        res = {}
        for e, c in self.terms.items():
            if any(e[nvars:]):
                raise ArityMismatchError("polynomial uses a variable outside the smaller ring")
            res[e[:nvars]] = c
        return Polynomial(self.field, nvars, res, _trusted=True)

    # -- text -----------------------------------------------------------------------

    def to_string(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        fld = self.field
        pieces = []
        for exps, coeff in self.sorted_terms(order):
            if isinstance(coeff, Fraction):
                negative = coeff < 0
                mag = -coeff if negative else coeff
            else:
                negative = False
                mag = coeff
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                       for i, e in enumerate(exps) if e]
            if not factors:
                body = fld.format(mag)
            elif mag == fld.one():
                body = "*".join(factors)
            else:
                body = fld.format(mag) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append(("-" if negative else "+") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.field!r}, {self.nvars}, {self.to_string()})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


_TERM_RE = re.compile(
    r"(?P<coeff>\d+(?:/\d+)?)?(?P<vars>(?:\*?x\d+(?:\^\d+)?)*)"
)
_VAR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_polynomial(text: str, field, nvars: int) -> Polynomial:
    """Parse the canonical text grammar produced by :meth:`Polynomial.to_string`."""
    s = text.strip().replace(" ", "")
    if s in ("0", "", "+0", "-0"):
        return Polynomial.zero(field, nvars)
    terms: dict = {}
    pos = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse polynomial text at position {pos}: {text!r}")
        coeff_text = m.group("coeff")
        var_text = m.group("vars")
        coeff = Fraction(coeff_text) if coeff_text else Fraction(1)
        exps = [0] * nvars
        for vm in _VAR_RE.finditer(var_text):
            i = int(vm.group(1))
            e = int(vm.group(2)) if vm.group(2) else 1
            if not 1 <= i <= nvars:
                raise ArityMismatchError(f"variable x{i} outside ring with {nvars} variables")
            exps[i - 1] += e
        key = tuple(exps)
        value = field.coerce(coeff if sign > 0 else -coeff)
        if key in terms:
            value = field.add(terms[key], value)
        if value == field.zero():
            terms.pop(key, None)
        else:
            terms[key] = value
        pos = m.end()
        if pos < len(s):
            if s[pos] not in "+-":
                raise PolyError(f"expected sign at position {pos}: {text!r}")
            sign = -1 if s[pos] == "-" else 1
            pos += 1
    return Polynomial(field, nvars, terms, _trusted=True)


class RingMap:
    """A ring homomorphism fixed by the images of the source variables.

    ``images[i]`` is the image of x_{i+1}; all images live in one target ring.
    Applying the map is substitution, so it is automatically compatible with
    the ring operations.
    """

    __slots__ = ("source_nvars", "images", "field", "target_nvars", "_simple")

    def __init__(self, source_nvars: int, images: Sequence[Polynomial]):
        if len(images) != source_nvars:
            raise ArityMismatchError("one image per source variable is required")
        if not images:
            raise PolyError("empty ring map")
        field = images[0].field
        target = images[0].nvars
        for img in images:
            if img.field != field or img.nvars != target:
                raise FieldMismatchError("images live in different rings")
        self.source_nvars = source_nvars
        self.images = tuple(images)
        self.field = field
        self.target_nvars = target
        # x_i -> 0 or x_i -> c*monomial admits a fast exponent-rewrite path
        simple = []
        for img in images:
            if img.is_zero():
                simple.append((None, None))
            elif len(img.terms) == 1:
                (exps, c), = img.terms.items()
                simple.append((exps, c))
            else:
                simple = None
                break
        self._simple = simple

    @classmethod
    def identity(cls, field, nvars: int) -> "RingMap":
        return cls(nvars, [Polynomial.variable(field, nvars, i) for i in range(1, nvars + 1)])

    @classmethod
    def kill_variables(cls, field, nvars: int, dead: Iterable[int]) -> "RingMap":
        """Send x_i to 0 for i in ``dead`` (1-based), fix the rest."""
        dead = set(dead)
        images = []
        for i in range(1, nvars + 1):
            if i in dead:
                images.append(Polynomial.zero(field, nvars))
            else:
                images.append(Polynomial.variable(field, nvars, i))
        return cls(nvars, images)

    def apply(self, p: Polynomial) -> Polynomial:
        if p.nvars != self.source_nvars:
            raise ArityMismatchError(f"map has arity {self.source_nvars}, polynomial {p.nvars}")
        if p.field != self.field:
            raise FieldMismatchError("polynomial and map coefficients differ")
        fld = self.field
        zero = fld.zero()
        if self._simple is not None:
            res: dict = {}
            for exps, c in p.terms.items():
                out = [0] * self.target_nvars
                coeff = c
                dead = False
                for i, e in enumerate(exps):
                    if not e:
                        continue
                    img_exps, img_c = self._simple[i]
                    if img_exps is None:
                        dead = True
                        break
                    for j, ee in enumerate(img_exps):
                        if ee:
                            out[j] += ee * e
                    if img_c != fld.one():
                        coeff = fld.mul(coeff, img_c ** e if isinstance(img_c, Fraction)
                                        else pow(img_c, e, fld.p))
                if dead:
                    continue
                key = tuple(out)
                s = fld.add(res.get(key, zero), coeff)
                if s == zero:
                    res.pop(key, None)
                else:
                    res[key] = s
            return Polynomial(fld, self.target_nvars, res, _trusted=True)
        total = Polynomial.zero(fld, self.target_nvars)
        powers: dict = {}
        for exps, c in p.terms.items():
            term = Polynomial.constant(fld, self.target_nvars, c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                key = (i, e)
                if key not in powers:
                    powers[key] = self.images[i] ** e
                term = term * powers[key]
            total = total + term
        return total

    def __repr__(self):
        return f"RingMap({self.source_nvars} -> {self.target_nvars} vars)"
