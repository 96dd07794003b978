"""Cross-validation of the Groebner engine against an independent
implementation (sympy), plus canonicity under generator shuffling.

sympy is used purely as a test oracle; the package itself has no runtime
dependencies.
"""

from fractions import Fraction

import pytest

sympy = pytest.importorskip("sympy")

from hankelkit import groebner as gb
from hankelkit.groebner import Ideal
from hankelkit.polyring import DEGREVLEX, Polynomial, QQ
from hankelkit.symmatrix import HankelSpec, hankel, hankel_square


def to_sympy(p: Polynomial, symbols):
    expr = 0
    for exps, coeff in p.terms.items():
        term = sympy.Rational(coeff)
        for s, e in zip(symbols, exps):
            if e:
                term *= s ** e
        expr += term
    return expr


def from_sympy(expr, symbols, nvars):
    poly = sympy.Poly(expr, *symbols)
    terms = {}
    for exps, coeff in poly.terms():
        q = sympy.Rational(coeff)
        terms[tuple(int(e) for e in exps)] = Fraction(int(q.p), int(q.q))
    return Polynomial(QQ, nvars, terms)


def sympy_reduced_basis(polys, nvars):
    symbols = sympy.symbols(f"x1:{nvars + 1}")
    basis = sympy.groebner([to_sympy(p, symbols) for p in polys],
                           *symbols, order="grevlex")
    back = [from_sympy(g, symbols, nvars) for g in basis.exprs]
    return {p.monic(DEGREVLEX).to_string() for p in back}, symbols


def our_reduced_basis(ideal, symbols):
    basis = gb.buchberger(ideal)
    return {p.monic(DEGREVLEX).to_string() for p in basis.polys}


CASES = [
    ("gradient m=3 r=1", 3, 1, "gradient"),
    ("gradient m=4 r=1", 4, 1, "gradient"),
    ("gradient m=4 r=2", 4, 2, "gradient"),
    ("2-minors 2x4", None, None, "minors24"),
    ("3-minors m=4 r=1", 4, 1, "minors"),
]


@pytest.mark.parametrize("label,m,r,kind", CASES)
def test_reduced_basis_matches_sympy(label, m, r, kind):
    if kind == "gradient":
        h = hankel_square(m, r)
        f = h.determinant()
        gens = [f.derivative(i) for i in range(1, h.nvars + 1)]
        nvars = h.nvars
    elif kind == "minors24":
        h = hankel(HankelSpec(2, 4, 0))
        gens = [mn.value for mn in h.minors(2)]
        nvars = 5
    else:
        h = hankel_square(m, r)
        gens = [mn.value for mn in h.minors(m - 1)]
        nvars = h.nvars
    ideal = Ideal(QQ, nvars, gens)
    theirs, symbols = sympy_reduced_basis(gens, nvars)
    ours = our_reduced_basis(ideal, symbols)
    assert ours == theirs, label


def test_normal_form_matches_sympy(rng):
    h = hankel_square(3, 1)
    f = h.determinant()
    gens = [f.derivative(i) for i in range(1, 5)]
    ideal = Ideal(QQ, 4, gens)
    basis = gb.buchberger(ideal)
    symbols = sympy.symbols("x1:5")
    sym_basis = sympy.groebner([to_sympy(p, symbols) for p in gens],
                               *symbols, order="grevlex")
    for _ in range(12):
        terms = {tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-5, 5)
                 for _ in range(4)}
        p = Polynomial(QQ, 4, terms)
        ours = gb.normal_form(p, basis)
        _, theirs = sympy.reduced(to_sympy(p, symbols), list(sym_basis.exprs),
                                  *symbols, order="grevlex")
        diff = to_sympy(ours, symbols) - theirs
        assert sympy.expand(diff) == 0


def test_reduced_basis_canonical_under_generator_shuffle(rng):
    h = hankel_square(4, 1)
    f = h.determinant()
    gens = [f.derivative(i) for i in range(1, h.nvars + 1)]
    reference = [p.to_string() for p in gb.buchberger(Ideal(QQ, 7 - 1, gens)).polys]
    for _ in range(3):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        again = [p.to_string() for p in gb.buchberger(Ideal(QQ, 6, shuffled)).polys]
        assert again == reference
