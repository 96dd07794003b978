"""Bracket poset structure, level decomposition, three-term relations, the
step identities, and the fiber-kernel comparisons."""

import math
from fractions import Fraction

import pytest

from hankelkit import minorposet as mp
from hankelkit.polyring import Polynomial, QQ
from hankelkit.symmatrix import hankel_square


def test_poset_m5_matches_diagram():
    poset = mp.build_poset(5)
    assert len(poset.nodes) == 15
    assert poset.level_sizes() == [1, 1, 2, 2, 3, 2, 2, 1, 1]
    assert poset.upper_covers[(1, 2, 4, 5)] == ((1, 2, 4, 6), (1, 3, 4, 5))
    assert poset.upper_covers[(2, 4, 5, 6)] == ((3, 4, 5, 6),)
    assert poset.upper_covers[(3, 4, 5, 6)] == ()


def test_poset_m2_is_chain():
    poset = mp.build_poset(2)
    assert poset.nodes == [(1,), (2,), (3,)]
    assert all(len(v) <= 1 for v in poset.upper_covers.values())


@pytest.mark.parametrize("m", range(2, 9))
def test_poset_counts_and_cover_bounds(m):
    poset = mp.build_poset(m)
    assert len(poset.nodes) == math.comb(m + 1, 2)
    assert all(len(v) <= 2 for v in poset.upper_covers.values())
    assert all(len(poset.lower_covers(b)) <= 2 for b in poset.nodes)
    assert sorted(poset.levels.values()) == sorted(
        mp.bracket_level(b, m) for b in poset.nodes)
    assert min(poset.levels.values()) == 1
    assert max(poset.levels.values()) == 2 * m - 1


def test_cofactor_symmetry_of_square_hankel():
    # the square matrix is symmetric, so slot (t, u) and (u, t) cofactors agree
    for m in (3, 4, 5):
        h = hankel_square(m, 0)
        for t in range(1, m + 1):
            for u in range(t + 1, m + 1):
                assert h.cofactor(t, u) == h.cofactor(u, t)


def test_level_decomposition_m3_values():
    d = mp.derivative_level_decomposition(3)
    assert d.reproduces
    assert d.coefficients[5] == {(1, 2): Fraction(1)}
    assert d.coefficients[1] == {(3, 4): Fraction(1)}
    assert d.coefficients[2] == {(2, 4): Fraction(-2)}
    # the central level needs a coefficient outside {1, 2}
    assert d.coefficients[3] == {(1, 4): Fraction(1), (2, 3): Fraction(3)}


def test_level_decomposition_m5_top_bracket():
    d = mp.derivative_level_decomposition(5)
    row = d.coefficients[9]
    assert set(row) == {(1, 2, 3, 4)}
    assert abs(row[(1, 2, 3, 4)]) == 1


@pytest.mark.parametrize("m", [3, 4, 5])
def test_level_decomposition_reproduces(m):
    assert mp.derivative_level_decomposition(m).reproduces


def test_level_correspondence_matches_degrees():
    # f_k pairs with level 2m - k: the solved rows are exactly there
    m = 4
    d = mp.derivative_level_decomposition(m)
    for k, row in d.coefficients.items():
        for bracket in row:
            assert mp.bracket_level(bracket, m) == 2 * m - k


def test_pluecker_relation_m3_is_classical():
    rels = mp.pluecker_relations(3)
    assert len(rels) == 1
    assert rels[0].to_string() == "[34][12]-[24][13]+[23][14]"


@pytest.mark.parametrize("m", [3, 4, 5])
def test_pluecker_relations_vanish(m):
    rels = mp.pluecker_relations(m)
    assert len(rels) == math.comb(m + 1, 4)
    generic = mp.generic_bracket_minors(m)
    hank = mp.hankel_bracket_minors(m, 0)
    for rel in rels:
        assert rel.substitute(generic).is_zero()
        assert rel.substitute(hank).is_zero()
        assert len(rel.terms) == 3
        for _, a, b in rel.terms:
            assert len(set(a) & set(b)) >= m - 3


@pytest.mark.parametrize("m,r", [(3, 1), (4, 1), (4, 2)])
def test_pluecker_relations_vanish_on_degenerations(m, r):
    assert mp.pluecker_relations_vanish_on_degeneration(m, r)


def test_step_identities_m3():
    rep = mp.pluecker_step_identities(3)
    assert rep.delta == (2, 3) and rep.delta_prime == (1, 4)
    assert rep.lam == 3 and rep.mu == 1
    assert abs(rep.c1) == Fraction(1, 2) and abs(rep.c2) == 1
    assert rep.product_identity and rep.square_identity
    assert rep.displayed_m3_identity is True


def test_step_identities_m4():
    rep = mp.pluecker_step_identities(4)
    assert rep.delta == (1, 3, 4) and rep.delta_prime == (1, 2, 5)
    assert rep.product_identity and rep.square_identity


def test_bracket_relation_tag_polynomial():
    rel = mp.pluecker_relations(3)[0]
    tagged = rel.tag_polynomial(3)
    assert tagged.nvars == 6
    assert len(tagged.terms) == 3


def test_fiber_kernel_m3_matches_grassmannian():
    rep = mp.fiber_kernel_compare(3, 0)
    assert rep.verdict == "pass"
    assert rep.kernels_equal is True
    assert rep.kernel_generators == ["x3*x4-x2*x5+x1*x6"]
    assert rep.quadric_relations == 1 and rep.new_cubic_generators == 0


def test_fiber_kernel_m3_r1_reports_degrees():
    rep = mp.fiber_kernel_compare(3, 1)
    assert rep.verdict == "pass"
    assert rep.generator_degrees == {"2": 2}
    assert rep.quadric_relations == 2


def test_fiber_kernel_m4_r1_scan_finds_cubic():
    rep = mp.fiber_kernel_compare(4, 1, scan_only=True)
    assert rep.quadric_relations == 5
    assert rep.new_cubic_generators == 1


def test_specialization_map_carries_generic_minors_to_hankel():
    # y_{u,v} -> x_{u+v-1} sends each generic bracket minor to the Hankel one
    from hankelkit.polyring import RingMap
    m = 4
    rows, cols = m - 1, m + 1
    n_src = rows * cols
    n_dst = 2 * m - 1
    images = []
    for u in range(1, rows + 1):
        for v in range(1, cols + 1):
            images.append(Polynomial.variable(QQ, n_dst, u + v - 1))
    spec_map = RingMap(n_src, images)
    generic = mp.generic_bracket_minors(m)
    hank = mp.hankel_bracket_minors(m, 0)
    for b in mp.brackets(m):
        assert spec_map.apply(generic[b]) == hank[b]
