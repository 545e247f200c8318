"""Two-row tableaux, hook-length counts, and the quadrics cutting the
tangential variety out of the secant variety."""

from __future__ import annotations

import functools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realrank2 import tableaux as tb
from realrank2.multipoly import MultiPoly

basis = functools.lru_cache(maxsize=None)(tb.quadric_basis)
preimage = functools.lru_cache(maxsize=None)(tb.preimage_quadric)

TABLE1 = {
    2: [1, 3, 6, 10, 15, 21, 28],
    3: [15, 60, 153, 315, 570, 945, 1470],
    4: [105, 540, 1711, 4270, 9190, 17850, 32130],
    5: [490, 3150, 12145, 36155, 91395, 205905, 425425],
}


def poly_from_names(variables, name_terms) -> MultiPoly:
    terms = {}
    for names, coeff in name_terms:
        key = [0] * len(variables)
        for name in names:
            key[variables.index(name)] += 1
        terms[tuple(key)] = coeff
    return MultiPoly(variables, terms)


def test_enumeration_matches_hook_length_formula():
    for n in (2, 3, 4):
        for d in range(4, 9):
            for k in range(0, d + 1, 2):
                assert len(tb.enumerate_tableaux(n, d, k)) == tb.hook_length_dim(n, d, k)


def test_table_of_quadric_space_dimensions():
    for n, row in TABLE1.items():
        got = [sum(tb.hook_length_dim(n, d, k) for k in range(4, d + 1, 2))
               for d in range(4, 11)]
        assert got == row


def test_basis_size_matches_table():
    for (n, d) in [(2, 4), (2, 5), (2, 6), (3, 4)]:
        assert len(basis(n, d)) == TABLE1[n][d - 4]


def test_preimage_binary_conic():
    t = tb.TwoRowTableau(2, 2, 2, (1, 1), (2, 2))
    g = preimage(t, allow_k2=True)
    expected = poly_from_names(g.polynomial.variables,
                               [(("x0", "x2"), Fraction(1)), (("x1", "x1"), Fraction(-1))])
    assert g.polynomial == expected


def test_preimage_binary_quartic():
    t = tb.TwoRowTableau(2, 4, 4, (1, 1, 1, 1), (2, 2, 2, 2))
    g = preimage(t)
    expected = poly_from_names(g.polynomial.variables,
                               [(("x0", "x4"), Fraction(1)), (("x1", "x3"), Fraction(-4)),
                                (("x2", "x2"), Fraction(3))])
    assert g.polynomial == expected


def test_preimage_ternary_quartics():
    t1 = tb.TwoRowTableau(3, 4, 4, (1, 1, 1, 1), (2, 2, 2, 2))
    g1 = preimage(t1)
    expected1 = poly_from_names(g1.polynomial.variables,
                                [(("x400", "x040"), Fraction(1)), (("x310", "x130"), Fraction(-4)),
                                 (("x220", "x220"), Fraction(3))])
    assert g1.polynomial == expected1

    t2 = tb.TwoRowTableau(3, 4, 4, (1, 1, 1, 2), (2, 3, 3, 3))
    g2 = preimage(t2)
    expected2 = poly_from_names(g2.polynomial.variables,
                                [(("x310", "x013"), Fraction(1)), (("x301", "x022"), Fraction(-1)),
                                 (("x220", "x103"), Fraction(-1)), (("x211", "x112"), Fraction(-1)),
                                 (("x202", "x121"), Fraction(2))])
    assert g2.polynomial == expected2


def test_quintic_basis_golden():
    q0, q1, q2 = (g.polynomial for g in basis(2, 5))
    variables = q0.variables
    assert q0 == poly_from_names(variables, [(("x2", "x2"), Fraction(3)), (("x1", "x3"), Fraction(-4)),
                                             (("x0", "x4"), Fraction(1))])
    assert q1 == poly_from_names(variables, [(("x2", "x3"), Fraction(2)), (("x1", "x4"), Fraction(-3)),
                                             (("x0", "x5"), Fraction(1))])
    assert q2 == poly_from_names(variables, [(("x3", "x3"), Fraction(3)), (("x2", "x4"), Fraction(-4)),
                                             (("x1", "x5"), Fraction(1))])


def test_quartic_basis_is_single_quadric():
    gens = basis(2, 4)
    assert len(gens) == 1
    assert gens[0].tableau.label() == "f_1111_2222"


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 4), (2, 5), (3, 4)]), st.integers(0, 10_000))
def test_pushforward_reproduces_target(nd, seed):
    n, d = nd
    rng = random.Random(seed)
    tableaux = [t for k in range(4, d + 1, 2) for t in tb.enumerate_tableaux(n, d, k)]
    t = tableaux[rng.randrange(len(tableaux))]
    g = preimage(t)
    a = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
    b = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
    point = dict(zip(tb.coordinate_variables(n, d),
                     tb.secant_point(a, b, d)))
    target_value = tb.target_polynomial(t).evaluate(
        {f"a{i + 1}": v for i, v in enumerate(a)} | {f"b{i + 1}": v for i, v in enumerate(b)})
    assert g.polynomial.evaluate(point) == target_value


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 5), (2, 6), (3, 4), (3, 5)]), st.integers(0, 10_000))
def test_basis_vanishes_at_tangential_points(nd, seed):
    n, d = nd
    rng = random.Random(seed)
    a = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
    b = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
    point = dict(zip(tb.coordinate_variables(n, d), tb.tangential_point(a, b, d)))
    for g in basis(n, d):
        assert g.polynomial.evaluate(point) == 0


def test_k2_preimage_does_not_vanish_on_tangential_variety():
    for n, d in [(2, 5), (2, 6), (3, 4), (3, 5)]:
        t = tb.enumerate_tableaux(n, d, 2)[0]
        g = preimage(t, allow_k2=True)
        a = [Fraction(2 + i) for i in range(n)]
        b = [Fraction(1 - i) for i in range(n)]
        point = dict(zip(tb.coordinate_variables(n, d), tb.tangential_point(a, b, d)))
        assert g.polynomial.evaluate(point) != 0


def test_basis_does_not_vanish_at_generic_secant_points():
    for n, d in [(2, 4), (2, 5)]:
        a = [Fraction(1), Fraction(2)][:n]
        b = [Fraction(3), Fraction(-1)][:n]
        point = dict(zip(tb.coordinate_variables(n, d), tb.secant_point(a, b, d)))
        values = [g.polynomial.evaluate(point) for g in basis(n, d)]
        assert any(v != 0 for v in values)


def test_preimage_rejects_small_k_without_flag():
    t = tb.TwoRowTableau(2, 4, 2, (1, 1, 1, 1, 1, 1), (2, 2))
    with pytest.raises(tb.BadShape):
        preimage(t)


def test_quadric_basis_rejects_low_degree():
    with pytest.raises(tb.DegreeTooSmall):
        basis(2, 3)


def test_coordinate_name_conventions():
    assert tb.coordinate_name((4, 0)) == "x0"
    assert tb.coordinate_name((0, 4)) == "x4"
    assert tb.coordinate_name((2, 2, 0)) == "x220"
    assert tb.coordinate_name((0, 11, 1)) == "x0_11_1"
