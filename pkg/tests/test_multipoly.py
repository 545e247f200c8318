"""Exact multivariate polynomial ring: arithmetic, division, determinants,
resultants.  Oracles are independent evaluations at random rational points."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realrank2.multipoly import MultiPoly, NotDivisible, as_fraction, det_bareiss, grlex_key, resultant

VARS = ("x", "y", "z")

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=6)
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, coeffs, max_size=6).map(lambda t: MultiPoly(VARS, t))


def rand_point(rng: random.Random) -> dict:
    return {v: Fraction(rng.randint(-7, 7), rng.randint(1, 5)) for v in VARS}


def test_zero_coefficients_dropped():
    p = MultiPoly(VARS, {(1, 0, 0): Fraction(0), (0, 1, 0): Fraction(2)})
    assert (1, 0, 0) not in p.terms
    assert p == MultiPoly(VARS, {(0, 1, 0): 2})


def test_grlex_leading_term():
    p = MultiPoly(VARS, {(2, 0, 0): 1, (1, 1, 1): 1, (0, 0, 2): 1})
    assert p.leading_term()[0] == (1, 1, 1)
    assert grlex_key((2, 0, 0)) < grlex_key((1, 1, 1))


def test_to_text_ascending_golden():
    p = MultiPoly(("x0", "x1", "x2", "x3", "x4"),
                  {(1, 0, 0, 0, 1): 1, (0, 1, 0, 1, 0): -4, (0, 0, 2, 0, 0): 3})
    assert p.to_text() == "3*x2^2 - 4*x1*x3 + 1*x0*x4"


def test_as_fraction_parses_ratio_strings():
    assert as_fraction("-3/4") == Fraction(-3, 4)
    assert as_fraction(2) == Fraction(2)


@settings(max_examples=50, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms_via_evaluation(p, q, r):
    rng = random.Random(7)
    pt = rand_point(rng)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert ((p + q) * r).evaluate(pt) == (p * r + q * r).evaluate(pt)
    assert (p - p).is_zero()


@settings(max_examples=50, deadline=None)
@given(polys, polys)
def test_exact_div_recovers_factor(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_div(q) == p


def test_exact_div_raises_on_non_multiple():
    x = MultiPoly.variable("x", VARS)
    y = MultiPoly.variable("y", VARS)
    with pytest.raises(NotDivisible):
        (x * x + y).exact_div(x)


@settings(max_examples=50, deadline=None)
@given(polys, polys)
def test_substitute_matches_evaluation(p, q):
    rng = random.Random(11)
    pt = rand_point(rng)
    composed = p.substitute({"x": q})
    direct = p.evaluate({"x": q.evaluate(pt), "y": pt["y"], "z": pt["z"]})
    assert composed.evaluate(pt) == direct


def test_coefficients_in_reassembles():
    rng = random.Random(3)
    p = MultiPoly(VARS, {(2, 1, 0): Fraction(3), (0, 0, 2): Fraction(-1, 2), (1, 1, 1): 5})
    parts = p.coefficients_in("y")
    y = MultiPoly.variable("y", VARS)
    total = MultiPoly.zero(VARS)
    power = MultiPoly.constant(1, VARS)
    for part in parts:
        total = total + part.extend(VARS) * power
        power = power * y
    assert total == p


def test_content_and_normalized():
    p = MultiPoly(VARS, {(1, 0, 0): Fraction(4, 3), (0, 1, 0): Fraction(-2, 3)})
    n = p.normalized()
    assert n.content() == 1
    assert n.leading_term()[1] > 0
    assert n == MultiPoly(VARS, {(1, 0, 0): 2, (0, 1, 0): -1})


def test_det_bareiss_matches_cofactor_expansion():
    rng = random.Random(5)
    names = ("a", "b", "c", "d")
    mat = [[MultiPoly(names, {tuple(rng.randint(0, 1) for _ in names): Fraction(rng.randint(-4, 4))})
            for _ in range(3)] for _ in range(3)]
    det = det_bareiss(mat)
    cof = (mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1])
           - mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0])
           + mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0]))
    assert det == cof


@settings(max_examples=30, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_resultant_vanishes_iff_common_root(a, b, c, d):
    # p = (x - a y)(x - b y), q = (x - c y)(x - d y): res = 0 iff roots meet
    x = MultiPoly.variable("x", ("x", "y"))
    y = MultiPoly.variable("y", ("x", "y"))
    p = (x - a * y) * (x - b * y)
    q = (x - c * y) * (x - d * y)
    res = resultant(p, q, "x")
    shares = {a, b} & {c, d}
    point = {"y": Fraction(1)}
    value = res.evaluate(point)
    assert (value == 0) == bool(shares)


def test_resultant_product_formula():
    # res_x(p, q) over y=1 equals lead^deg * prod q(root) for exact roots
    x = MultiPoly.variable("x", ("x", "y"))
    y = MultiPoly.variable("y", ("x", "y"))
    p = (x - 2 * y) * (x + 3 * y)
    q = x * x - 5 * y * y
    res = resultant(p, q, "x").evaluate({"y": Fraction(1)})
    expected = (Fraction(4) - 5) * (Fraction(9) - 5)
    assert res == expected


def test_json_round_trip():
    p = MultiPoly(VARS, {(1, 2, 0): Fraction(-7, 2), (0, 0, 3): 4})
    assert MultiPoly.from_json(p.to_json()) == p
