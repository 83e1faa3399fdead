"""Sparse exact polynomials over the rationals."""

import random
from fractions import Fraction

import pytest

from dp5brauer.model import chart_substitution
from dp5brauer.multipoly import MultiPoly, monomials_of_degree

UVARS = ("u0", "u1", "u2", "u3", "u4", "u5")


def test_chart_substitution_kills_a_quadric_combination():
    # u1*u5 - u2*u4 - 11*u2*u5 - u3^2 + 11*u3*u4 - 44*u4^2 restricted to the
    # chart collapses to -11*z^3 - 44*y^2*z^2, i.e. vanishes mod 11
    u = {name: MultiPoly.variable(UVARS, name) for name in UVARS}
    q = (
        u["u1"] * u["u5"]
        - u["u2"] * u["u4"]
        - 11 * u["u2"] * u["u5"]
        - u["u3"] * u["u3"]
        + 11 * u["u3"] * u["u4"]
        - 44 * u["u4"] * u["u4"]
    )
    restricted = q.substitute(chart_substitution())
    assert restricted.reduce_mod(11).is_zero()
    assert not restricted.is_zero()


def test_monomials_of_degree_counts():
    assert len(monomials_of_degree(("x", "y", "z"), 5)) == 21
    assert len(monomials_of_degree(UVARS, 2)) == 21
    assert monomials_of_degree(("x",), 0) == [(0,)]


def test_coefficient_vector_roundtrip():
    order = monomials_of_degree(UVARS, 2)
    rng = random.Random(7)
    vec = tuple(rng.randint(-20, 20) for _ in order)
    poly = MultiPoly.from_coefficient_vector(UVARS, order, vec)
    assert tuple(poly.coefficient_vector(order)) == vec


def test_mixed_degrees_refuse_coefficient_vector():
    order = monomials_of_degree(("x", "y"), 2)
    poly = MultiPoly.variable(("x", "y"), "x")
    with pytest.raises(ValueError):
        poly.coefficient_vector(order)


def test_rational_coefficients_survive_arithmetic():
    x = MultiPoly.variable(("x",), "x")
    half = MultiPoly.constant(("x",), Fraction(1, 2))
    poly = (x + half) * (x - half)
    assert poly.evaluate({"x": Fraction(1, 2)}) == 0
    assert poly.evaluate({"x": 1}) == Fraction(3, 4)


def _random_poly(rng, variables, max_terms=6, max_deg=3):
    poly = MultiPoly.zero(variables)
    for _ in range(rng.randint(1, max_terms)):
        term = MultiPoly.constant(variables, rng.randint(-9, 9))
        for v in variables:
            term = term * MultiPoly.variable(variables, v) ** rng.randint(0, max_deg)
        poly = poly + term
    return poly


def test_ring_laws_on_seeded_polynomials():
    rng = random.Random(11)
    variables = ("x", "y")
    for _ in range(60):
        a = _random_poly(rng, variables)
        b = _random_poly(rng, variables)
        c = _random_poly(rng, variables)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()
        point = {"x": rng.randint(-5, 5), "y": rng.randint(-5, 5)}
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)


def test_derivative_product_rule():
    rng = random.Random(13)
    variables = ("x", "y")
    for _ in range(40):
        a = _random_poly(rng, variables)
        b = _random_poly(rng, variables)
        lhs = (a * b).derivative("x")
        rhs = a.derivative("x") * b + a * b.derivative("x")
        assert lhs == rhs


def test_substitute_commutes_with_evaluate():
    rng = random.Random(17)
    uvars = ("u0", "u1")
    inner = {"u0": _random_poly(rng, ("y", "z")), "u1": _random_poly(rng, ("y", "z"))}
    for _ in range(30):
        outer = _random_poly(rng, uvars, max_deg=2)
        composed = outer.substitute(inner)
        point = {"y": rng.randint(-4, 4), "z": rng.randint(-4, 4)}
        direct = outer.evaluate(
            {name: inner[name].evaluate(point) for name in uvars}
        )
        assert composed.evaluate(point) == direct


def test_reduce_mod_drops_multiples():
    x = MultiPoly.variable(("x",), "x")
    poly = 11 * x * x + 5 * x + 22
    reduced = poly.reduce_mod(11)
    assert reduced == 5 * x
    assert poly.reduce_mod(1).is_zero()
