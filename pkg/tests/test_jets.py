"""Tests for truncated series arithmetic and jet transport.

Closed-form jets (tanh, log cosh, composed squares) are cross-checked
against sympy series expansions, which share no code with the package.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from lapasym import jets
from lapasym.errors import JetEvaluationError, OrderMismatchError
from lapasym.jets import (
    JetTrajectory,
    TruncatedSeries,
    compose_scalar,
    directional_derivative,
    exp_series,
    iterated_flow_derivatives,
    ode_jet_transport,
)


def sympy_jet(expr, var, order):
    # Taylor coefficients of expr about 0 as Fractions
    poly = sympy.series(expr, var, 0, order + 1).removeO()
    return [
        Fraction(str(sympy.nsimplify(poly.coeff(var, p))))
        for p in range(order + 1)
    ]


def rational_series(rng, order, zero_constant=False):
    coeffs = [
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order + 1)
    ]
    if zero_constant:
        coeffs[0] = Fraction(0)
    return TruncatedSeries(coeffs)


# ---------------------------------------------------------------- arithmetic

def test_basic_arithmetic_exact():
    a = TruncatedSeries([Fraction(1), Fraction(2), Fraction(3)])
    b = TruncatedSeries([Fraction(0), Fraction(1, 2), Fraction(-1)])
    assert (a + b).coefficients == (Fraction(1), Fraction(5, 2), Fraction(2))
    assert (a - b).coefficients == (Fraction(1), Fraction(3, 2), Fraction(4))
    assert (a * b).coefficients == (Fraction(0), Fraction(1, 2), Fraction(0))
    assert (3 * a).coefficients == (Fraction(3), Fraction(6), Fraction(9))
    assert (a + 5).coefficient(0) == Fraction(6)


def test_product_truncates_to_common_order():
    a = TruncatedSeries([1, 1, 1, 1])
    b = TruncatedSeries([1, -1])
    assert (a * b).order == 1
    assert (a * b).coefficients == (1, 0)


def test_addition_order_mismatch_is_an_error():
    a = TruncatedSeries([1, 2, 3])
    b = TruncatedSeries([1, 2])
    with pytest.raises(OrderMismatchError):
        a + b
    with pytest.raises(OrderMismatchError):
        a - b


def test_power_and_reciprocal():
    one_plus_t = TruncatedSeries([Fraction(1), Fraction(1), Fraction(0), Fraction(0)])
    cube = one_plus_t ** 3
    assert cube.coefficients == (1, 3, 3, 1)
    inv = 1 / one_plus_t
    assert inv.coefficients == (1, -1, 1, -1)
    assert (one_plus_t ** -2).coefficients == (1, -2, 3, -4)


def test_integrate_and_differentiate():
    s = TruncatedSeries([Fraction(2), Fraction(3), Fraction(4)])
    integ = s.integrate()
    assert integ.order == s.order + 1
    assert integ.coefficients == (0, Fraction(2), Fraction(3, 2), Fraction(4, 3))
    assert integ.differentiate() == s
    assert s.derivative_at_zero(2) == 8


def test_evaluate_horner():
    s = TruncatedSeries([Fraction(1), Fraction(-2), Fraction(3)])
    assert s.evaluate(Fraction(1, 2)) == Fraction(3, 4)


# ---------------------------------------------------------------- elementary maps

def test_exp_series_of_plain_variable():
    h = TruncatedSeries([Fraction(0), Fraction(1)], order=6)
    u = exp_series(h)
    expect = [Fraction(1, sympy.factorial(p)) for p in range(7)]
    assert list(u.coefficients) == [Fraction(e) for e in expect]


def test_exp_series_dual_paths_agree_exactly():
    rng = random.Random(31)
    for _ in range(10):
        h = rational_series(rng, 8, zero_constant=True)
        assert exp_series(h, method="bell") == exp_series(h, method="ode")


def test_exp_series_nonzero_constant_float_paths():
    rng = random.Random(32)
    h = TruncatedSeries([0.3] + [rng.uniform(-1, 1) for _ in range(7)])
    a = exp_series(h, method="bell")
    b = exp_series(h, method="ode")
    for x, y in zip(a.coefficients, b.coefficients):
        assert x == pytest.approx(y, rel=1e-14, abs=1e-15)


def test_exp_series_times_exp_of_negation_is_one():
    rng = random.Random(33)
    for _ in range(8):
        h = rational_series(rng, 7, zero_constant=True)
        prod = exp_series(h) * exp_series(-h)
        assert prod.coefficient(0) == 1
        assert all(c == 0 for c in prod.coefficients[1:])


def test_exp_series_unknown_method_rejected():
    with pytest.raises(ValueError):
        exp_series(TruncatedSeries([0, 1]), method="rk4")


def test_sin_cos_sqrt_log_series_match_sympy():
    t = sympy.symbols("t")
    h = TruncatedSeries(
        [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(1, 3)], order=6
    )
    expr = t - t ** 2 / 2 + t ** 3 / 3
    for ours, ref in (
        (jets.sin(h), sympy.sin(expr)),
        (jets.cos(h), sympy.cos(expr)),
        (jets.sqrt(1 + h), sympy.sqrt(1 + expr)),
        (jets.log(1 + h), sympy.log(1 + expr)),
    ):
        assert list(ours.coefficients) == sympy_jet(ref, t, 6)


def test_scalar_dispatch_keeps_exact_zeros():
    assert jets.exp(Fraction(0)) == 1 and isinstance(jets.exp(Fraction(0)), int)
    assert jets.sin(0) == 0
    assert jets.cos(Fraction(0)) == 1
    assert jets.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert jets.log(1) == 0
    assert jets.exp(0.5) == pytest.approx(1.6487212707001282)


# ---------------------------------------------------------------- transport

def test_transport_tanh_jet():
    # z' = 1 - z^2 from 0 is tanh
    field = lambda c: [1 - c[0] ** 2]
    traj = ode_jet_transport(field, [Fraction(0)], order=7)
    got = list(traj.coordinates[0].coefficients)
    assert got[:6] == [0, 1, 0, Fraction(-1, 3), 0, Fraction(2, 15)]
    t = sympy.symbols("t")
    assert got == sympy_jet(sympy.tanh(t), t, 7)


def test_transport_order_stability():
    field = lambda c: [1 - c[0] ** 2]
    low = ode_jet_transport(field, [Fraction(0)], order=4)
    high = ode_jet_transport(field, [Fraction(0)], order=9)
    assert high.coordinates[0].truncated(4) == low.coordinates[0]


def test_transport_two_dimensional_linear_system():
    # (x, y)' = (y, -x) from (1, 0) is (cos, sin(-t))... x = cos t, y = -sin t
    field = lambda c: [c[1], -1 * c[0]]
    traj = ode_jet_transport(field, [Fraction(1), Fraction(0)], order=6)
    t = sympy.symbols("t")
    assert list(traj.coordinates[0].coefficients) == sympy_jet(sympy.cos(t), t, 6)
    assert list(traj.coordinates[1].coefficients) == sympy_jet(-sympy.sin(t), t, 6)


def test_transport_rejects_bad_field():
    import math as pymath

    bad = lambda c: [pymath.sin(c[0])]  # math.sin cannot take a series
    with pytest.raises(JetEvaluationError):
        ode_jet_transport(bad, [0.0], order=3)
    wrong_arity = lambda c: [c[0], c[0]]
    with pytest.raises(JetEvaluationError):
        ode_jet_transport(wrong_arity, [0.0], order=3)


def test_compose_scalar_square_of_tanh():
    field = lambda c: [1 - c[0] ** 2]
    traj = ode_jet_transport(field, [Fraction(0)], order=7)
    sq = compose_scalar(lambda c: c[0] ** 2, traj)
    t = sympy.symbols("t")
    assert list(sq.coefficients) == sympy_jet(sympy.tanh(t) ** 2, t, 7)


def test_compose_scalar_wraps_constants():
    traj = ode_jet_transport(lambda c: [1 + 0 * c[0]], [Fraction(0)], order=3)
    const = compose_scalar(lambda c: 7, traj)
    assert const.coefficients == (7, 0, 0, 0)


# ------------------------------------------------------- nested derivatives

def test_directional_derivative_matches_sympy():
    x0s, x1s = sympy.symbols("x0 x1")
    fn_expr = x0s ** 2 * x1s + 3 * x1s
    field_expr = (x1s, x0s - x1s ** 2)

    fn = lambda p: p[0] ** 2 * p[1] + 3 * p[1]
    field = lambda p: [p[1], p[0] - p[1] ** 2]
    point = [Fraction(1, 2), Fraction(-1, 3)]

    values = iterated_flow_derivatives(fn, field, point, 3)

    expr = fn_expr
    subs = {x0s: sympy.Rational(1, 2), x1s: sympy.Rational(-1, 3)}
    for m in range(4):
        expect = Fraction(str(expr.subs(subs)))
        assert values[m] == expect
        expr = sympy.expand(
            field_expr[0] * sympy.diff(expr, x0s)
            + field_expr[1] * sympy.diff(expr, x1s)
        )


def test_directional_derivative_of_constant_is_zero():
    d = directional_derivative(lambda p: 42, lambda p: [1, 1])
    assert d([Fraction(0), Fraction(0)]) == 0


def test_flow_derivatives_match_trajectory_composition():
    # L^m f at the start point equals m! times coefficient m of f along the flow
    fn = lambda p: p[0] ** 3 - 2 * p[0] * p[1]
    field = lambda p: [p[1] + 1, p[0] * p[1] - p[0]]
    point = [Fraction(1, 3), Fraction(2, 5)]
    values = iterated_flow_derivatives(fn, field, point, 5)
    traj = ode_jet_transport(field, point, order=5)
    along = compose_scalar(fn, traj)
    for m in range(6):
        assert values[m] == along.derivative_at_zero(m)
