"""Truncated univariate power series (jets) and jet transport along flows.

A :class:`TruncatedSeries` stores coefficients ``c[0..N]`` of a power
series truncated at a fixed order ``N``.  Coefficients can be exact
rationals, floats, or again truncated series (nested jets), as long as
they support ring arithmetic; all algorithms here only ever add,
multiply, and rescale coefficients, so exact inputs give exact outputs.

Conventions shared by the whole package:

* addition and subtraction require operands of matching order (a
  mismatch raises :class:`~lapasym.errors.OrderMismatchError`, it is
  never resized implicitly); multiplication truncates to the smaller
  order; scalars combine freely with any order,
* :meth:`TruncatedSeries.integrate` maps order ``N`` to ``N + 1`` and
  always produces a zero constant term,
* rescaling by exact rationals is used internally wherever a division
  by an integer occurs, so Fraction-valued series never leave the
  rational field.

On top of the arithmetic sit the series versions of the elementary
functions (:func:`exp_series` with two independent evaluation paths,
``sin``/``cos``/``sqrt``/``log``), Picard iteration for polynomial-time
jet transport along an ODE flow (:func:`ode_jet_transport`), composition
of scalar maps with a transported trajectory (:func:`compose_scalar`),
and nested-jet directional derivatives (:func:`directional_derivative`),
which evaluate iterated "derivative along a vector field" operators
without any symbolic differentiation.

The module-level :func:`exp`, :func:`sin`, :func:`cos`, :func:`sqrt`,
:func:`log` dispatch on the argument type (series or scalar), which lets
model callables be written once as ordinary compositions and evaluated
on points and on jets alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .bell import complete_bell
from .errors import JetEvaluationError, OrderMismatchError

__all__ = [
    "TruncatedSeries",
    "JetTrajectory",
    "exp_series",
    "ode_jet_transport",
    "compose_scalar",
    "directional_derivative",
    "iterated_flow_derivatives",
    "exp",
    "sin",
    "cos",
    "sqrt",
    "log",
]


class TruncatedSeries:
    """Power series truncated at a fixed order.

    Parameters
    ----------
    coefficients : sequence
        Coefficients ``c[0], c[1], ...`` in ascending powers.
    order : int, optional
        Pad (with integer zeros) or reject to this order.  Default is
        ``len(coefficients) - 1``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Sequence[Any], order: int | None = None):
        coeffs = list(coefficients)
        if not coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        if order is not None:
            if order + 1 < len(coeffs):
                raise ValueError(
                    f"{len(coeffs)} coefficients exceed requested order {order}"
                )
            coeffs.extend([0] * (order + 1 - len(coeffs)))
        self._coeffs = tuple(coeffs)

    # ------------------------------------------------------------ basics

    @classmethod
    def constant(cls, value: Any, order: int) -> "TruncatedSeries":
        """The constant jet ``value + 0*t + ... + 0*t**order``."""
        return cls([value], order=order)

    @classmethod
    def variable(cls, value: Any, order: int) -> "TruncatedSeries":
        """The coordinate jet ``value + t`` truncated at ``order`` (>= 1)."""
        if order < 1:
            raise ValueError("a coordinate jet needs order >= 1")
        return cls([value, 1], order=order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> tuple:
        return self._coeffs

    def coefficient(self, p: int) -> Any:
        """Coefficient of ``t**p`` (0 beyond the truncation order)."""
        if p < 0:
            raise ValueError("negative power")
        return self._coeffs[p] if p <= self.order else 0

    def derivative_at_zero(self, p: int) -> Any:
        """``p``-th derivative at 0, i.e. ``p! * c[p]``."""
        return math.factorial(p) * self.coefficient(p)

    def truncated(self, order: int) -> "TruncatedSeries":
        """Copy truncated (or zero-padded) to the given order."""
        if order < 0:
            raise ValueError("order must be nonnegative")
        return TruncatedSeries(self._coeffs[: order + 1], order=order)

    def evaluate(self, t: Any) -> Any:
        """Horner evaluation of the truncated polynomial at ``t``."""
        acc: Any = self._coeffs[-1]
        for c in reversed(self._coeffs[:-1]):
            acc = acc * t + c
        return acc

    # ------------------------------------------------------------ arithmetic

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"series orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check_order(other)
            return TruncatedSeries(
                [a + b for a, b in zip(self._coeffs, other._coeffs)]
            )
        coeffs = list(self._coeffs)
        coeffs[0] = coeffs[0] + other
        return TruncatedSeries(coeffs)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self._coeffs])

    def __sub__(self, other: Any) -> "TruncatedSeries":
        return self + (-other if isinstance(other, TruncatedSeries) else -1 * other)

    def __rsub__(self, other: Any) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            a, b = self._coeffs, other._coeffs
            out = []
            for p in range(n + 1):
                acc: Any = a[0] * b[p]
                for i in range(1, p + 1):
                    acc = acc + a[i] * b[p - i]
                out.append(acc)
            return TruncatedSeries(out)
        return TruncatedSeries([c * other for c in self._coeffs])

    def __rmul__(self, other: Any) -> "TruncatedSeries":
        return TruncatedSeries([other * c for c in self._coeffs])

    def __truediv__(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * _reciprocal(other)
        return self * _invert_scalar(other)

    def __rtruediv__(self, other: Any) -> "TruncatedSeries":
        return _reciprocal(self) * other

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if not isinstance(exponent, int):
            raise TypeError("series powers take integer exponents")
        if exponent < 0:
            return _reciprocal(self) ** (-exponent)
        result = TruncatedSeries.constant(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # ------------------------------------------------------------ calculus

    def integrate(self) -> "TruncatedSeries":
        """Antiderivative with zero constant term; order grows by one."""
        out: list[Any] = [0]
        for p, c in enumerate(self._coeffs):
            out.append(c * Fraction(1, p + 1))
        return TruncatedSeries(out)

    def differentiate(self) -> "TruncatedSeries":
        """Term-by-term derivative; order shrinks by one."""
        if self.order == 0:
            return TruncatedSeries([0 * self._coeffs[0]])
        return TruncatedSeries(
            [p * c for p, c in enumerate(self._coeffs) if p > 0]
        )

    # ------------------------------------------------------------ misc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncatedSeries):
            return self._coeffs == other._coeffs
        return NotImplemented

    __hash__ = None  # mutable-adjacent semantics; not intended as dict keys

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self._coeffs)!r})"


def as_series(value: Any, order: int) -> TruncatedSeries:
    """Wrap scalars as constant jets; pass series through (order-checked)."""
    if isinstance(value, TruncatedSeries):
        if value.order != order:
            raise OrderMismatchError(
                f"series order {value.order} where {order} expected"
            )
        return value
    return TruncatedSeries.constant(value, order)


# ---------------------------------------------------------------- scalars

def _is_exact(value: Any) -> bool:
    return isinstance(value, (int, Fraction))


def _invert_scalar(value: Any) -> Any:
    if isinstance(value, TruncatedSeries):
        return _reciprocal(value)
    if _is_exact(value):
        return Fraction(1, 1) / value
    return 1.0 / value


def exp(value: Any) -> Any:
    """Exponential of a scalar or truncated series."""
    if isinstance(value, TruncatedSeries):
        return exp_series(value)
    if _is_exact(value) and value == 0:
        return 1
    return math.exp(value)


def sin(value: Any) -> Any:
    if isinstance(value, TruncatedSeries):
        return _sin_cos_series(value)[0]
    if _is_exact(value) and value == 0:
        return value
    return math.sin(value)


def cos(value: Any) -> Any:
    if isinstance(value, TruncatedSeries):
        return _sin_cos_series(value)[1]
    if _is_exact(value) and value == 0:
        return 1
    return math.cos(value)


def sqrt(value: Any) -> Any:
    """Square root; exact on perfect squares of ints and rationals."""
    if isinstance(value, TruncatedSeries):
        return _sqrt_series(value)
    if isinstance(value, int) and value >= 0:
        r = math.isqrt(value)
        if r * r == value:
            return r
    if isinstance(value, Fraction) and value >= 0:
        rn, rd = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if rn * rn == value.numerator and rd * rd == value.denominator:
            return Fraction(rn, rd)
    return math.sqrt(value)


def log(value: Any) -> Any:
    if isinstance(value, TruncatedSeries):
        return _log_series(value)
    if _is_exact(value) and value == 1:
        return 0
    return math.log(value)


# ---------------------------------------------------------------- series maps

def exp_series(h: TruncatedSeries, method: str = "bell") -> TruncatedSeries:
    """Exponential of a truncated series.

    Two independent evaluation paths are kept deliberately:

    * ``"bell"`` builds coefficient ``j`` as
      ``B_j(h'(0), ..., h^(j)(0)) / j!`` from the complete Bell
      polynomial of the factorial-scaled tail coefficients,
    * ``"ode"`` solves ``u' = h' u`` by the triangular coefficient
      recursion.

    Both multiply the result by ``exp(h(0))``; with an exact zero
    constant term the output stays in the coefficient ring of ``h``.
    """
    order = h.order
    c0 = h.coefficient(0)
    if method == "bell":
        args = [h.derivative_at_zero(p) for p in range(1, order + 1)]
        tail = [1]
        for j in range(1, order + 1):
            tail.append(complete_bell(j, args[:j]) * Fraction(1, math.factorial(j)))
    elif method == "ode":
        tail = [1]
        for n in range(1, order + 1):
            acc: Any = 0
            for i in range(1, n + 1):
                acc = acc + i * h.coefficient(i) * tail[n - i]
            tail.append(acc * Fraction(1, n))
    else:
        raise ValueError(f"unknown exp_series method {method!r}")
    lead = exp(c0)
    return TruncatedSeries([lead * c for c in tail])


def _reciprocal(s: TruncatedSeries) -> TruncatedSeries:
    c0 = s.coefficient(0)
    inv0 = _invert_scalar(c0)
    out: list[Any] = [inv0]
    for n in range(1, s.order + 1):
        acc: Any = 0
        for i in range(1, n + 1):
            acc = acc + s.coefficient(i) * out[n - i]
        out.append(-1 * (inv0 * acc))
    return TruncatedSeries(out)


def _sqrt_series(s: TruncatedSeries) -> TruncatedSeries:
    r0 = sqrt(s.coefficient(0))
    inv = _invert_scalar(2 * r0)
    out: list[Any] = [r0]
    for n in range(1, s.order + 1):
        acc: Any = 0
        for i in range(1, n):
            acc = acc + out[i] * out[n - i]
        out.append((s.coefficient(n) - acc) * inv)
    return TruncatedSeries(out)


def _sin_cos_series(h: TruncatedSeries) -> tuple[TruncatedSeries, TruncatedSeries]:
    s0, c0 = sin(h.coefficient(0)), cos(h.coefficient(0))
    s: list[Any] = [s0]
    c: list[Any] = [c0]
    for n in range(1, h.order + 1):
        sa: Any = 0
        ca: Any = 0
        for i in range(1, n + 1):
            hi = i * h.coefficient(i)
            sa = sa + hi * c[n - i]
            ca = ca + hi * s[n - i]
        s.append(sa * Fraction(1, n))
        c.append(-1 * ca * Fraction(1, n))
    return TruncatedSeries(s), TruncatedSeries(c)


def _log_series(s: TruncatedSeries) -> TruncatedSeries:
    c0 = s.coefficient(0)
    inv0 = _invert_scalar(c0)
    out: list[Any] = [log(c0)]
    for n in range(1, s.order + 1):
        acc: Any = n * s.coefficient(n)
        for i in range(1, n):
            acc = acc - i * out[i] * s.coefficient(n - i)
        out.append(acc * inv0 * Fraction(1, n))
    return TruncatedSeries(out)


# ---------------------------------------------------------------- transport

@dataclass(frozen=True)
class JetTrajectory:
    """Coordinates of an ODE solution as jets in the time variable."""

    coordinates: tuple[TruncatedSeries, ...]

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    @property
    def order(self) -> int:
        return self.coordinates[0].order


def ode_jet_transport(
    field: Callable[[Sequence[TruncatedSeries]], Sequence[Any]],
    start: Sequence[Any],
    order: int,
) -> JetTrajectory:
    """Taylor jet of the solution of ``x' = field(x)``, ``x(0) = start``.

    Picard iteration on truncated series: each pass substitutes the
    current jet into the field and integrates, which fixes at least one
    more coefficient, so at most ``order`` passes are needed.  The field
    must map a sequence of series to a sequence of series (or scalar
    constants); anything it cannot handle surfaces as
    :class:`~lapasym.errors.JetEvaluationError`.
    """
    if order < 1:
        raise ValueError("transport order must be >= 1")
    dim = len(start)
    coords = [TruncatedSeries.constant(v, order) for v in start]
    for _ in range(order):
        try:
            rhs = list(field(coords))
        except (TypeError, AttributeError) as exc:
            raise JetEvaluationError(
                f"flow field cannot be evaluated on jets: {exc}"
            ) from exc
        if len(rhs) != dim:
            raise JetEvaluationError(
                f"flow field returned {len(rhs)} components for dimension {dim}"
            )
        new = []
        for i in range(dim):
            r = as_series(rhs[i], order) if not isinstance(rhs[i], TruncatedSeries) \
                else rhs[i]
            integ = r.truncated(order - 1).integrate()
            new.append(integ + start[i])
        if all(a == b for a, b in zip(new, coords)):
            coords = new
            break
        coords = new
    return JetTrajectory(tuple(coords))


def compose_scalar(
    fn: Callable[[Sequence[TruncatedSeries]], Any],
    trajectory: JetTrajectory,
) -> TruncatedSeries:
    """Jet of ``t -> fn(x(t))`` along a transported trajectory."""
    try:
        value = fn(trajectory.coordinates)
    except (TypeError, AttributeError) as exc:
        raise JetEvaluationError(
            f"scalar map cannot be evaluated on jets: {exc}"
        ) from exc
    return as_series(value, trajectory.order)


# ------------------------------------------------------- nested derivatives

def directional_derivative(
    fn: Callable[[Sequence[Any]], Any],
    field: Callable[[Sequence[Any]], Sequence[Any]],
) -> Callable[[Sequence[Any]], Any]:
    """The map ``x -> sum_i field_i(x) * d fn / d x_i (x)``.

    Partial derivatives are read off first-order jets, so the returned
    callable again accepts points whose entries are scalars or series,
    and the construction can be nested to any depth.
    """

    def derived(point: Sequence[Any]) -> Any:
        vec = field(point)
        total: Any = 0
        for i in range(len(point)):
            jet_point = [
                TruncatedSeries.variable(point[k], 1)
                if k == i
                else TruncatedSeries.constant(point[k], 1)
                for k in range(len(point))
            ]
            value = fn(jet_point)
            partial = (
                value.coefficient(1) if isinstance(value, TruncatedSeries) else 0
            )
            total = total + vec[i] * partial
        return total

    return derived


def iterated_flow_derivatives(
    fn: Callable[[Sequence[Any]], Any],
    field: Callable[[Sequence[Any]], Sequence[Any]],
    point: Sequence[Any],
    count: int,
) -> list[Any]:
    """Values ``[fn, L fn, ..., L^count fn]`` at ``point``.

    ``L`` is the derivative along ``field``; powers are built by nesting
    :func:`directional_derivative`, with no ODE solve involved.
    """
    values = []
    current = fn
    for m in range(count + 1):
        values.append(current(point))
        if m < count:
            current = directional_derivative(current, field)
    return values
