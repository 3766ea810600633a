"""Hamiltonian models and the geometric front-end of the expansion.

A :class:`HamiltonianModel` packages the data of a compact group action
near its zero level in chart coordinates: the moment-map component
``phi`` per direction, the transport field ``flow_field``, the
Laplacian ``laplacian_phi``, the zero-level points, and the orbit
volume.  All three scalar maps must be jet-evaluable (built from ring
arithmetic and the dispatched elementary functions of :mod:`.jets`),
which is what lets one definition drive both the series pipeline and
pointwise numeric work.

From a model, this module extracts per-direction radial series
(:func:`radial_profile`), bridges them to the generic expansion engine
(:func:`geometric_expansion`), and evaluates the corrected and
uncorrected densities both by direct numerics (:func:`j_a_numeric`,
:func:`density_I`, :func:`density_J`) and by their series predictions.
Two additional, deliberately independent evaluations of the expansion
coefficients live here as cross-checks: :func:`zeta_geometric` (the raw
partition/composition sums) and :func:`zeta2_reference` (the closed
second coefficient).  :func:`jacobian_tau_check` compares the product
formula for the transport Jacobian against finite differences.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, NamedTuple, Sequence

from scipy.integrate import solve_ivp

from .bell import composition_tuples, generalized_binomial, partition_multinomial, \
    partition_tuples
from .engine import ExpansionConfig, ExpansionResult, RadialProfile, SphereRule, \
    expansion_series, gamma_value, numeric_laplace_integral, sphere_rule
from .errors import DomainError, QuadratureError
from .exprs import compile_expression
from .jets import TruncatedSeries, compose_scalar, exp_series, \
    iterated_flow_derivatives, ode_jet_transport

__all__ = [
    "HamiltonianModel",
    "DensityRequest",
    "RadialSeries",
    "radial_profile",
    "direction_atoms",
    "expansion_profile",
    "profile_from_atoms",
    "geometric_expansion",
    "zeta_geometric",
    "zeta_geometric_from_atoms",
    "zeta2_reference",
    "zeta2_reference_from_atoms",
    "leading_term_identity",
    "j_a_numeric",
    "density_I",
    "density_J",
    "density_I_series",
    "density_J_series",
    "density_limits",
    "jacobian_tau_check",
    "scaled_generator_model",
    "scaled_volume_model",
    "builtin_sphere_model",
    "gaussian_test_model",
    "quartic_test_model",
    "load_model",
    "resolve_model",
]

# exp(-x) underflows near x = 745; cutoffs leave a wide margin past that
_PHASE_CUTOFF = 760.0
_MAX_FLOW_SPAN = 4096.0


@dataclass(frozen=True)
class HamiltonianModel:
    """Chart-level data of a group action near its zero level.

    ``phi(omega, point)``, ``flow_field(omega, point)`` and
    ``laplacian_phi(omega, point)`` take a direction tuple of length
    ``group_dim`` and a chart point of length ``chart_dim``; the maps
    must be odd in ``omega`` (direction linearity) and accept series
    entries.  ``orbit_volume(point)`` is plain numeric.  ``zero_chart``
    and ``chart_density`` are optional and only needed by the Jacobian
    check: a parametrization ``s -> point`` of the zero level and the
    density of the volume form in chart coordinates.
    """

    group_dim: int
    chart_dim: int
    phi: Callable[[Sequence[Any], Sequence[Any]], Any]
    flow_field: Callable[[Sequence[Any], Sequence[Any]], Sequence[Any]]
    laplacian_phi: Callable[[Sequence[Any], Sequence[Any]], Any]
    zero_points: tuple
    orbit_volume: Callable[[Sequence[Any]], float]
    name: str = "model"
    zero_chart: Callable[[float], Sequence[float]] | None = None
    chart_density: Callable[[Sequence[float]], float] | None = None

    def __post_init__(self):
        if self.group_dim < 1 or self.chart_dim < 1:
            raise DomainError("model dimensions must be positive")
        if not self.zero_points:
            raise DomainError("a model needs at least one zero-level point")


@dataclass(frozen=True)
class DensityRequest:
    """One density evaluation job: weight, k-values, base point, order."""

    half_form: Any
    k_values: tuple
    reference_point: tuple | None = None
    order: int = 6

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("expansion order must be nonnegative")
        for k in self.k_values:
            if not k > 0:
                raise DomainError("k values must be positive")


class RadialSeries(NamedTuple):
    """Radial jets along one direction: phase, log-weight, weight."""

    phase: TruncatedSeries
    log_weight: TruncatedSeries
    weight: TruncatedSeries


def _reference_point(model: HamiltonianModel, point):
    return tuple(model.zero_points[0]) if point is None else tuple(point)


def _node_direction(rule: SphereRule, index: int) -> tuple:
    # d = 1 nodes are exactly +-1; keep them integer so exact charts stay exact
    row = rule.nodes[index]
    if rule.dim == 1:
        return (1 if row[0] > 0 else -1,)
    return tuple(float(c) for c in row)


def radial_profile(
    model: HamiltonianModel,
    omega: Sequence[Any],
    point: Sequence[Any] | None = None,
    order: int = 8,
    half_form: Any = 0,
    tol: float = 1e-9,
) -> RadialSeries:
    """Radial phase/weight series along direction ``omega``.

    The transport jet of the flow through ``point`` is composed with
    ``phi`` and ``laplacian_phi`` and integrated: phase ``= 2 * int
    phi``, log-weight ``= int laplacian_phi``, weight ``= exp(half_form
    * log-weight)``.  Series are returned at radial order ``order``
    (so reduced phase coefficients are available up to ``order - 2``).
    """
    if order < 2:
        raise DomainError("radial order must be at least 2")
    x0 = _reference_point(model, point)
    level = float(model.phi(omega, x0))
    if abs(level) > tol:
        raise DomainError(
            f"point {x0!r} is not on the zero level (phi = {level:.3e})"
        )
    trajectory = ode_jet_transport(
        lambda coords: model.flow_field(omega, coords), x0, order - 1
    )
    phase = (2 * compose_scalar(lambda c: model.phi(omega, c), trajectory)).integrate()
    log_weight = compose_scalar(
        lambda c: model.laplacian_phi(omega, c), trajectory
    ).integrate()
    lead = phase.coefficient(2)
    if not float(lead) > 0.0:
        raise DomainError(
            "transport field is degenerate at the base point "
            f"(leading phase coefficient {float(lead):.3e})"
        )
    scale = max(1.0, abs(float(lead)))
    for p in (0, 1):
        if abs(float(phase.coefficient(p))) > tol * scale:
            raise DomainError("phase does not vanish to second order at the base point")
    weight = exp_series(log_weight * half_form)
    return RadialSeries(phase, log_weight, weight)


def direction_atoms(
    model: HamiltonianModel,
    omega: Sequence[Any],
    point: Sequence[Any] | None,
    flow_count: int,
    lap_count: int,
) -> tuple[tuple, tuple]:
    """Iterated flow derivatives of ``phi`` and ``laplacian_phi``.

    Returns ``(flow_atoms, lap_atoms)`` where ``flow_atoms[i]`` is the
    ``i + 1``-fold derivative of ``phi`` along the flow field at the
    base point and ``lap_atoms[i]`` the ``i``-fold derivative of
    ``laplacian_phi``, computed by nested first-order jets with no
    transport solve involved.
    """
    x0 = _reference_point(model, point)
    field = lambda coords: model.flow_field(omega, coords)
    flow_values = iterated_flow_derivatives(
        lambda c: model.phi(omega, c), field, x0, flow_count
    )
    lap_values = iterated_flow_derivatives(
        lambda c: model.laplacian_phi(omega, c), field, x0, max(lap_count - 1, 0)
    )
    return tuple(flow_values[1:]), tuple(lap_values[:lap_count])


def expansion_profile(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    order: int = 6,
    half_form: Any = 0,
    rule: SphereRule | None = None,
    series_margin: int = 6,
) -> RadialProfile:
    """Per-direction coefficient tables for the expansion engine."""
    if rule is None:
        rule = sphere_rule(model.group_dim)
    phase_rows = []
    weight_rows = []
    series_order = order + max(series_margin, 2)
    for i in range(len(rule)):
        omega = _node_direction(rule, i)
        series = radial_profile(model, omega, point, series_order, half_form)
        phase_rows.append([series.phase.coefficient(p + 2) for p in range(order + 1)])
        weight_rows.append([series.weight.coefficient(p) for p in range(order + 1)])
    return RadialProfile(rule, phase_rows, weight_rows)


def profile_from_atoms(
    rule: SphereRule,
    atom_table: Sequence[tuple[Sequence[Any], Sequence[Any]]],
    order: int,
    half_form: Any = 0,
) -> RadialProfile:
    """Coefficient tables built directly from per-direction atoms.

    ``atom_table[i]`` is the ``(flow_atoms, lap_atoms)`` pair for node
    ``i``; reduced phase coefficient ``p`` is ``2 * flow_atoms[p] /
    (p + 2)!`` and the weight series is the exponential of the
    factorial-rescaled Laplacian atoms.  This is the bridge used by the
    cross-implementation agreement tests.
    """
    phase_rows = []
    weight_rows = []
    for flow_atoms, lap_atoms in atom_table:
        if len(flow_atoms) < order + 1 or len(lap_atoms) < order:
            raise DomainError("atom table too short for the requested order")
        phase_rows.append(
            [flow_atoms[p] * Fraction(2, math.factorial(p + 2)) for p in range(order + 1)]
        )
        log_weight = TruncatedSeries(
            [0] + [lap_atoms[p - 1] * Fraction(1, math.factorial(p))
                   for p in range(1, order + 1)]
        )
        weight = exp_series(log_weight * half_form)
        weight_rows.append([weight.coefficient(p) for p in range(order + 1)])
    return RadialProfile(rule, phase_rows, weight_rows)


def geometric_expansion(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    half_form: Any = 0,
    order: int = 6,
    resolution: int = 32,
    mode: str = "float",
) -> ExpansionResult:
    """Expansion coefficients for the geometric phase/weight data."""
    rule = sphere_rule(model.group_dim, resolution)
    config = ExpansionConfig(
        dim=model.group_dim,
        phase_order=2,
        weight_index=model.group_dim,
        order=order,
        resolution=resolution,
        mode=mode,
    )
    profile = expansion_profile(model, point, order, half_form, rule)
    return expansion_series(profile, config)


# ------------------------------------------------------------ raw coefficient sums

def _power(value: Any, exponent: int) -> Any:
    if isinstance(value, int):
        value = Fraction(value)
    return value ** exponent


def _weight_block_sum(q: int, half_form: Any, lap_atoms: Sequence[Any]) -> Any:
    # weight-series coefficient q: partitions of q, one half_form per block
    if q == 0:
        return 1
    total: Any = 0
    for length in range(1, q + 1):
        for counts in partition_tuples(q, length):
            blocks = sum(counts)
            term: Any = partition_multinomial(q, counts) * _power(half_form, blocks)
            for i, n_i in enumerate(counts, start=1):
                if n_i:
                    term = term * _power(lap_atoms[i - 1], n_i)
            total = total + term
    return total * Fraction(1, math.factorial(q))


def _phase_tail_sum(
    m: int, exponent: Fraction, flow_atoms: Sequence[Any]
) -> Any:
    # phase-tail contribution at radial order m: compositions into r parts
    if m == 0:
        return 1
    f0 = flow_atoms[0]
    total: Any = 0
    for r in range(1, m + 1):
        inner: Any = 0
        for parts in composition_tuples(m, r):
            denominator = 1
            numerator: Any = 1
            for n_i in parts:
                denominator *= math.factorial(n_i + 2)
                numerator = numerator * flow_atoms[n_i]
            inner = inner + Fraction(2 ** r, denominator) * numerator
        total = total + generalized_binomial(-exponent, r) * _power(f0, -r) * inner
    return total


def _direction_bracket(
    j: int, half_form: Any, dim: int, flow_atoms: Sequence[Any], lap_atoms: Sequence[Any]
) -> Any:
    exponent = Fraction(dim + j, 2)
    total: Any = 0
    for m in range(j + 1):
        weight_part = _weight_block_sum(j - m, half_form, lap_atoms)
        phase_part = _phase_tail_sum(m, exponent, flow_atoms)
        total = total + weight_part * phase_part
    return total


def zeta_geometric_from_atoms(
    j: int,
    half_form: Any,
    dim: int,
    atom_table: Sequence[tuple[Sequence[Any], Sequence[Any]]],
    weights: Sequence[float],
) -> float:
    """Raw-sum coefficient from per-direction atoms and rule weights."""
    if j < 0:
        raise DomainError("coefficient index must be nonnegative")
    total = math.fsum(
        w
        * float(flow_atoms[0]) ** (-(dim + j) / 2.0)
        * float(_direction_bracket(j, half_form, dim, flow_atoms, lap_atoms))
        for (flow_atoms, lap_atoms), w in zip(atom_table, weights)
    )
    return 0.5 * gamma_value(Fraction(dim + j, 2)) * total


def zeta_geometric(
    j: int,
    half_form: Any,
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    resolution: int = 32,
) -> float:
    """Expansion coefficient by the raw partition/composition sums.

    Independent of the engine pipeline: atoms come from nested
    directional derivatives instead of transported series, and the
    radial algebra is the explicit double sum instead of the Bell
    recursion machinery.  The two routes must agree.
    """
    rule = sphere_rule(model.group_dim, resolution)
    atom_table = [
        direction_atoms(model, _node_direction(rule, i), point, j + 1, max(j, 1))
        for i in range(len(rule))
    ]
    return zeta_geometric_from_atoms(
        j, half_form, model.group_dim, atom_table, [float(w) for w in rule.weights]
    )


def zeta2_reference_from_atoms(
    half_form: Any,
    dim: int,
    atom_table: Sequence[tuple[Sequence[Any], Sequence[Any]]],
    weights: Sequence[float],
) -> float:
    """Closed-form second coefficient from per-direction atoms.

    Transcribed term by term; both quadratic weight terms carry a
    factor 1/2 because the weight scales per block, not per order.
    """
    a = half_form
    half = Fraction(1, 2)
    exponent = Fraction(dim + 2, 2)
    total = 0.0
    for (flow_atoms, lap_atoms), w in zip(atom_table, weights):
        a1, a2, a3 = flow_atoms[0], flow_atoms[1], flow_atoms[2]
        d1, d2 = lap_atoms[0], lap_atoms[1]
        bracket = a * d2 * half + a * a * d1 * d1 * half
        bracket = bracket - exponent * (
            a * d1 * a2 * Fraction(1, 3) + a3 * Fraction(1, 12)
        ) * _power(a1, -1)
        bracket = bracket + generalized_binomial(-exponent, 2) \
            * a2 * a2 * Fraction(1, 9) * _power(a1, -2)
        total += w * float(a1) ** (-float(exponent)) * float(bracket)
    return 0.25 * dim * gamma_value(Fraction(dim, 2)) * total


def zeta2_reference(
    half_form: Any,
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    resolution: int = 32,
) -> float:
    """Second expansion coefficient by the closed displayed form."""
    rule = sphere_rule(model.group_dim, resolution)
    atom_table = [
        direction_atoms(model, _node_direction(rule, i), point, 3, 2)
        for i in range(len(rule))
    ]
    return zeta2_reference_from_atoms(
        half_form, model.group_dim, atom_table, [float(w) for w in rule.weights]
    )


def leading_term_identity(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    resolution: int = 32,
) -> tuple[float, float]:
    """(engine leading coefficient, pi^{d/2} / orbit volume).

    Equality of the two is the normalization self-test: it holds
    exactly when the generator scaling and the orbit volume are
    mutually consistent (unit Haar mass), and a deliberate generator
    rescale must break it by the matching factor.
    """
    x0 = _reference_point(model, point)
    result = geometric_expansion(model, x0, 0, 0, resolution)
    volume = float(model.orbit_volume(x0))
    return result.coefficients[0], math.pi ** (model.group_dim / 2.0) / volume


# ------------------------------------------------------------ model wrappers

def scaled_generator_model(model: HamiltonianModel, factor: float) -> HamiltonianModel:
    """Rescale the generator maps, leaving the orbit volume untouched."""
    return HamiltonianModel(
        group_dim=model.group_dim,
        chart_dim=model.chart_dim,
        phi=lambda omega, point: model.phi(omega, point) * factor,
        flow_field=lambda omega, point: tuple(
            v * factor for v in model.flow_field(omega, point)
        ),
        laplacian_phi=lambda omega, point: model.laplacian_phi(omega, point) * factor,
        zero_points=model.zero_points,
        orbit_volume=model.orbit_volume,
        name=f"{model.name}/generator*{factor}",
        zero_chart=model.zero_chart,
        chart_density=model.chart_density,
    )


def scaled_volume_model(model: HamiltonianModel, factor: float) -> HamiltonianModel:
    """Rescale the reported orbit volume only."""
    return HamiltonianModel(
        group_dim=model.group_dim,
        chart_dim=model.chart_dim,
        phi=model.phi,
        flow_field=model.flow_field,
        laplacian_phi=model.laplacian_phi,
        zero_points=model.zero_points,
        orbit_volume=lambda point: model.orbit_volume(point) * factor,
        name=f"{model.name}/vol*{factor}",
        zero_chart=model.zero_chart,
        chart_density=model.chart_density,
    )


# ------------------------------------------------------------ numeric densities

def _augmented_flow(model: HamiltonianModel, omega: tuple, x0: tuple, span: float):
    """Dense flow solution carrying phase and log-weight accumulators."""
    chart = model.chart_dim

    def rhs(_s: float, y):
        coords = tuple(y[:chart])
        vec = model.flow_field(omega, coords)
        return [float(v) for v in vec] + [
            float(model.phi(omega, coords)),
            float(model.laplacian_phi(omega, coords)),
        ]

    solution = solve_ivp(
        rhs,
        (0.0, span),
        [float(c) for c in x0] + [0.0, 0.0],
        method="DOP853",
        dense_output=True,
        rtol=1e-13,
        atol=1e-14,
    )
    if not solution.success:
        raise QuadratureError(
            f"flow transport failed on {model.name}: {solution.message}",
            float("nan"),
            float("inf"),
        )
    return solution


def _choose_span(
    model: HamiltonianModel,
    directions: Sequence[tuple],
    x0: tuple,
    k: float,
    half_form: Any,
) -> float:
    """Smallest power-of-two span on which the integrand has died off."""
    chart = model.chart_dim
    span = 1.0
    while True:
        decayed = True
        for omega in directions:
            solution = _augmented_flow(model, omega, x0, span)
            phase_end = solution.y[chart][-1]
            weight_end = solution.y[chart + 1][-1]
            if 2.0 * k * phase_end - abs(float(half_form)) * abs(weight_end) \
                    < _PHASE_CUTOFF:
                decayed = False
                break
        if decayed:
            return span
        span *= 2.0
        if span > _MAX_FLOW_SPAN:
            raise DomainError(
                "phase fails to grow along the flow; integrand does not decay"
            )


def j_a_numeric(
    model: HamiltonianModel,
    point: Sequence[Any] | None,
    half_form: Any,
    k: float,
    tol: float = 1e-10,
    radius: float | None = None,
) -> float:
    """Core density by direct numerics.

    The flow is transported with an adaptive ODE solver (dense output,
    carrying the phase and log-weight integrals as extra state) and the
    resulting radial integrand is handed to the numeric Laplace
    quadrature; no series machinery is involved, which keeps this the
    independent oracle for the expansion path.  ``radius`` truncates
    the domain; by default the span is grown until the integrand has
    decayed below double-precision relevance.
    """
    if not k > 0:
        raise DomainError("k must be positive")
    dim = model.group_dim
    chart = model.chart_dim
    x0 = _reference_point(model, point)
    a = half_form

    if dim == 1:
        directions = [(1,), (-1,)]
        if radius is None or math.isinf(radius):
            span = _choose_span(model, directions, x0, k, a)
        else:
            span = float(radius)
        dense = {
            omega: _augmented_flow(model, omega, x0, span) for omega in directions
        }

        def phase(p: Sequence[float]) -> float:
            rho = abs(p[0])
            if rho == 0.0:
                return 0.0
            return 2.0 * dense[(1,) if p[0] > 0 else (-1,)].sol(rho)[chart]

        def amplitude(p: Sequence[float]) -> float:
            rho = abs(p[0])
            if rho == 0.0:
                return 1.0
            log_w = dense[(1,) if p[0] > 0 else (-1,)].sol(rho)[chart + 1]
            return math.exp(float(a) * log_w)

        return numeric_laplace_integral(phase, amplitude, 1, k, tol=tol,
                                        radius=span).value

    # d >= 2: per-point endpoint solves; slow but direction-exact
    if radius is None or math.isinf(radius):
        probe = (1.0,) + (0.0,) * (dim - 1)
        span = _choose_span(model, [probe], x0, k, a)
    else:
        span = float(radius)
    cache: dict[tuple, Any] = {}

    def solved(direction: tuple):
        if direction not in cache:
            cache[direction] = _augmented_flow(model, direction, x0, span)
        return cache[direction]

    def phase(p: Sequence[float]) -> float:
        rho = math.hypot(*p)
        if rho == 0.0:
            return 0.0
        direction = tuple(round(c / rho, 14) for c in p)
        return 2.0 * solved(direction).sol(rho)[chart]

    def amplitude(p: Sequence[float]) -> float:
        rho = math.hypot(*p)
        if rho == 0.0:
            return 1.0
        direction = tuple(round(c / rho, 14) for c in p)
        return math.exp(float(a) * solved(direction).sol(rho)[chart + 1])

    return numeric_laplace_integral(phase, amplitude, dim, k, tol=tol,
                                    radius=span).value


def _sweep(values, one: Callable[[float], float]):
    if isinstance(values, (int, float)):
        return one(float(values))
    return [one(float(v)) for v in values]


def density_I(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    k: float | Sequence[float] = 100.0,
    tol: float = 1e-9,
    radius: float | None = None,
):
    """Uncorrected density, numerically: (k/2pi)^{d/2} vol^2 j_1(k)."""
    x0 = _reference_point(model, point)
    volume = float(model.orbit_volume(x0))
    d = model.group_dim

    def one(kv: float) -> float:
        prefactor = (kv / (2.0 * math.pi)) ** (d / 2.0) * volume ** 2
        return prefactor * j_a_numeric(model, x0, 1, kv, tol=tol / prefactor,
                                       radius=radius)

    return _sweep(k, one)


def density_J(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    k: float | Sequence[float] = 100.0,
    tol: float = 1e-9,
    radius: float | None = None,
):
    """Corrected density, numerically: (k/pi)^{d/2} vol j_{1/2}(k)."""
    x0 = _reference_point(model, point)
    volume = float(model.orbit_volume(x0))
    d = model.group_dim

    def one(kv: float) -> float:
        prefactor = (kv / math.pi) ** (d / 2.0) * volume
        return prefactor * j_a_numeric(model, x0, Fraction(1, 2), kv,
                                       tol=tol / prefactor, radius=radius)

    return _sweep(k, one)


def density_I_series(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    k: float | Sequence[float] = 100.0,
    order: int = 6,
    resolution: int = 32,
):
    """Series prediction for the uncorrected density."""
    x0 = _reference_point(model, point)
    volume = float(model.orbit_volume(x0))
    d = model.group_dim
    result = geometric_expansion(model, x0, 1, order, resolution)

    def one(kv: float) -> float:
        return (kv / (2.0 * math.pi)) ** (d / 2.0) * volume ** 2 \
            * result.partial_sum(kv)

    return _sweep(k, one)


def density_J_series(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    k: float | Sequence[float] = 100.0,
    order: int = 6,
    resolution: int = 32,
):
    """Series prediction for the corrected density."""
    x0 = _reference_point(model, point)
    volume = float(model.orbit_volume(x0))
    d = model.group_dim
    result = geometric_expansion(model, x0, Fraction(1, 2), order, resolution)

    def one(kv: float) -> float:
        return (kv / math.pi) ** (d / 2.0) * volume * result.partial_sum(kv)

    return _sweep(k, one)


def density_limits(
    model: HamiltonianModel,
    point: Sequence[Any] | None = None,
    resolution: int = 32,
) -> tuple[float, float]:
    """Large-k limits (I, J) implied by the leading coefficient."""
    x0 = _reference_point(model, point)
    volume = float(model.orbit_volume(x0))
    d = model.group_dim
    lead = geometric_expansion(model, x0, 0, 0, resolution).coefficients[0]
    return (
        volume ** 2 * lead / (2.0 * math.pi) ** (d / 2.0),
        volume * lead / math.pi ** (d / 2.0),
    )


# ------------------------------------------------------------ Jacobian check

def _flow_endpoint(model: HamiltonianModel, start: Sequence[float], time: float):
    if time == 0.0:
        return tuple(float(c) for c in start), 0.0
    solution = _augmented_flow(model, (1,), tuple(start), time)
    y = solution.y[:, -1]
    return tuple(y[: model.chart_dim]), float(y[model.chart_dim + 1])


def jacobian_tau_check(
    model: HamiltonianModel,
    xi: float,
    zero_parameter: float = 0.0,
    step: float = 1e-4,
) -> tuple[float, float]:
    """Transport Jacobian: product formula vs finite differences.

    The formula route multiplies the orbit volume by the exponential of
    the accumulated Laplacian along the flow; the finite-difference
    route takes central differences of the map (time, zero-level
    parameter) -> chart point and multiplies the 2x2 determinant by the
    chart volume density at the image.  Restricted to one-parameter
    groups on two-dimensional charts with |xi| <= 1, away from chart
    degeneracies.
    """
    if model.group_dim != 1 or model.chart_dim != 2:
        raise DomainError("Jacobian check needs a one-parameter group on a 2d chart")
    if model.zero_chart is None or model.chart_density is None:
        raise DomainError("Jacobian check needs zero_chart and chart_density data")
    if abs(xi) > 1.0:
        raise DomainError("|xi| <= 1 required (chart degenerates further out)")

    x0 = tuple(float(c) for c in model.zero_chart(zero_parameter))
    volume = float(model.orbit_volume(x0))
    image, log_weight = _flow_endpoint(model, x0, xi)
    formula = volume * math.exp(log_weight)

    def endpoint(s_param: float, time: float) -> tuple[float, ...]:
        start = tuple(float(c) for c in model.zero_chart(s_param))
        return _flow_endpoint(model, start, time)[0]

    plus_t = endpoint(zero_parameter, xi + step)
    minus_t = endpoint(zero_parameter, xi - step)
    plus_s = endpoint(zero_parameter + step, xi)
    minus_s = endpoint(zero_parameter - step, xi)
    col_time = [(a - b) / (2.0 * step) for a, b in zip(plus_t, minus_t)]
    col_s = [(a - b) / (2.0 * step) for a, b in zip(plus_s, minus_s)]
    determinant = col_time[0] * col_s[1] - col_time[1] * col_s[0]
    fd_value = abs(determinant) * float(model.chart_density(image))
    return formula, fd_value


# ------------------------------------------------------------ builtin models

_TWO_PI = 2.0 * math.pi


def builtin_sphere_model() -> HamiltonianModel:
    """Circle action rotating the unit sphere about its axis.

    Cylindrical chart ``(theta, z)`` with unit area density; the
    generator is scaled to period one, so the moment component is
    ``2 pi w z``, the transport field ``(0, 2 pi w (1 - z^2))``, the
    Laplacian ``-4 pi w z``, and every orbit through height ``z`` has
    volume ``2 pi sqrt(1 - z^2)``.
    """

    def phi(omega, point):
        return _TWO_PI * omega[0] * point[1]

    def flow_field(omega, point):
        z = point[1]
        return (0, _TWO_PI * omega[0] * (1 - z * z))

    def laplacian_phi(omega, point):
        return -2.0 * _TWO_PI * omega[0] * point[1]

    def orbit_volume(point):
        return _TWO_PI * math.sqrt(1.0 - float(point[1]) ** 2)

    return HamiltonianModel(
        group_dim=1,
        chart_dim=2,
        phi=phi,
        flow_field=flow_field,
        laplacian_phi=laplacian_phi,
        zero_points=((0.0, 0.0),),
        orbit_volume=orbit_volume,
        name="sphere",
        zero_chart=lambda s: (float(s), 0.0),
        chart_density=lambda point: 1.0,
    )


def gaussian_test_model() -> HamiltonianModel:
    """Flat test model with a purely quadratic radial phase."""
    return HamiltonianModel(
        group_dim=1,
        chart_dim=1,
        phi=lambda omega, point: omega[0] * point[0],
        flow_field=lambda omega, point: (omega[0],),
        laplacian_phi=lambda omega, point: 0,
        zero_points=((0.0,),),
        orbit_volume=lambda point: 1.0,
        name="gaussian",
    )


def quartic_test_model() -> HamiltonianModel:
    """Flat test model whose radial phase is rho^2 + rho^4."""

    def phi(omega, point):
        x = point[0]
        return omega[0] * (x + 2 * x * x * x)

    return HamiltonianModel(
        group_dim=1,
        chart_dim=1,
        phi=phi,
        flow_field=lambda omega, point: (omega[0],),
        laplacian_phi=lambda omega, point: 0,
        zero_points=((0.0,),),
        orbit_volume=lambda point: 1.0,
        name="quartic",
    )


_BUILTIN_FACTORIES = {
    "sphere": builtin_sphere_model,
    "gaussian": gaussian_test_model,
    "quartic": quartic_test_model,
}


# ------------------------------------------------------------ declarative configs

def _number(value: Any) -> Any:
    if isinstance(value, bool):
        raise DomainError("booleans are not numbers")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        try:
            parsed = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"unreadable number {value!r}") from None
        return parsed.numerator if parsed.denominator == 1 else parsed
    raise DomainError(f"unreadable number {value!r}")


def _point_env(point: Sequence[Any]) -> dict:
    return {f"x{i}": v for i, v in enumerate(point)}


def _full_env(omega: Sequence[Any], point: Sequence[Any]) -> dict:
    env = _point_env(point)
    env.update({f"w{i}": v for i, v in enumerate(omega)})
    return env


def model_from_config(config: dict) -> HamiltonianModel:
    """Build a model from a declarative config dictionary."""
    required = ("group_dim", "chart_dim", "phi", "flow_field", "laplacian_phi",
                "zero_points", "orbit_volume")
    for key in required:
        if key not in config:
            raise DomainError(f"model config is missing {key!r}")
    group_dim = config["group_dim"]
    chart_dim = config["chart_dim"]
    if not isinstance(group_dim, int) or not isinstance(chart_dim, int):
        raise DomainError("model dimensions must be integers")

    phi_fn = compile_expression(config["phi"])
    lap_fn = compile_expression(config["laplacian_phi"])
    flow_exprs = config["flow_field"]
    if not isinstance(flow_exprs, list) or len(flow_exprs) != chart_dim:
        raise DomainError("flow_field needs one expression per chart coordinate")
    flow_fns = [compile_expression(e) for e in flow_exprs]
    volume_fn = compile_expression(config["orbit_volume"])

    zero_points = tuple(
        tuple(_number(c) for c in pt) for pt in config["zero_points"]
    )
    if any(len(pt) != chart_dim for pt in zero_points):
        raise DomainError("zero points must have chart dimension")

    zero_chart = None
    if "zero_chart" in config:
        chart_fns = [compile_expression(e) for e in config["zero_chart"]]
        if len(chart_fns) != chart_dim:
            raise DomainError("zero_chart needs one expression per chart coordinate")
        zero_chart = lambda s: tuple(fn({"s": s}) for fn in chart_fns)
    density_fn = None
    if "chart_density" in config:
        compiled_density = compile_expression(config["chart_density"])
        density_fn = lambda point: compiled_density(_point_env(point))

    return HamiltonianModel(
        group_dim=group_dim,
        chart_dim=chart_dim,
        phi=lambda omega, point: phi_fn(_full_env(omega, point)),
        flow_field=lambda omega, point: tuple(
            fn(_full_env(omega, point)) for fn in flow_fns
        ),
        laplacian_phi=lambda omega, point: lap_fn(_full_env(omega, point)),
        zero_points=zero_points,
        orbit_volume=lambda point: volume_fn(_point_env(point)),
        name=str(config.get("name", "config-model")),
        zero_chart=zero_chart,
        chart_density=density_fn,
    )


def load_model(path: str) -> HamiltonianModel:
    """Read a declarative model config (JSON) from disk."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise DomainError(f"cannot read model config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"model config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise DomainError("model config must be a JSON object")
    return model_from_config(config)


def resolve_model(source: str) -> HamiltonianModel:
    """Resolve ``builtin:<name>`` or a config file path to a model."""
    if source.startswith("builtin:"):
        name = source[len("builtin:"):]
        try:
            return _BUILTIN_FACTORIES[name]()
        except KeyError:
            known = ", ".join(sorted(_BUILTIN_FACTORIES))
            raise DomainError(
                f"unknown builtin model {name!r} (available: {known})"
            ) from None
    return load_model(source)
