"""Command-line front door.

Four subcommands: ``expand`` prints the coefficient table of a model's
asymptotic series, ``verify`` compares partial sums against the direct
numeric integral and fits the remainder decay, ``density-sweep``
evaluates both densities numerically and by series over a k list, and
``bell-table`` prints the combinatorial polynomials in exact rational
form.  Output is CSV (default) or JSON, on stdout or ``--out``.

Identical invocations produce byte-identical output: floats are
serialized with 17 significant digits, rationals as ``p/q``, and sweep
results are ordered by input position regardless of the thread count in
``LAPASYM_THREADS``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .bell import composition_tuples, partition_multinomial, partition_tuples
from .engine import convergence_order_fit
from .errors import DomainError, QuadratureError
from .models import (
    density_limits,
    density_I,
    density_I_series,
    density_J,
    density_J_series,
    geometric_expansion,
    j_a_numeric,
    resolve_model,
)

__all__ = ["main", "RunConfig"]

_FLOAT_FMT = "%.17g"
_BELL_BOUND = 20
# relative scale below which a verify row is indistinguishable from the
# oracle's own noise (ODE transport at rtol 1e-13 plus quadrature roundoff)
_ORACLE_FLOOR = 1e-11
_SLOPE_MARGIN = 0.1


# ------------------------------------------------------------ config plumbing

def format_float(value: float) -> str:
    return _FLOAT_FMT % float(value)


def format_number(value: Any) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format_float(value)


def parse_half_form(text: str) -> Any:
    t = text.strip()
    try:
        if "/" in t:
            return Fraction(t)
        try:
            return int(t)
        except ValueError:
            return float(t)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"unreadable weight value {text!r}") from None


def parse_k_list(text: str | None) -> tuple:
    if text is None or not text.strip():
        return ()
    values = []
    for piece in text.split(","):
        try:
            value = float(piece)
        except ValueError:
            raise DomainError(f"unreadable k value {piece!r}") from None
        values.append(value)
    return tuple(values)


@dataclass(frozen=True)
class RunConfig:
    """One validated CLI invocation."""

    command: str
    model_source: str
    half_form: Any
    order: int
    k_values: tuple
    resolution: int
    exact: bool
    out: str | None
    fmt: str
    tol: float

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"output format must be csv or json, not {self.fmt!r}")
        if self.order < 0:
            raise DomainError("order must be nonnegative")
        if self.resolution < 1:
            raise DomainError("resolution must be positive")
        if not self.tol > 0:
            raise DomainError("tolerance must be positive")
        for k in self.k_values:
            if not (math.isfinite(k) and k > 0):
                raise DomainError(f"k values must be positive and finite, got {k!r}")

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"


def thread_count() -> int:
    raw = os.environ.get("LAPASYM_THREADS")
    if raw is None or not raw.strip():
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise DomainError(f"LAPASYM_THREADS must be an integer, got {raw!r}") from None
    if count < 1:
        raise DomainError("LAPASYM_THREADS must be at least 1")
    return count


def _map_ordered(fn: Callable[[Any], Any], items: Sequence[Any]) -> list:
    """Apply ``fn`` over ``items``, results in input order."""
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ------------------------------------------------------------ serialization

def _emit_csv(metadata: list[tuple[str, str]], header: list[str],
              rows: list[list[str]]) -> str:
    lines = [f"# {key}={value}" for key, value in metadata]
    lines.append(",".join(header))
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _common_metadata(cfg: RunConfig) -> list[tuple[str, str]]:
    return [
        ("command", cfg.command),
        ("model", cfg.model_source),
        ("a", format_number(cfg.half_form)),
        ("order", str(cfg.order)),
        ("resolution", str(cfg.resolution)),
        ("mode", cfg.mode),
    ]


def _common_payload(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "model": cfg.model_source,
        "a": format_number(cfg.half_form),
        "order": cfg.order,
        "resolution": cfg.resolution,
        "mode": cfg.mode,
    }


# ------------------------------------------------------------ commands

def cmd_expand(cfg: RunConfig) -> str:
    model = resolve_model(cfg.model_source)
    result = geometric_expansion(
        model, None, cfg.half_form, cfg.order, cfg.resolution, cfg.mode
    )
    rows = [
        {
            "j": j,
            "exponent": str(result.exponents[j]),
            "coefficient": result.coefficients[j],
            "odd_vanished": result.odd_vanished[j],
        }
        for j in range(cfg.order + 1)
    ]
    if cfg.fmt == "json":
        payload = _common_payload(cfg)
        payload["rows"] = rows
        return _emit_json(payload)
    return _emit_csv(
        _common_metadata(cfg),
        ["j", "exponent", "coefficient", "odd_vanished"],
        [
            [str(r["j"]), r["exponent"], format_float(r["coefficient"]),
             format_number(r["odd_vanished"])]
            for r in rows
        ],
    )


def _fit_clean_slope(ks: list[float], errors: list[float]) -> float | None:
    if len(ks) >= 3:
        return convergence_order_fit(ks, errors)
    if len(ks) == 2:
        return math.log(errors[1] / errors[0]) / math.log(ks[1] / ks[0])
    return None


def cmd_verify(cfg: RunConfig) -> str:
    if len(cfg.k_values) < 3:
        raise DomainError("verify needs at least 3 k values")
    model = resolve_model(cfg.model_source)
    result = geometric_expansion(
        model, None, cfg.half_form, cfg.order, cfg.resolution, cfg.mode
    )
    # first even series index beyond the computed order
    next_even = cfg.order + 2 if cfg.order % 2 == 0 else cfg.order + 1
    expected = Fraction(-(next_even + model.group_dim), 2)

    oracles = _map_ordered(
        lambda k: j_a_numeric(model, None, cfg.half_form, k, tol=cfg.tol),
        cfg.k_values,
    )
    rows = []
    clean_ks: list[float] = []
    clean_errors: list[float] = []
    for k, oracle in zip(cfg.k_values, oracles):
        partial = result.partial_sum(k)
        error = abs(oracle - partial)
        floored = error < _ORACLE_FLOOR * abs(oracle)
        rows.append(
            {
                "k": k,
                "oracle": oracle,
                "partial_sum": partial,
                "abs_error": error,
                "floor_limited": floored,
            }
        )
        if not floored:
            clean_ks.append(k)
            clean_errors.append(error)

    slope = _fit_clean_slope(clean_ks, clean_errors)
    if slope is not None:
        passed = slope <= float(expected) + _SLOPE_MARGIN
        slope_text = format_float(slope)
    else:
        # every informative row sits at the oracle floor: the series is
        # at least as accurate as the oracle can resolve
        passed = True
        slope_text = "floor-limited"
    verdict = "pass" if passed else "fail"

    if cfg.fmt == "json":
        payload = _common_payload(cfg)
        payload["tol"] = cfg.tol
        payload["expected_slope"] = str(expected)
        payload["fitted_slope"] = slope
        payload["clean_points"] = len(clean_ks)
        payload["verdict"] = verdict
        payload["rows"] = rows
        return _emit_json(payload)
    metadata = _common_metadata(cfg)
    metadata.extend(
        [
            ("tol", format_float(cfg.tol)),
            ("expected_slope", str(expected)),
            ("fitted_slope", slope_text),
            ("clean_points", str(len(clean_ks))),
            ("verdict", verdict),
        ]
    )
    return _emit_csv(
        metadata,
        ["k", "oracle", "partial_sum", "abs_error", "floor_limited"],
        [
            [format_float(r["k"]), format_float(r["oracle"]),
             format_float(r["partial_sum"]), format_float(r["abs_error"]),
             format_number(r["floor_limited"])]
            for r in rows
        ],
    )


def cmd_density_sweep(cfg: RunConfig) -> str:
    model = resolve_model(cfg.model_source)
    ks = list(cfg.k_values)
    numeric = _map_ordered(
        lambda k: (
            density_I(model, None, k, tol=cfg.tol),
            density_J(model, None, k, tol=cfg.tol),
        ),
        ks,
    )
    if ks:
        i_series = density_I_series(model, None, ks, cfg.order, cfg.resolution)
        j_series = density_J_series(model, None, ks, cfg.order, cfg.resolution)
    else:
        i_series = []
        j_series = []
    rows = [
        {
            "k": k,
            "I": numeric[idx][0],
            "J": numeric[idx][1],
            "I_series": i_series[idx],
            "J_series": j_series[idx],
        }
        for idx, k in enumerate(ks)
    ]
    if ks:
        i_limit, j_limit = density_limits(model, None, cfg.resolution)
        rows.append(
            {"k": math.inf, "I": i_limit, "J": j_limit,
             "I_series": i_limit, "J_series": j_limit}
        )
    if cfg.fmt == "json":
        payload = _common_payload(cfg)
        payload["tol"] = cfg.tol
        payload["rows"] = [
            {**row, "k": ("inf" if math.isinf(row["k"]) else row["k"])}
            for row in rows
        ]
        return _emit_json(payload)
    metadata = _common_metadata(cfg)
    metadata.append(("tol", format_float(cfg.tol)))
    return _emit_csv(
        metadata,
        ["k", "I", "J", "I_series", "J_series"],
        [
            [format_float(r["k"]), format_float(r["I"]), format_float(r["J"]),
             format_float(r["I_series"]), format_float(r["J_series"])]
            for r in rows
        ],
    )


# ------------------------------------------------------------ bell tables

def _monomial_key(exponents: dict, span: int):
    vector = tuple(exponents.get(i, 0) for i in range(1, span + 1))
    return (max(exponents.values(), default=0), vector)


def _polynomial_string(terms: list[tuple[int, dict]], span: int) -> str:
    if not terms:
        return "0"
    pieces = []
    for coeff, exponents in sorted(terms, key=lambda t: _monomial_key(t[1], span)):
        body = "".join(
            f"x{i}" + (f"^{e}" if e > 1 else "")
            for i, e in sorted(exponents.items())
        )
        if not body:
            pieces.append(str(coeff))
        elif coeff == 1:
            pieces.append(body)
        else:
            pieces.append(f"{coeff}{body}")
    return " + ".join(pieces)


def _partial_terms(j: int, blocks: int) -> list[tuple[int, dict]]:
    if j == 0 and blocks == 0:
        return [(1, {})]
    terms = []
    for counts in partition_tuples(j, j - blocks + 1):
        exponents = {i: n for i, n in enumerate(counts, start=1) if n}
        terms.append((partition_multinomial(j, counts), exponents))
    return terms


def _power_terms(m: int, r: int) -> list[tuple[int, dict]]:
    aggregated: dict[tuple, int] = {}
    for parts in composition_tuples(m, r):
        exponents: dict[int, int] = {}
        for part in parts:
            exponents[part] = exponents.get(part, 0) + 1
        key = tuple(sorted(exponents.items()))
        aggregated[key] = aggregated.get(key, 0) + 1
    return [(count, dict(key)) for key, count in aggregated.items()]


def cmd_bell_table(cfg: RunConfig) -> str:
    if cfg.order > _BELL_BOUND:
        raise DomainError(f"bell-table order is capped at {_BELL_BOUND}")
    rows = []

    def add(kind: str, j: int, l: int | None, terms: list[tuple[int, dict]]):
        rows.append(
            {
                "kind": kind,
                "j": j,
                "l": l,
                "polynomial": _polynomial_string(terms, max(j, 1)),
                "value_at_ones": sum(coeff for coeff, _ in terms),
            }
        )

    for j in range(cfg.order + 1):
        if j == 0:
            add("partial", 0, 0, _partial_terms(0, 0))
        else:
            for blocks in range(1, j + 1):
                add("partial", j, blocks, _partial_terms(j, blocks))
    for j in range(cfg.order + 1):
        terms: list[tuple[int, dict]] = []
        if j == 0:
            terms = [(1, {})]
        else:
            for blocks in range(1, j + 1):
                terms.extend(_partial_terms(j, blocks))
        add("complete", j, None, terms)
    for m in range(cfg.order + 1):
        if m == 0:
            add("power", 0, 0, _power_terms(0, 0))
        else:
            for r in range(1, m + 1):
                add("power", m, r, _power_terms(m, r))

    if cfg.fmt == "json":
        payload = {"command": cfg.command, "order": cfg.order, "rows": rows}
        return _emit_json(payload)
    return _emit_csv(
        [("command", cfg.command), ("order", str(cfg.order))],
        ["kind", "j", "l", "polynomial", "value_at_ones"],
        [
            [r["kind"], str(r["j"]), "" if r["l"] is None else str(r["l"]),
             r["polynomial"], str(r["value_at_ones"])]
            for r in rows
        ],
    )


# ------------------------------------------------------------ entry point

_COMMANDS = {
    "expand": cmd_expand,
    "verify": cmd_verify,
    "density-sweep": cmd_density_sweep,
    "bell-table": cmd_bell_table,
}

_DEFAULT_ORDER = {"expand": 6, "verify": 4, "density-sweep": 6, "bell-table": 6}
_DEFAULT_TOL = {"expand": 1e-12, "verify": 1e-12, "density-sweep": 1e-9,
                "bell-table": 1e-12}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lapasym",
        description="Asymptotic expansion toolkit: coefficient tables, "
                    "numeric verification, density sweeps, Bell polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--model", default="builtin:sphere",
                       help="builtin:<name> or a JSON model config path")
        p.add_argument("--a", default="1/2",
                       help="half-form weight (int, float, or p/q)")
        p.add_argument("--order", type=int, default=None,
                       help="top series index N (bell-table: j bound)")
        p.add_argument("--k", default=None,
                       help="comma-separated k values")
        p.add_argument("--resolution", type=int, default=32,
                       help="angular quadrature resolution")
        p.add_argument("--exact", action="store_true",
                       help="exact rational internal arithmetic")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"),
                       default="csv")
        p.add_argument("--tol", type=float, default=None,
                       help="numeric oracle tolerance")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    order = ns.order if ns.order is not None else _DEFAULT_ORDER[ns.command]
    tol = ns.tol if ns.tol is not None else _DEFAULT_TOL[ns.command]
    return RunConfig(
        command=ns.command,
        model_source=ns.model,
        half_form=parse_half_form(ns.a),
        order=order,
        k_values=parse_k_list(ns.k),
        resolution=ns.resolution,
        exact=ns.exact,
        out=ns.out,
        fmt=ns.fmt,
        tol=tol,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text = _COMMANDS[cfg.command](cfg)
        if cfg.out is None:
            sys.stdout.write(text)
        else:
            with open(cfg.out, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
    except QuadratureError as exc:
        sys.stderr.write(
            f"error: {exc} (best estimate {format_float(exc.estimate)}, "
            f"bound {format_float(exc.error_bound)})\n"
        )
        return 2
    except (DomainError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
