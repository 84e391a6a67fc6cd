"""Experiment configuration parsing and validation.

A config is a JSON object selecting one experiment kind, the symbol it runs
on, and the size/truncation grids.  Validation collects every problem it can
find rather than stopping at the first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .symbols import FHSymbol, SymbolError, parse_symbol

__all__ = ["ConfigError", "ExperimentConfig", "validate_config", "EXPERIMENT_KINDS"]

EXPERIMENT_KINDS = (
    "first_column",
    "convergence_x",
    "small_k",
    "gegenbauer_phase",
    "neumann_crosscheck",
    "f_kernel_table",
)

_KNOWN_KEYS = {
    "kind",
    "symbol",
    "N",
    "k",
    "x",
    "z",
    "alpha",
    "L",
    "s_max",
    "n_max",
    "p_max",
    "tolerances",
    "out_name",
}


class ConfigError(ValueError):
    """Carries the full list of validation problems."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    symbol: FHSymbol
    orders: tuple
    k_grid: tuple | None = None
    x_grid: tuple | None = None
    z_grid: tuple | None = None
    alpha: float | None = None
    series_len: int | None = None
    s_max: int = 16
    n_max: int | None = None
    p_max: int = 16
    tolerances: dict = field(default_factory=dict)
    out_name: str = "results"

    def tolerance(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))


def _check_int_list(raw, name, errors, minimum=0):
    try:
        values = tuple(int(v) for v in raw)
    except (TypeError, ValueError):
        errors.append(f"{name} must be a list of integers")
        return None
    if not values:
        errors.append(f"{name} must be nonempty")
        return None
    if any(v < minimum for v in values):
        errors.append(f"{name} entries must be >= {minimum}")
        return None
    return values


def validate_config(raw) -> ExperimentConfig:
    """Parse and validate; raises :class:`ConfigError` listing all problems."""
    errors: list[str] = []
    if isinstance(raw, (str, bytes)):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"malformed JSON: {exc}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["config must be a JSON object"])

    for key in sorted(set(raw) - _KNOWN_KEYS):
        errors.append(f"unknown field '{key}'")

    kind = raw.get("kind")
    if kind not in EXPERIMENT_KINDS:
        errors.append(
            f"kind must be one of {', '.join(EXPERIMENT_KINDS)} (got {kind!r})"
        )

    symbol = None
    try:
        symbol = parse_symbol(raw.get("symbol", {}))
    except SymbolError as exc:
        errors.append(f"symbol: {exc}")

    orders = None
    if "N" not in raw:
        errors.append("N (list of orders) is required")
    else:
        n_raw = raw["N"] if isinstance(raw["N"], (list, tuple)) else [raw["N"]]
        orders = _check_int_list(n_raw, "N", errors, minimum=0)
        if orders and list(orders) != sorted(orders):
            errors.append("N values must be sorted ascending")

    k_grid = None
    if "k" in raw:
        k_raw = raw["k"] if isinstance(raw["k"], (list, tuple)) else [raw["k"]]
        k_grid = _check_int_list(k_raw, "k", errors, minimum=0)

    x_grid = None
    if "x" in raw:
        try:
            x_grid = tuple(float(v) for v in raw["x"])
        except (TypeError, ValueError):
            errors.append("x must be a list of numbers")
        else:
            if not x_grid:
                errors.append("x must be nonempty")
                x_grid = None
            elif any(not 0.0 < v < 1.0 for v in x_grid):
                errors.append("x entries must lie in (0, 1)")
                x_grid = None

    z_grid = None
    if "z" in raw:
        try:
            z_grid = tuple(float(v) for v in raw["z"])
        except (TypeError, ValueError):
            errors.append("z must be a list of numbers")
        else:
            if any(not 0.0 <= v < 1.0 for v in z_grid):
                errors.append("z entries must lie in [0, 1)")
                z_grid = None

    alpha = None
    if "alpha" in raw:
        try:
            alpha = float(raw["alpha"])
        except (TypeError, ValueError):
            errors.append("alpha must be a number")
        else:
            if not -0.5 < alpha < 0.5 or alpha == 0.0:
                errors.append("alpha must lie in (-1/2, 1/2) and be nonzero")
                alpha = None

    def _opt_int(name, minimum):
        if name not in raw:
            return None
        try:
            val = int(raw[name])
        except (TypeError, ValueError):
            errors.append(f"{name} must be an integer")
            return None
        if val < minimum:
            errors.append(f"{name} must be >= {minimum}")
            return None
        return val

    series_len = _opt_int("L", 1)
    s_max = _opt_int("s_max", 0)
    n_max = _opt_int("n_max", 16)
    p_max = _opt_int("p_max", 0)

    tolerances = raw.get("tolerances", {})
    if not isinstance(tolerances, dict):
        errors.append("tolerances must be an object")
        tolerances = {}
    else:
        for key, val in tolerances.items():
            if not isinstance(val, (int, float)):
                errors.append(f"tolerances.{key} must be a number")

    out_name = raw.get("out_name", "results")
    if not isinstance(out_name, str) or not out_name or "/" in out_name:
        errors.append("out_name must be a plain file-name fragment")
        out_name = "results"

    # Kind-specific requirements.
    if kind == "f_kernel_table":
        if alpha is None and "alpha" not in raw:
            errors.append("f_kernel_table requires 'alpha'")
        if z_grid is None and "z" not in raw:
            errors.append("f_kernel_table requires a 'z' grid")
    if kind == "small_k" and k_grid is None and "k" not in raw:
        errors.append("small_k requires a 'k' grid")
    if kind == "gegenbauer_phase" and symbol is not None:
        pair = symbol.n_factors == 2
        if pair:
            t1, t2 = sorted(f.theta for f in symbol.factors)
            a1, a2 = (f.alpha for f in symbol.factors)
            pair = abs((t1 + t2) - 2 * 3.141592653589793) < 1e-9 and a1 == a2
        if not pair:
            errors.append(
                "gegenbauer_phase requires a conjugate pair: angles theta0 and "
                "2*pi - theta0 with equal alphas"
            )

    if errors:
        raise ConfigError(errors)
    return ExperimentConfig(
        kind=kind,
        symbol=symbol,
        orders=orders,
        k_grid=k_grid,
        x_grid=x_grid,
        z_grid=z_grid,
        alpha=alpha,
        series_len=series_len,
        s_max=16 if s_max is None else s_max,
        n_max=n_max,
        p_max=16 if p_max is None else p_max,
        tolerances=dict(tolerances),
        out_name=out_name,
    )
