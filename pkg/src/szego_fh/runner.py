"""Batch experiment runner.

Each experiment kind produces one CSV table (byte-identical across runs of
the same config; rows ordered by N then k/z) and a ``summary.json`` with
per-predicate verdicts.  The process exit status is 0 iff every predicate
passes.
"""

from __future__ import annotations

import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .asymptotics import (
    compare,
    entry_asymptotic,
    gegenbauer_phase,
    small_k_entry,
    write_comparison_csv,
)
from .config import ExperimentConfig
from .toeplitz import (
    build_system,
    dense_inverse_oracle,
    levinson_first_column,
)
from .wiener_hopf import correction_kernel, neumann_first_column

log = logging.getLogger("szego_fh")

__all__ = ["Predicate", "RunResult", "run"]


@dataclass(frozen=True)
class Predicate:
    name: str
    passed: bool
    value: float
    threshold: float

    def as_json(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "value": float(self.value),
            "threshold": float(self.threshold),
        }


@dataclass(frozen=True)
class RunResult:
    experiment: str
    predicates: tuple
    csv_path: Path
    summary_path: Path
    timing_ms: int

    @property
    def all_passed(self) -> bool:
        return all(p.passed for p in self.predicates)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_passed else 1


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_csv(path: Path, header: str, rows) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _solve_columns(config: ExperimentConfig, threads: int):
    """Levinson first columns for every configured order (sorted ascending)."""

    def solve(order):
        system = build_system(config.symbol, order, config.series_len)
        return levinson_first_column(system)

    if threads > 1 and len(config.orders) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(solve, config.orders))
    else:
        columns = [solve(order) for order in config.orders]
    return dict(zip(config.orders, columns))


# ---------------------------------------------------------------------------
# Experiment kinds


def _run_first_column(config, out_path, threads):
    columns = _solve_columns(config, threads)
    rows = []
    predicates = []
    for order in config.orders:
        pred = columns[order]
        for k, value in enumerate(pred.first_column):
            rows.append([str(order), str(k), _fmt(value.real), _fmt(value.imag)])
        max_rho = float(np.max(np.abs(pred.reflections))) if order else 0.0
        predicates.append(
            Predicate(f"reflections_bounded_N{order}", max_rho < 1.0, max_rho, 1.0)
        )
        if order <= 128:
            system = build_system(config.symbol, order, config.series_len)
            dense_col = dense_inverse_oracle(system)[:, 0]
            diff = float(np.max(np.abs(dense_col - pred.first_column)))
            tol = config.tolerance("dense_agreement", 1e-9)
            predicates.append(
                Predicate(f"dense_agreement_N{order}", diff <= tol, diff, tol)
            )
    _write_csv(out_path, "N,k,re,im", rows)
    return predicates


def _run_convergence_x(config, out_path, threads):
    x_lo, x_hi = (min(config.x_grid), max(config.x_grid)) if config.x_grid else (0.3, 0.7)
    columns = _solve_columns(config, threads)
    beta0 = config.symbol.beta0()
    records = []
    max_err = []
    medians = []
    for order in config.orders:
        column = columns[order].first_column
        ks = range(max(1, math.ceil(x_lo * order)), min(order - 1, math.floor(x_hi * order)) + 1)
        ratios = []
        errs = []
        for k in ks:
            prediction = entry_asymptotic(config.symbol, order, k)
            record = compare(column[k] / beta0, prediction, order, k, k / order)
            records.append(record)
            if record.ratio_defined:
                ratios.append(record.ratio)
                errs.append(abs(record.ratio - 1.0))
        medians.append(float(np.median(ratios)))
        max_err.append(float(np.max(errs)))
        log.info("convergence_x N=%d: median ratio %.4f, max err %.4f",
                 order, medians[-1], max_err[-1])
    write_comparison_csv(records, out_path)
    tol = config.tolerance("median_ratio", 0.05)
    predicates = [
        Predicate(
            f"median_ratio_N{config.orders[-1]}",
            abs(medians[-1] - 1.0) <= tol,
            medians[-1],
            tol,
        )
    ]
    band = 1.0 + config.tolerance("noise_band", 0.10)
    worst = max(
        (max_err[i + 1] / max_err[i] for i in range(len(max_err) - 1)),
        default=0.0,
    )
    predicates.append(Predicate("max_window_error_nonincreasing", worst <= band, worst, band))
    return predicates


def _run_small_k(config, out_path, threads):
    columns = _solve_columns(config, threads)
    beta0 = config.symbol.beta0()
    rows = []
    predicates = []
    errs = {k: [] for k in config.k_grid}
    for order in config.orders:
        column = columns[order].first_column
        for k in config.k_grid:
            if k > order:
                continue
            prediction = small_k_entry(config.symbol, order, k)
            err = abs(column[k] / beta0 - prediction.value)
            errs[k].append((order, err))
            rows.append([str(order), str(k), _fmt(err)])
    _write_csv(out_path, "N,k,abs_err", rows)
    slope_tol = config.tolerance("slope_band", 0.2)
    for k, pairs in errs.items():
        usable = [(n, e) for n, e in pairs if e > 0]
        if len(usable) < 2:
            predicates.append(Predicate(f"rate_slope_k{k}", False, math.nan, slope_tol))
            continue
        logn = np.log([n for n, _ in usable])
        loge = np.log([e for _, e in usable])
        slope = float(np.polyfit(logn, loge, 1)[0])
        predicates.append(
            Predicate(f"rate_slope_k{k}", abs(slope + 1.0) <= slope_tol, slope, slope_tol)
        )
    return predicates


def _run_gegenbauer_phase(config, out_path, threads):
    symbol = config.symbol
    theta0 = min(f.theta for f in symbol.factors)
    alpha = symbol.factors[0].alpha
    _, omega = gegenbauer_phase(alpha, theta0, symbol.regular)
    columns = _solve_columns(config, threads)
    rows = []
    predicates = []
    for order in config.orders:
        column = columns[order].first_column.real
        lo, hi = math.ceil(0.3 * order), math.floor(0.7 * order)
        signs = np.sign(column[lo : hi + 1])
        exact_crossings = [
            lo + i + 0.5 for i in range(len(signs) - 1) if signs[i] * signs[i + 1] < 0
        ]
        # Zeros of cos(k*theta0 - omega) at k = (pi/2 + n*pi + omega)/theta0.
        n_lo = math.ceil((lo * theta0 - omega - math.pi / 2) / math.pi)
        n_hi = math.floor((hi * theta0 - omega - math.pi / 2) / math.pi)
        predicted = [
            (math.pi / 2 + n * math.pi + omega) / theta0 for n in range(n_lo, n_hi + 1)
        ]
        matched = 0
        for kp in predicted:
            if exact_crossings and min(abs(kp - e) for e in exact_crossings) <= 1.0:
                matched += 1
        fraction = matched / len(predicted) if predicted else 0.0
        for kp in predicted:
            nearest = (
                min(exact_crossings, key=lambda e: abs(kp - e))
                if exact_crossings
                else math.nan
            )
            rows.append([str(order), _fmt(kp), _fmt(nearest), _fmt(abs(kp - nearest))])
        tol = config.tolerance("crossing_fraction", 0.9)
        predicates.append(
            Predicate(f"crossing_match_N{order}", fraction >= tol, fraction, tol)
        )
        log.info("gegenbauer_phase N=%d: %d/%d crossings within 1 index",
                 order, matched, len(predicted))
    _write_csv(out_path, "N,predicted_k,nearest_exact_k,offset", rows)
    return predicates


def _run_neumann_crosscheck(config, out_path, threads):
    del threads
    rows = []
    predicates = []
    cutoff = config.n_max if config.n_max is not None else 4096
    for order in config.orders:
        system = build_system(config.symbol, order, config.series_len)
        lev = levinson_first_column(system).first_column
        neu = neumann_first_column(config.symbol, order, config.s_max, cutoff)
        for k in range(order + 1):
            rows.append(
                [
                    str(order),
                    str(k),
                    _fmt(neu[k].real),
                    _fmt(neu[k].imag),
                    _fmt(lev[k].real),
                    _fmt(lev[k].imag),
                    _fmt(abs(neu[k] - lev[k])),
                ]
            )
        diff = float(np.max(np.abs(neu - lev)))
        tol = config.tolerance("path_equivalence", 1e-6)
        predicates.append(
            Predicate(f"path_equivalence_N{order}", diff <= tol, diff, tol)
        )
    _write_csv(out_path, "N,k,neumann_re,neumann_im,levinson_re,levinson_im,abs_diff", rows)
    return predicates


def _run_f_kernel_table(config, out_path, threads):
    del threads
    alpha = config.alpha
    rows = []
    table = {}
    for order in config.orders:
        n_max = config.n_max if config.n_max is not None else max(4 * order, 2048)
        for z in config.z_grid:
            est = correction_kernel(order, alpha, z, config.p_max, n_max)
            envelope = 1.0 + abs(math.log(1.0 - z + (1.0 + alpha) / order))
            table[(order, z)] = (est.value, envelope)
            rows.append([str(order), _fmt(z), _fmt(est.value), _fmt(est.tail_estimate),
                         _fmt(envelope)])
    _write_csv(out_path, "N,z,value,tail_estimate,log_envelope", rows)
    # Fit K0 on the smallest order, then demand the bound uniformly.
    first = config.orders[0]
    k0 = max(
        table[(first, z)][0] / table[(first, z)][1] for z in config.z_grid
    )
    margin = config.tolerance("bound_margin", 1.05)
    worst = max(
        table[(order, z)][0] / (k0 * table[(order, z)][1])
        for order in config.orders
        for z in config.z_grid
    )
    predicates = [Predicate("log_bound_single_K0", worst <= margin, worst, margin)]
    if 0.0 in config.z_grid:
        tol = config.tolerance("alpha_sq_rel", 0.15)
        order = config.orders[-1]
        rel = abs(table[(order, 0.0)][0] / alpha**2 - 1.0)
        predicates.append(Predicate(f"alpha_sq_N{order}", rel <= tol, rel, tol))
    return predicates


_KIND_RUNNERS = {
    "first_column": _run_first_column,
    "convergence_x": _run_convergence_x,
    "small_k": _run_small_k,
    "gegenbauer_phase": _run_gegenbauer_phase,
    "neumann_crosscheck": _run_neumann_crosscheck,
    "f_kernel_table": _run_f_kernel_table,
}


def run(config: ExperimentConfig, out_dir, threads: int = 1) -> RunResult:
    """Execute one experiment; write its CSV and summary.json under out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{config.kind}_{config.out_name}.csv"
    started = time.perf_counter()
    log.info("running %s -> %s", config.kind, csv_path)
    predicates = _KIND_RUNNERS[config.kind](config, csv_path, max(1, threads))
    timing_ms = int((time.perf_counter() - started) * 1000)
    summary = {
        "experiment": config.kind,
        "predicates": [p.as_json() for p in predicates],
        "timing_ms": timing_ms,
    }
    summary_path = out_dir / "summary.json"
    with open(summary_path, "w", encoding="ascii") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    result = RunResult(config.kind, tuple(predicates), csv_path, summary_path, timing_ms)
    for p in predicates:
        log.info("predicate %-40s %s (value %.6g, threshold %.6g)",
                 p.name, "PASS" if p.passed else "FAIL", p.value, p.threshold)
    return result
