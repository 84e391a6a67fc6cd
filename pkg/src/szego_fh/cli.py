"""Command-line harness: run experiments, validate configs, emit demo fixtures.

Usage:
    szego-fh run --config cfg.json --out results/ [--threads N] [--seed X]
    szego-fh validate --config cfg.json
    szego-fh demo --out demo/ [--run]

Log verbosity comes from the SZEGO_FH_LOG environment variable
(error, info or debug; default error).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from . import fixtures
from .config import ConfigError, validate_config
from .runner import run

log = logging.getLogger("szego_fh")

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _setup_logging() -> None:
    raw = os.environ.get("SZEGO_FH_LOG", "error").lower()
    level = _LOG_LEVELS.get(raw)
    if level is None:
        print(
            f"warning: SZEGO_FH_LOG must be one of {sorted(_LOG_LEVELS)}; "
            f"ignoring {raw!r}",
            file=sys.stderr,
        )
        level = logging.ERROR
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _load_config(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"cannot read config: {exc}"]) from exc
    return validate_config(text)


def _cmd_run(args) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return 2
    result = run(config, args.out, threads=args.threads)
    for p in result.predicates:
        status = "PASS" if p.passed else "FAIL"
        print(f"{status} {p.name}: value={p.value:.6g} threshold={p.threshold:.6g}")
    print(f"wrote {result.csv_path} and {result.summary_path} "
          f"({result.timing_ms} ms)")
    return result.exit_code


def _cmd_validate(args) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return 2
    print(f"ok: {config.kind} on {len(config.orders)} order(s)")
    return 0


# Demo configurations mirror the acceptance-gate experiments at desk scale.
def _demo_configs() -> dict:
    gegen = fixtures.fixture_json("gegenbauer")
    m1 = fixtures.fixture_json("m1_pos")
    return {
        "first_column_smoke.json": {
            "kind": "first_column",
            "symbol": {},
            "N": [8],
            "out_name": "smoke",
        },
        "convergence_interior.json": {
            "kind": "convergence_x",
            "symbol": gegen,
            "N": [512, 1024, 2048, 4096],
            "x": [0.3, 0.7],
            "out_name": "gegenbauer",
        },
        "convergence_interior_m1.json": {
            "kind": "convergence_x",
            "symbol": m1,
            "N": [512, 1024, 2048, 4096],
            "x": [0.3, 0.7],
            "out_name": "one_factor",
        },
        "small_k_rate.json": {
            "kind": "small_k",
            "symbol": gegen,
            "N": [128, 256, 512, 1024, 2048, 4096],
            "k": [0, 5, 17],
            "out_name": "gegenbauer",
        },
        "gegenbauer_oscillation.json": {
            "kind": "gegenbauer_phase",
            "symbol": gegen,
            "N": [2048],
            "out_name": "gegenbauer",
        },
        "neumann_crosscheck.json": {
            "kind": "neumann_crosscheck",
            "symbol": gegen,
            "N": [16],
            "s_max": 16,
            "n_max": 4096,
            "out_name": "gegenbauer",
        },
        "f_kernel_table.json": {
            "kind": "f_kernel_table",
            "symbol": {},
            "alpha": 0.25,
            "N": [64, 256, 1024],
            "z": [0.0, 0.25, 0.5, 0.75, 0.9],
            "n_max": 16384,
            "out_name": "quarter",
        },
    }


def _cmd_demo(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    symbol_dir = out / "symbols"
    symbol_dir.mkdir(exist_ok=True)
    for name in sorted(fixtures.FIXTURES):
        path = symbol_dir / f"{name}.json"
        path.write_text(
            json.dumps(fixtures.fixture_json(name), indent=2, sort_keys=True) + "\n",
            encoding="ascii",
        )
    for fname, cfg in _demo_configs().items():
        (out / fname).write_text(
            json.dumps(cfg, indent=2, sort_keys=True) + "\n", encoding="ascii"
        )
    print(f"wrote {len(fixtures.FIXTURES)} symbol files and "
          f"{len(_demo_configs())} experiment configs under {out}")
    if args.run:
        config = validate_config((out / "first_column_smoke.json").read_text())
        result = run(config, out / "smoke")
        print(f"smoke run: {'PASS' if result.all_passed else 'FAIL'}")
        return result.exit_code
    return 0


def main(argv=None) -> int:
    _setup_logging()
    parser = argparse.ArgumentParser(
        prog="szego-fh",
        description="Exact and asymptotic inverse-Toeplitz experiments for "
        "Fisher-Hartwig symbols",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--threads", type=int, default=1)
    p_run.add_argument("--seed", type=int, default=None,
                       help="accepted for interface stability; ignored "
                       "(all computations are deterministic)")
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="validate a config, listing all errors")
    p_val.add_argument("--config", required=True)
    p_val.set_defaults(func=_cmd_validate)

    p_demo = sub.add_parser("demo", help="write fixture symbols and demo configs")
    p_demo.add_argument("--out", required=True)
    p_demo.add_argument("--run", action="store_true",
                        help="also execute the smoke experiment")
    p_demo.set_defaults(func=_cmd_demo)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
