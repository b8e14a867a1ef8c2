"""Batch interface: simulate, classify, verify, and sweep from config files.

Exit codes: 0 success (verify: all predictions pass), 1 config or
validation error, 2 verification failure or a diverged simulation,
3 I/O error.  All output is deterministic for a fixed config and seed;
floats are serialized with 17 significant digits so CSV files round-trip
to the exact in-memory doubles.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from typing import List, Optional, Tuple

import numpy as np

from .analysis import analyze
from .classifier import (
    BoundaryAmbiguous,
    Classification,
    CONVERGES_TO_ZERO,
    PERIOD_2K,
    PERIOD_K,
    UNBOUNDED_EXISTS,
    classify_tetrachotomy,
    classify_trichotomy,
    verify_classification,
)
from .config import ConfigError, RunConfig, load_config, resolve_init
from .model import SystemSpec, Trajectory, validate
from .simulator import simulate

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2
EXIT_IO = 3

_REGIMES = (CONVERGES_TO_ZERO, PERIOD_K, PERIOD_2K, UNBOUNDED_EXISTS)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_matrix(a: np.ndarray) -> str:
    rows = ", ".join("[" + ", ".join(_fmt(x) for x in row) + "]" for row in a)
    return "[" + rows + "]"


def write_trajectory_csv(path: str, traj: Trajectory) -> None:
    lines = ["n," + ",".join(f"v{i + 1}" for i in range(traj.m))]
    for offset, row in enumerate(traj.values):
        n = traj.n_first + offset
        lines.append(f"{n}," + ",".join(_fmt(x) for x in row))
    if traj.diverged_at is not None:
        lines.append(f"# diverged at n={traj.diverged_at}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_trajectory_csv(path: str) -> Tuple[np.ndarray, np.ndarray, Optional[int]]:
    """Read back (indices, values, diverged_at) from a trajectory CSV."""
    ns: List[int] = []
    rows: List[List[float]] = []
    diverged_at = None
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("n,"):
            raise ValueError(f"{path} is not a trajectory CSV")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if "diverged at n=" in line:
                    diverged_at = int(line.split("n=")[1])
                continue
            parts = line.split(",")
            ns.append(int(parts[0]))
            rows.append([float(p) for p in parts[1:]])
    return np.asarray(ns), np.asarray(rows), diverged_at


def _classify(cfg: RunConfig) -> Classification:
    if cfg.mode == "tetrachotomy":
        return classify_tetrachotomy(cfg.spec, cfg.rho_tol)
    if cfg.mode == "trichotomy":
        return classify_trichotomy(cfg.spec, cfg.rho_tol)
    raise ConfigError("mode must be set to tetrachotomy or trichotomy")


def _expected_classification(cfg: RunConfig, cls: Classification) -> Classification:
    """Apply the optional verify.expect override (for negative-path checks)."""
    if cfg.expect_regime is None or cfg.expect_regime == cls.regime:
        return cls
    if cfg.expect_regime not in _REGIMES:
        raise ConfigError(f"verify.expect must be one of {_REGIMES}")
    return replace(cls, regime=cfg.expect_regime, theorem_path="expected:" + cfg.expect_regime)


def cmd_simulate(cfg: RunConfig, out_path: str, horizon: int) -> int:
    init = resolve_init(cfg)
    traj = simulate(cfg.spec, init, horizon)
    write_trajectory_csv(out_path, traj)
    if traj.diverged_at is not None:
        print(f"diverged at n={traj.diverged_at}; partial trajectory written to {out_path}")
        return EXIT_VERIFICATION
    print(f"wrote {traj.horizon + traj.k} rows to {out_path}")
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    cls = _classify(cfg)
    print(f"regime: {cls.regime}")
    print(f"theorem: {cls.theorem_path}")
    print(f"rho: {_fmt(cls.spectrum.spectral_radius)}")
    print("eigenvalues: " + ", ".join(_fmt(x) for x in cls.spectrum.eigenvalues))
    if cls.spectrum.perron is not None:
        r, w = cls.spectrum.perron
        print(f"perron: r={_fmt(r)} w=[" + ", ".join(_fmt(x) for x in w) + "]")
    if cls.witness is not None:
        print(f"witness: {_fmt_matrix(cls.witness.history)}")
    return EXIT_OK


def _verify_lines(cfg: RunConfig, cls: Classification, horizon: int, trials: int) -> Tuple[List[str], bool]:
    report = verify_classification(
        cfg.spec,
        cls,
        horizon,
        trials,
        rng_seed=cfg.rng_seed,
        init_max=cfg.init_max,
        tolerances=cfg.tolerances,
    )
    width = max((len(c.name) for c in report.checks), default=10) + 2
    lines = [f"regime: {report.regime} ({report.theorem_path})"]
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        if not check.gated:
            status = "info"
        lines.append(f"{check.name:<{width}} {status:<6} observed: {check.observed}")
        if not check.passed and check.init is not None:
            lines.append(f"  counterexample init: {_fmt_matrix(check.init)}")
    lines.append("verdict: " + ("all predictions pass" if report.passed else "some predictions failed"))
    return lines, report.passed


def cmd_verify(cfg: RunConfig, horizon: int, trials: int, out_path: Optional[str]) -> int:
    cls = _expected_classification(cfg, _classify(cfg))
    lines, passed = _verify_lines(cfg, cls, horizon, trials)
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK if passed else EXIT_VERIFICATION


def cmd_sweep(cfg: RunConfig, out_dir: str, horizon: int, trials: int) -> int:
    if cfg.sweep is None or not cfg.sweep.c:
        raise ConfigError("sweep.c must declare a non-empty grid")
    grid = []
    for scale in cfg.sweep.denom_scale:
        for c in cfg.sweep.c:
            grid.append((scale, c))
    multi_scale = len(cfg.sweep.denom_scale) > 1
    header = ["c", "rho", "regime", "verified", "period_observed"]
    if multi_scale:
        header.insert(1, "denom_scale")
    rows = [",".join(header)]
    for cell_index, (scale, c) in enumerate(grid):
        cell_spec = SystemSpec(k=cfg.spec.k, A=c * cfg.spec.A, denom=scale * cfg.spec.denom)
        if cfg.mode == "tetrachotomy":
            cls = classify_tetrachotomy(cell_spec, cfg.rho_tol)
        elif cfg.mode == "trichotomy":
            cls = classify_trichotomy(cell_spec, cfg.rho_tol)
        else:
            raise ConfigError("mode must be set to tetrachotomy or trichotomy")
        report = verify_classification(
            cell_spec,
            cls,
            horizon,
            trials,
            rng_seed=np.random.SeedSequence([cfg.rng_seed, cell_index]),
            init_max=cfg.init_max,
            tolerances=cfg.tolerances,
        )
        period = ""
        if cls.witness is not None and cls.regime in (PERIOD_K, PERIOD_2K):
            traj = simulate(cell_spec, cls.witness, horizon)
            rep = analyze(traj, cell_spec, cfg.tolerances)
            if rep.period is not None:
                period = str(rep.period)
        row = [_fmt(c), _fmt(cls.spectrum.spectral_radius), cls.regime,
               "true" if report.passed else "false", period]
        if multi_scale:
            row.insert(1, _fmt(scale))
        rows.append(",".join(row))
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, "sweep.csv")
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(rows) + "\n")
    print(f"wrote {len(rows) - 1} rows to {out_path}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratsys",
        description="Simulate and classify k-th order rational difference systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_out in (
        ("simulate", True),
        ("classify", False),
        ("verify", False),
        ("sweep", True),
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the YAML config")
        p.add_argument("--out", required=needs_out, help="output path (simulate: CSV file, sweep: directory)")
        p.add_argument("--trials", type=int, default=None, help="override run.trials")
        p.add_argument("--horizon", type=int, default=None, help="override run.horizon")
        p.add_argument("--seed", type=int, default=None, help="override rng_seed")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    problems = validate(cfg.spec)
    if problems:
        print("error: invalid system: " + "; ".join(problems), file=sys.stderr)
        return EXIT_VALIDATION
    if args.seed is not None:
        cfg.rng_seed = args.seed
    horizon = args.horizon if args.horizon is not None else cfg.horizon
    trials = args.trials if args.trials is not None else cfg.trials
    try:
        if args.command == "simulate":
            return cmd_simulate(cfg, args.out, horizon)
        if args.command == "classify":
            return cmd_classify(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, horizon, trials, args.out)
        return cmd_sweep(cfg, args.out, horizon, trials)
    except (ConfigError, BoundaryAmbiguous, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
