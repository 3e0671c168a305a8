"""
Batch runner
------------

Runs a problem over a scheme x grid-size matrix and writes plain files::

    python -m mopweno --problem sin --scheme weno-js --scheme mop-weno-m \\
        --cells 40 --cells 80 --cells 160 --tfinal 2 --out runs/sin

Outputs in ``--out``:

``report.csv``
    one row per (scheme, N) with errors, orders, non-OP count and status
``comparison.csv``
    increased errors in percent against the baseline scheme, if one is set
``solution_<scheme>_N<n>.csv``
    the final field (1D: ``x, u, exact``; 2D: ``x, y, rho, u, v, p``)
``slice_<scheme>_N<n>.csv``
    2D only: density along the diagnostic slice
``metadata.json``
    timestamps and wall times, kept apart so the CSV files are
    byte-identical across repeated runs

A config file holds one ``key = value`` per line (``#`` starts a comment);
list values are comma separated. Keys: ``problem``, ``schemes``, ``cells``,
``tfinal``, ``cfl_rule``, ``out``, ``baseline``, ``slow``. Command-line
flags override the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from mopweno.advection1d import INITIAL_CONDITIONS, AdvectionProblem, solve
from mopweno.euler2d import PROBLEMS_2D, SLICES, solve_euler
from mopweno.metrics import (
    ErrorTriple,
    convergence_order,
    error_norms,
    increased_error_pct,
    slice_extract,
    total_variation,
)
from mopweno.schemes import resolve_scheme

# runs at least this long (1D output time) or this fine (2D cells per side)
# are only executed with --slow
SLOW_T_1D = 1000.0
SLOW_N_2D = 400


def _fmt(x) -> str:
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.17g}"
    return str(x)


@dataclass
class RunConfig:
    problem: str
    schemes: list[str] = field(default_factory=list)
    cells: list[int] = field(default_factory=list)
    tfinal: float | None = None
    cfl_rule: str | None = None
    out: Path | None = None
    baseline: str | None = None
    slow: bool = False

    def validate(self) -> None:
        if self.problem not in INITIAL_CONDITIONS and self.problem not in PROBLEMS_2D:
            raise ValueError(f"unknown problem: {self.problem!r}")
        for name in self.schemes:
            resolve_scheme(name)
        if any(n <= 0 for n in self.cells):
            raise ValueError("grid sizes must be positive")
        if self.is_2d and self.cfl_rule is not None and self.cfl_rule not in ("sum", "min"):
            raise ValueError("2D cfl_rule must be 'sum' or 'min'")
        if not self.is_2d and self.tfinal is None:
            raise ValueError("1D problems need an output time")

    @property
    def is_2d(self) -> bool:
        return self.problem in PROBLEMS_2D


@dataclass
class RunReport:
    problem: str
    scheme: str
    n: int
    t_end: float
    status: str = "ok"
    message: str = ""
    steps: int = 0
    errors: ErrorTriple | None = None
    orders: tuple[float, float, float] = (math.nan, math.nan, math.nan)
    non_op_count: int = 0
    slice_tv: float = math.nan
    wall_time: float = 0.0
    solution_path: Path | None = None
    slice_path: Path | None = None


REPORT_FIELDS = (
    "problem", "scheme", "n", "t_end", "status", "steps",
    "l1", "l2", "linf", "order_l1", "order_l2", "order_linf",
    "non_op_count", "slice_tv", "message",
)  # fmt: skip


def _report_row(r: RunReport) -> list[str]:
    e = r.errors or ErrorTriple(math.nan, math.nan, math.nan)
    vals = [
        r.problem, r.scheme, r.n, float(r.t_end), r.status, r.steps,
        e.l1, e.l2, e.linf, *r.orders, r.non_op_count, r.slice_tv, r.message,
    ]  # fmt: skip
    return [_fmt(v) for v in vals]


# {{{ file output


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _columns_csv(header, *cols) -> str:
    return _csv_text(header, ([_fmt(float(v)) for v in row] for row in zip(*cols)))


# }}}


def _needs_slow(config: RunConfig, n: int, t_end: float) -> bool:
    return n >= SLOW_N_2D if config.is_2d else t_end >= SLOW_T_1D


def _run_cell(config: RunConfig, scheme: str, n: int) -> RunReport:
    out = config.out
    if config.is_2d:
        res = solve_euler(config.problem, n, scheme, t_end=config.tfinal, cfl_form=config.cfl_rule or "sum")
        rep = RunReport(config.problem, scheme, n, res.t, steps=res.steps, non_op_count=res.non_op_count)
        rep.wall_time = res.wall_time
        W = res.primitive
        axis, coord, window = SLICES[config.problem]
        pos, prof = slice_extract(W[0], res.grid, axis, coord, window)
        rep.slice_tv = total_variation(prof)
        if out is not None:
            X, Y = np.meshgrid(res.grid.gx.centers, res.grid.gy.centers, indexing="ij")
            rep.solution_path = out / f"solution_{scheme}_N{n}.csv"
            atomic_write(rep.solution_path, _columns_csv(("x", "y", "rho", "u", "v", "p"), X.ravel(), Y.ravel(), *(w.ravel() for w in W)))
            rep.slice_path = out / f"slice_{scheme}_N{n}.csv"
            atomic_write(rep.slice_path, _columns_csv((axis, "rho"), pos, prof))
        return rep
    problem = AdvectionProblem(config.problem, n, float(config.tfinal), config.cfl_rule)
    res = solve(problem, scheme)
    rep = RunReport(config.problem, scheme, n, problem.t_end, steps=res.steps, non_op_count=res.non_op_count)
    rep.wall_time = res.wall_time
    rep.errors = error_norms(res.u, res.exact, problem.grid.dx)
    if out is not None:
        rep.solution_path = out / f"solution_{scheme}_N{n}.csv"
        atomic_write(rep.solution_path, _columns_csv(("x", "u", "exact"), problem.grid.centers, res.u, res.exact))
    return rep


def _fill_orders(reports: list[RunReport]) -> None:
    by_scheme: dict[str, list[RunReport]] = {}
    for r in reports:
        by_scheme.setdefault(r.scheme, []).append(r)
    for rows in by_scheme.values():
        rows = sorted((r for r in rows if r.errors is not None), key=lambda r: r.n)
        for prev, cur in zip(rows, rows[1:]):
            ratio = cur.n / prev.n
            cur.orders = tuple(convergence_order(a, b, ratio) for a, b in zip(prev.errors, cur.errors))


def run_matrix(config: RunConfig, log=None) -> list[RunReport]:
    """One report per (scheme, N). Solver failures are recorded in the
    report (``status="failed"``) and the matrix carries on."""
    config.validate()
    reports = []
    for scheme in config.schemes:
        for n in config.cells:
            t_end = config.tfinal if config.tfinal is not None else PROBLEMS_2D[config.problem]().t_end
            if _needs_slow(config, n, t_end) and not config.slow:
                rep = RunReport(config.problem, scheme, n, t_end, status="skipped", message="needs --slow")
            else:
                try:
                    rep = _run_cell(config, scheme, n)
                except Exception as exc:  # recorded, not fatal
                    rep = RunReport(config.problem, scheme, n, t_end, status="failed", message=f"{type(exc).__name__}: {exc}")
            if log is not None:
                log(f"{scheme:>16s}  N={n:<5d} {rep.status}")
            reports.append(rep)
    _fill_orders(reports)
    if config.out is not None:
        write_reports(config, reports)
    return reports


def compare_schemes(reports: list[RunReport], baseline: str) -> list[dict]:
    """Increased errors (percent) of every scheme against *baseline*, per N
    and norm. 2D reports are compared through the slice total variation."""
    base = {r.n: r for r in reports if r.scheme == baseline and r.status == "ok"}
    if not base:
        raise KeyError(f"baseline scheme {baseline!r} has no successful runs")
    rows = []
    for r in reports:
        ref = base.get(r.n)
        if ref is None or r.status != "ok":
            continue
        if r.errors is not None:
            pct = {k: increased_error_pct(a, b) for k, a, b in zip(("l1", "l2", "linf"), r.errors, ref.errors)}
        else:
            pct = {"slice_tv": increased_error_pct(r.slice_tv, ref.slice_tv)}
        rows.append({"scheme": r.scheme, "n": r.n, **pct})
    return rows


def write_reports(config: RunConfig, reports: list[RunReport]) -> None:
    out = config.out
    atomic_write(out / "report.csv", _csv_text(REPORT_FIELDS, (_report_row(r) for r in reports)))
    if config.baseline:
        try:
            rows = compare_schemes(reports, config.baseline)
        except KeyError:
            rows = []
        keys = ("l1", "l2", "linf") if not config.is_2d else ("slice_tv",)
        atomic_write(
            out / "comparison.csv",
            _csv_text(("scheme", "n", *keys), ([r["scheme"], r["n"], *(_fmt(r[k]) for k in keys)] for r in rows)),
        )
    meta = {
        "written": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "config": {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(config).items()},
        "wall_time": {f"{r.scheme}/N{r.n}": r.wall_time for r in reports},
    }
    atomic_write(out / "metadata.json", json.dumps(meta, indent=2) + "\n")


# {{{ config parsing


def read_config_file(path: Path) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lower()] = value
    return values


def _split(v: str) -> list[str]:
    return [s.strip() for s in v.split(",") if s.strip()]


def config_from_mapping(values: dict[str, str]) -> RunConfig:
    known = {"problem", "schemes", "scheme", "cells", "tfinal", "cfl_rule", "out", "baseline", "slow"}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "problem" not in values:
        raise ValueError("config needs a 'problem'")
    return RunConfig(
        problem=values["problem"],
        schemes=_split(values.get("schemes", values.get("scheme", ""))),
        cells=[int(s) for s in _split(values.get("cells", ""))],
        tfinal=float(values["tfinal"]) if values.get("tfinal") else None,
        cfl_rule=values.get("cfl_rule") or None,
        out=Path(values["out"]) if values.get("out") else None,
        baseline=values.get("baseline") or None,
        slow=values.get("slow", "false").lower() in ("1", "true", "yes"),
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mopweno", description="Run WENO scheme x grid matrices and write CSV reports.")
    p.add_argument("--config", type=Path, metavar="PATH", help="key = value run configuration")
    p.add_argument("--scheme", action="append", metavar="NAME", help="scheme name, repeatable (e.g. weno-m, mop-weno-m)")
    p.add_argument("--problem", metavar="ID", help="sin, sin_sin, sin9, slp, bicwp, shock_vortex or riemann4")
    p.add_argument("--cells", action="append", type=int, metavar="N", help="cells per direction, repeatable")
    p.add_argument("--tfinal", type=float, metavar="T", help="output time")
    p.add_argument("--cfl-rule", metavar="RULE", help="1D: accuracy or fixed; 2D: sum or min")
    p.add_argument("--baseline", metavar="NAME", help="scheme for the increased-error comparison")
    p.add_argument("--out", type=Path, metavar="DIR", help="output directory")
    p.add_argument("--slow", action="store_true", help="allow 1D t >= 1000 and 2D 400x400+ runs")
    return p


def parse_args(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    config = config_from_mapping(read_config_file(args.config)) if args.config else None
    if config is None:
        if not args.problem:
            raise SystemExit("either --config or --problem is required")
        config = RunConfig(problem=args.problem)
    overrides = {
        "problem": args.problem,
        "schemes": args.scheme,
        "cells": args.cells,
        "tfinal": args.tfinal,
        "cfl_rule": args.cfl_rule,
        "baseline": args.baseline,
        "out": args.out,
    }
    config = replace(config, **{k: v for k, v in overrides.items() if v is not None})
    if args.slow:
        config.slow = True
    return config


# }}}


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
        config.validate()
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports = run_matrix(config, log=lambda s: print(s, file=sys.stderr))
    print(_csv_text(REPORT_FIELDS, (_report_row(r) for r in reports)), end="")
    return 1 if any(r.status == "failed" for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
