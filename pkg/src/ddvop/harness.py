"""Benchmark runner and performance-profile data generation.

The bench loop is deliberately plain: every (instance, method) pair becomes
one CSV row, a solver crash becomes an ERROR row instead of aborting the
batch, and cross-method agreement is asserted at aggregation time so a
silently wrong solver fails loudly here rather than in a plot.  Performance
profiles are emitted as (method, tau, fraction) data points; plotting is
left to external tools.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Optional, Sequence

from .dfs_solver import Solution, SolveOptions, SolveStats, solve
from .graph import Instance
from .naive_decomp import solve_naive
from .oracle import DEFAULT_CAP, OBJECTIVES, brute_optimum
from .witness_decomp import WitnessOptions, solve_witness

METHODS = ("oracle", "dfs", "naive", "witness")

# Methods built around double-pattern masters cannot minimize node counts.
DOUBLE_ONLY_METHODS = ("naive", "witness")

BENCH_HEADER = (
    "instance",
    "n",
    "density",
    "K",
    "method",
    "status",
    "objective",
    "time_ms",
    "choice_points_or_bb_nodes",
    "cuts",
    "cliques_considered",
)

PROFILE_HEADER = ("method", "tau", "fraction")

# Sub-millisecond timings are noise; floor them before forming ratios.
_TIME_FLOOR_MS = 0.01


class UsageError(ValueError):
    """Caller misuse (bad method list, unsupported combination)."""


@dataclass(frozen=True)
class BenchRow:
    instance: str
    n: int
    density: float
    K: int
    method: str
    status: str
    objective: Optional[int]
    time_ms: float
    choice_points_or_bb_nodes: int
    cuts: int
    cliques_considered: int

    def csv_fields(self) -> tuple[str, ...]:
        return (
            self.instance,
            str(self.n),
            f"{self.density:.4f}",
            str(self.K),
            self.method,
            self.status,
            "" if self.objective is None else str(self.objective),
            f"{self.time_ms:.3f}",
            str(self.choice_points_or_bb_nodes),
            str(self.cuts),
            str(self.cliques_considered),
        )


def solve_with_method(
    inst: Instance,
    method: str,
    objective: str = "min-double",
    time_limit: Optional[float] = None,
    use_presolve: bool = True,
    nogood: bool = False,
    pre_break: str = "none",
    oracle_cap: int = DEFAULT_CAP,
) -> Solution:
    """Uniform front door: any method in, a Solution out."""
    if method not in METHODS:
        raise UsageError(f"method must be one of {METHODS}, got {method!r}")
    if objective not in OBJECTIVES:
        raise UsageError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    if method in DOUBLE_ONLY_METHODS and objective != "min-double":
        raise UsageError(f"method {method} supports only the min-double objective")
    if method == "oracle":
        t0 = time.monotonic()
        res = brute_optimum(inst, objective, cap=oracle_cap)
        stats = SolveStats(time_ms=(time.monotonic() - t0) * 1000.0)
        if res is None:
            return Solution("INFEASIBLE", None, None, None, stats)
        return Solution("OPTIMAL", res.value, res.order, res.report.doubles, stats)
    if method == "dfs":
        return solve(inst, objective, SolveOptions(time_limit, use_presolve))
    if method == "naive":
        return solve_naive(inst, SolveOptions(time_limit, use_presolve), nogood)
    return solve_witness(
        inst, WitnessOptions(time_limit, pre_break, use_presolve)
    )


def _row_from_solution(inst: Instance, method: str, sol: Solution) -> BenchRow:
    return BenchRow(
        instance=inst.name or f"n{inst.n}_K{inst.K}_m{inst.m}",
        n=inst.n,
        density=inst.density(),
        K=inst.K,
        method=method,
        status=sol.status,
        objective=sol.objective,
        time_ms=sol.stats.time_ms,
        choice_points_or_bb_nodes=sol.stats.choice_points,
        cuts=sol.stats.cuts,
        cliques_considered=sol.stats.cliques_considered,
    )


def _bench_task(
    task: tuple[Instance, str], objective: str, time_limit: Optional[float]
) -> BenchRow:
    inst, method = task
    t0 = time.monotonic()
    try:
        sol = solve_with_method(inst, method, objective, time_limit)
    except Exception:
        elapsed = (time.monotonic() - t0) * 1000.0
        return BenchRow(
            instance=inst.name or f"n{inst.n}_K{inst.K}_m{inst.m}",
            n=inst.n,
            density=inst.density(),
            K=inst.K,
            method=method,
            status="ERROR",
            objective=None,
            time_ms=elapsed,
            choice_points_or_bb_nodes=0,
            cuts=0,
            cliques_considered=0,
        )
    return _row_from_solution(inst, method, sol)


def _assert_agreement(rows: Sequence[BenchRow], per_instance: int) -> None:
    for start in range(0, len(rows), per_instance):
        group = rows[start : start + per_instance]
        finished = [r for r in group if r.status == "OPTIMAL"]
        infeasible = [r for r in group if r.status == "INFEASIBLE"]
        values = {r.objective for r in finished}
        assert len(values) <= 1, (
            f"optimal objectives disagree on {group[0].instance}: "
            + ", ".join(f"{r.method}={r.objective}" for r in finished)
        )
        assert not (finished and infeasible), (
            f"feasibility verdicts disagree on {group[0].instance}: "
            + ", ".join(f"{r.method}={r.status}" for r in group)
        )


def run_bench(
    instances: Sequence[Instance],
    methods: Sequence[str],
    objective: str = "min-double",
    time_limit: Optional[float] = None,
    workers: int = 1,
) -> list[BenchRow]:
    """One row per (instance, method), instance-major deterministic order."""
    if not methods:
        raise UsageError("at least one method is required")
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {METHODS}")
        if m in DOUBLE_ONLY_METHODS and objective != "min-double":
            raise UsageError(f"method {m} supports only the min-double objective")
    if objective not in OBJECTIVES:
        raise UsageError(f"objective must be one of {OBJECTIVES}")
    if workers < 1:
        raise UsageError("workers must be >= 1")

    tasks = [(inst, m) for inst in instances for m in methods]
    fn = partial(_bench_task, objective=objective, time_limit=time_limit)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(fn, tasks))
    else:
        rows = [fn(t) for t in tasks]
    _assert_agreement(rows, len(methods))
    return rows


def bench_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def parse_bench_csv(text: str) -> list[BenchRow]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise ValueError("empty bench CSV") from None
    if header != BENCH_HEADER:
        raise ValueError(f"bench CSV header mismatch: {header}")
    rows = []
    for fields in reader:
        if not fields:
            continue
        if len(fields) != len(BENCH_HEADER):
            raise ValueError(f"bench CSV row has {len(fields)} fields: {fields}")
        rows.append(
            BenchRow(
                instance=fields[0],
                n=int(fields[1]),
                density=float(fields[2]),
                K=int(fields[3]),
                method=fields[4],
                status=fields[5],
                objective=None if fields[6] == "" else int(fields[6]),
                time_ms=float(fields[7]),
                choice_points_or_bb_nodes=int(fields[8]),
                cuts=int(fields[9]),
                cliques_considered=int(fields[10]),
            )
        )
    return rows


def perf_profile(rows: Sequence[BenchRow]) -> list[tuple[str, float, float]]:
    """Performance-profile points over the OPTIMAL rows of a bench.

    For each instance the best OPTIMAL time across methods is the baseline;
    a method's curve value at tau is the fraction of profiled instances it
    solved within a factor tau of that baseline.  Instances no method solved
    to OPTIMAL (infeasible ones included) are outside the profile universe.
    """
    methods: list[str] = []
    for r in rows:
        if r.method not in methods:
            methods.append(r.method)

    by_instance: dict[tuple[str, int, int], dict[str, float]] = {}
    for r in rows:
        if r.status != "OPTIMAL":
            continue
        key = (r.instance, r.n, r.K)
        by_instance.setdefault(key, {})[r.method] = max(r.time_ms, _TIME_FLOOR_MS)
    if not by_instance:
        return []

    total = len(by_instance)
    ratios: dict[str, list[float]] = {m: [] for m in methods}
    for times in by_instance.values():
        best = min(times.values())
        for m, t in times.items():
            ratios[m].append(t / best)

    taus = sorted({1.0} | {r for rs in ratios.values() for r in rs if math.isfinite(r)})
    points = []
    for m in methods:
        solved = sorted(ratios[m])
        for tau in taus:
            within = sum(1 for r in solved if r <= tau + 1e-12)
            points.append((m, tau, within / total))
    return points


def profile_csv(points: Sequence[tuple[str, float, float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PROFILE_HEADER)
    for method, tau, fraction in points:
        writer.writerow([method, f"{tau:.6g}", f"{fraction:.6f}"])
    return buf.getvalue()
