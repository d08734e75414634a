"""Command line front end.

One executable, seven subcommands: solve/pareto/presolve work on an
instance file, gen creates instance files, export emits LP models, and
bench/profile drive batch comparisons.  The global flags --time-limit,
--seed, --workers, and --output are accepted both before and after the
subcommand; the later occurrence wins.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .dfs_solver import Solution
from .graph import Instance, ParseError, parse_instance
from .harness import (
    METHODS,
    UsageError,
    bench_csv,
    parse_bench_csv,
    perf_profile,
    profile_csv,
    run_bench,
    solve_with_method,
)
from .instgen import GenerationError, random_instance_text, synthetic_instance_text
from .modelgen import MODELS, export, summary_csv
from .oracle import CapExceededError, DEFAULT_CAP, objective_image_and_pareto
from .order import check_order, format_solution
from .presolve import full_presolve, DEFAULT_CLIQUE_BUDGET

OBJECTIVE_MAP = {"double": "min-double", "nodes": "min-nodes"}
PRE_BREAK_MAP = {"none": "none", "2": "2cycles", "23": "2and3cycles"}

SOLVE_STATS_HEADER = (
    "method,status,objective,time_ms,choice_points,cuts,"
    "cliques_considered,iterations,iis_time_ms"
)


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags; suppress=True keeps the pre-subcommand value unless given."""

    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--time-limit", type=float, default=dflt(None), metavar="SECONDS",
        help="cooperative wall-clock limit per solve",
    )
    parser.add_argument(
        "--seed", type=int, default=dflt(0), help="generator seed",
    )
    parser.add_argument(
        "--workers", type=int, default=dflt(1), help="bench worker processes",
    )
    parser.add_argument(
        "-o", "--output", default=dflt(None), metavar="FILE",
        help="write the main artifact here instead of stdout",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddvop",
        description="Exact solvers for minimum-double discretization orders.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("solve", help="run one method on one instance")
    p.add_argument("instance", help="instance file, or - for stdin")
    p.add_argument("--method", choices=METHODS, default="dfs")
    p.add_argument("--objective", choices=("double", "nodes"), default="double")
    p.add_argument("--no-presolve", action="store_true")
    p.add_argument(
        "--nogood", action="store_true",
        help="naive method: cut only the failing pattern instead of an IIS",
    )
    p.add_argument("--pre-break", choices=tuple(PRE_BREAK_MAP), default="none",
                   help="witness method: seed 2-cycle (and 3-cycle) cuts")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="oracle enumeration size cap")
    _add_common(p, suppress=True)

    p = sub.add_parser("pareto", help="objective image and Pareto frontier")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _add_common(p, suppress=True)

    p = sub.add_parser("presolve", help="print fixings and cover cuts")
    p.add_argument("instance")
    p.add_argument("--no-head", action="store_true",
                   help="skip the clique-based head analysis")
    p.add_argument("--clique-budget", type=int, default=DEFAULT_CLIQUE_BUDGET)
    _add_common(p, suppress=True)

    p = sub.add_parser("gen", help="generate an instance file")
    kinds = p.add_subparsers(dest="kind", required=True, metavar="KIND")
    r = kinds.add_parser("random", help="independent edges at a target density")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--density", type=float, required=True)
    r.add_argument("--k", type=int, required=True)
    _add_common(r, suppress=True)
    s = kinds.add_parser("synthetic", help="planted-order instance")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--doubles", type=int, required=True)
    s.add_argument("--noise", type=float, default=0.0)
    s.add_argument("--n", type=int, required=True)
    _add_common(s, suppress=True)

    p = sub.add_parser("export", help="write an LP model file")
    p.add_argument("instance")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--unordered-cliques", action="store_true",
                   help="one rank labeling per clique instead of all K!")
    _add_common(p, suppress=True)

    p = sub.add_parser("bench", help="instance x method grid to CSV")
    p.add_argument("instances", nargs="+", help="instance files")
    p.add_argument("--methods", default=",".join(METHODS),
                   help="comma-separated subset of " + ",".join(METHODS))
    p.add_argument("--objective", choices=("double", "nodes"), default="double")
    _add_common(p, suppress=True)

    p = sub.add_parser("profile", help="performance-profile points from a bench CSV")
    p.add_argument("bench_csv", help="bench CSV file, or - for stdin")
    _add_common(p, suppress=True)

    return parser


def _load_instance(path: str) -> Instance:
    if path == "-":
        return parse_instance(sys.stdin.read(), name="stdin")
    return parse_instance(Path(path).read_text(), name=Path(path).stem)


def _emit(ns: argparse.Namespace, text: str, side_text: str = "") -> None:
    """Main artifact to --output or stdout; side channel never collides."""
    if ns.output and ns.output != "-":
        Path(ns.output).write_text(text)
        if side_text:
            sys.stdout.write(side_text)
    else:
        sys.stdout.write(text)
        if side_text:
            sys.stderr.write(side_text)


def _solve_stats_csv(method: str, sol: Solution) -> str:
    st = sol.stats
    row = ",".join(
        str(f)
        for f in (
            method,
            sol.status,
            "" if sol.objective is None else sol.objective,
            f"{st.time_ms:.3f}",
            st.choice_points,
            st.cuts,
            st.cliques_considered,
            st.iterations,
            f"{st.iis_time_ms:.3f}",
        )
    )
    return SOLVE_STATS_HEADER + "\n" + row + "\n"


def cmd_solve(ns: argparse.Namespace) -> int:
    inst = _load_instance(ns.instance)
    sol = solve_with_method(
        inst,
        ns.method,
        OBJECTIVE_MAP[ns.objective],
        time_limit=ns.time_limit,
        use_presolve=not ns.no_presolve,
        nogood=ns.nogood,
        pre_break=PRE_BREAK_MAP[ns.pre_break],
        oracle_cap=ns.cap,
    )
    if sol.order is not None:
        text = format_solution(sol.status, sol.order, check_order(inst, sol.order))
    else:
        text = format_solution(sol.status)
    _emit(ns, text, _solve_stats_csv(ns.method, sol))
    return 0


def cmd_pareto(ns: argparse.Namespace) -> int:
    inst = _load_instance(ns.instance)
    image, front = objective_image_and_pareto(inst, cap=ns.cap)
    front_set = set(front)
    lines = ["nodes,doubles,dominated"]
    for pt in sorted(image):
        flag = 0 if pt in front_set else 1
        lines.append(f"{pt.nodes_obj},{pt.doubles_obj},{flag}")
    side = "" if image else "no valid orders: instance is infeasible\n"
    _emit(ns, "\n".join(lines) + "\n", side)
    return 0


def cmd_presolve(ns: argparse.Namespace) -> int:
    inst = _load_instance(ns.instance)
    result = full_presolve(
        inst, use_head=not ns.no_head, clique_budget=ns.clique_budget
    )
    _emit(ns, "\n".join(result.as_lines()) + "\n")
    return 0


def cmd_gen(ns: argparse.Namespace) -> int:
    if ns.kind == "random":
        text = random_instance_text(ns.n, ns.density, ns.k, ns.seed)
    else:
        text = synthetic_instance_text(ns.k, ns.doubles, ns.noise, ns.n, ns.seed)
    _emit(ns, text)
    return 0


def cmd_export(ns: argparse.Namespace) -> int:
    inst = _load_instance(ns.instance)
    text, summary = export(inst, ns.model, unordered_cliques=ns.unordered_cliques)
    side = summary_csv(summary)
    if summary.warning:
        print(f"warning: {summary.warning}", file=sys.stderr)
    _emit(ns, text, side)
    return 0


def cmd_bench(ns: argparse.Namespace) -> int:
    instances = [_load_instance(p) for p in ns.instances]
    methods = [m for m in ns.methods.split(",") if m]
    rows = run_bench(
        instances,
        methods,
        OBJECTIVE_MAP[ns.objective],
        time_limit=ns.time_limit,
        workers=ns.workers,
    )
    _emit(ns, bench_csv(rows))
    return 0


def cmd_profile(ns: argparse.Namespace) -> int:
    if ns.bench_csv == "-":
        text = sys.stdin.read()
    else:
        text = Path(ns.bench_csv).read_text()
    points = perf_profile(parse_bench_csv(text))
    _emit(ns, profile_csv(points))
    return 0


HANDLERS = {
    "solve": cmd_solve,
    "pareto": cmd_pareto,
    "presolve": cmd_presolve,
    "gen": cmd_gen,
    "export": cmd_export,
    "bench": cmd_bench,
    "profile": cmd_profile,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return HANDLERS[ns.command](ns)
    except (ParseError, GenerationError, UsageError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
