"""LP-format exports of the integer programming formulations.

Writes the rank-indexed IP for minimum doubles, its node-count
extension, the two linear-ordering formulations (full cycle breaking
and rank-linked), the cycle-constraint-generation master with 2- and
3-cycle seeds, and the witness master, all as deterministic CPLEX-style
LP text for external MIP solvers.  A small parser and evaluator allow
substituting a known order into an exported file to confirm every
constraint and the objective value.  Summaries carry two counts per
variable or constraint family: the raw number emitted and the rounded
closed-form convention used by the formulation summary table.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Instance, enumerate_cliques, extendable_k_cliques
from .order import VertexOrder, check_order
from .witness_decomp import induce_witness_state

MODELS = ("ip", "minnodes", "cycles", "ranks", "mp2", "ccg")

Term = tuple[int, str]


class _Lp:
    """Accumulates one LP model and renders deterministic text."""

    def __init__(self, comments: Sequence[str]):
        self.comments = list(comments)
        self.obj_terms: list[Term] = []
        self.obj_const = 0
        self.cons: list[tuple[str, list[Term], str, int]] = []
        self.bounds: list[tuple[int, str, int]] = []
        self.binaries: list[str] = []
        self.generals: list[str] = []

    def constraint(self, name: str, terms: Sequence[Term], sense: str, rhs: int) -> None:
        assert sense in ("<=", ">=", "=")
        self.cons.append((name, list(terms), sense, rhs))

    @staticmethod
    def _expr(terms: Sequence[Term], const: int = 0) -> list[str]:
        parts: list[str] = []
        for coef, var in terms:
            if coef == 0:
                continue
            mag = abs(coef)
            body = var if mag == 1 else f"{mag} {var}"
            if not parts and coef > 0:
                parts.append(body)
            else:
                parts.append(("+ " if coef > 0 else "- ") + body)
        if const != 0 or not parts:
            mag = abs(const)
            if not parts:
                parts.append(str(const))
            else:
                parts.append(("+ " if const >= 0 else "- ") + str(mag))
        return parts

    @staticmethod
    def _wrap(head: str, parts: list[str], tail: str = "") -> list[str]:
        lines = []
        cur = head
        for p in parts:
            if len(cur) + len(p) + 1 > 78 and cur != head:
                lines.append(cur)
                cur = "      " + p
            else:
                cur = cur + " " + p
        if tail:
            cur = cur + " " + tail
        lines.append(cur)
        return lines

    def render(self) -> str:
        out: list[str] = [f"\\ {c}" for c in self.comments]
        out.append("Minimize")
        out.extend(self._wrap(" obj:", self._expr(self.obj_terms, self.obj_const)))
        out.append("Subject To")
        for name, terms, sense, rhs in self.cons:
            out.extend(self._wrap(f" {name}:", self._expr(terms), f"{sense} {rhs}"))
        if self.bounds:
            out.append("Bounds")
            for lo, var, hi in self.bounds:
                out.append(f" {lo} <= {var} <= {hi}")
        if self.binaries:
            out.append("Binaries")
            out.extend(self._wrap("", self.binaries))
        if self.generals:
            out.append("Generals")
            out.extend(self._wrap("", self.generals))
        out.append("End")
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ModelSummary:
    """Per-family (raw emitted, table convention) counts for one export."""

    model: str
    n: int
    m: int
    K: int
    variables: dict[str, tuple[int, int]]
    constraints: dict[str, tuple[int, int]]
    unordered_cliques: bool = False
    warning: str = ""


def summary_csv(summary: ModelSummary) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["model", "section", "family", "count", "table_count"])
    for fam, (raw, table) in summary.variables.items():
        w.writerow([summary.model, "variables", fam, raw, table])
    for fam, (raw, table) in summary.constraints.items():
        w.writerow([summary.model, "constraints", fam, raw, table])
    if summary.warning:
        w.writerow([summary.model, "warning", summary.warning, "", ""])
    return buf.getvalue()


def ordered_extendable_cliques(
    inst: Instance, unordered: bool = False
) -> list[tuple[int, ...]]:
    """Initial-clique candidates: extendable K-cliques with rank labelings.

    The linking coefficient depends on each member's rank inside the
    clique, so every labeling is a distinct candidate; the unordered
    variant keeps only the sorted labeling as a size-saving
    approximation.
    """
    out: list[tuple[int, ...]] = []
    for cl in extendable_k_cliques(inst):
        if unordered:
            out.append(cl.members)
        else:
            out.extend(itertools.permutations(cl.members))
    return out


def _kappa_name(c: tuple[int, ...]) -> str:
    return "kappa_" + "_".join(str(v) for v in c)


def _trivial_model(lp: _Lp, why: str) -> None:
    lp.comments.append(f"warning: {why}")
    lp.obj_terms = [(1, "infeasible_dummy")]
    lp.cons = []
    lp.constraint("force_one", [(1, "infeasible_dummy")], ">=", 1)
    lp.constraint("force_zero", [(1, "infeasible_dummy")], "<=", 0)
    lp.binaries = ["infeasible_dummy"]
    lp.generals = []
    lp.bounds = []


def _header(inst: Instance, model: str) -> list[str]:
    name = inst.name or "instance"
    return [
        f"model {model} for {name} (n={inst.n}, m={len(inst.edges)}, K={inst.K})"
    ]


def _export_ip(inst: Instance, with_nodes: bool) -> tuple[_Lp, dict, dict]:
    n, K = inst.n, inst.K
    lp = _Lp(_header(inst, "minnodes" if with_nodes else "ip"))
    if with_nodes:
        lp.obj_terms = [(1, f"m_{r}") for r in range(n)]
    else:
        lp.obj_terms = [(1, f"y_{r}") for r in range(n)]
    for v in range(n):
        lp.constraint(
            f"assign_v{v}", [(1, f"x_{v}_{r}") for r in range(n)], "=", 1
        )
    for r in range(n):
        lp.constraint(
            f"assign_r{r}", [(1, f"x_{v}_{r}") for v in range(n)], "=", 1
        )
    for v in range(n):
        for r in range(1, n):
            # Rank r needs r adjacent predecessors inside the clique
            # prefix, K afterwards.
            need = r if r <= K else K
            terms: list[Term] = [
                (1, f"x_{u}_{j}") for u in sorted(inst.neighbors[v]) for j in range(r)
            ]
            terms.append((-need, f"x_{v}_{r}"))
            lp.constraint(f"pred_v{v}_r{r}", terms, ">=", 0)
    for r in range(K):
        lp.constraint(f"fix_y{r}", [(1, f"y_{r}")], "=", 0)
    lp.constraint(f"fix_y{K}", [(1, f"y_{K}")], "=", 1)
    for v in range(n):
        for r in range(K, n):
            terms = [
                (1, f"x_{u}_{j}") for u in sorted(inst.neighbors[v]) for j in range(r)
            ]
            terms.append((-(K + 1), f"z_{v}_{r}"))
            lp.constraint(f"wit_v{v}_r{r}", terms, ">=", 0)
            lp.constraint(
                f"dbl_v{v}_r{r}",
                [(1, f"x_{v}_{r}"), (-1, f"y_{r}"), (-1, f"z_{v}_{r}")],
                "<=",
                0,
            )
    lp.binaries = (
        [f"x_{v}_{r}" for v in range(n) for r in range(n)]
        + [f"y_{r}" for r in range(n)]
        + [f"z_{v}_{r}" for v in range(n) for r in range(K, n)]
    )
    variables = {
        "y": (n, n),
        "x": (n * n, n * n),
        "z": (n * (n - K), n * (n - K)),
    }
    constraints = {
        "1-1 assignment": (2 * n, 2 * n),
        "clique": (n * (n - 1), n * n),
        "fixing": (K + 1, K + 1),
        "linking": (2 * n * (n - K), 2 * (n * n - K - 1)),
    }
    if with_nodes:
        for r in range(K):
            lp.constraint(f"mfix_r{r}", [(1, f"m_{r}")], "=", 1)
        for r in range(K, n):
            lp.constraint(
                f"mmono_r{r}", [(1, f"m_{r}"), (-1, f"m_{r - 1}")], ">=", 0
            )
            # m_r - 2 m_{r-1} >= -2^{r-K} (1 - y_{r-1}), the big-M wide
            # enough for the all-doubles worst case.
            big = 2 ** (r - K)
            lp.constraint(
                f"mdbl_r{r}",
                [(1, f"m_{r}"), (-2, f"m_{r - 1}"), (-big, f"y_{r - 1}")],
                ">=",
                -big,
            )
        lp.generals = [f"m_{r}" for r in range(n)]
        variables["m"] = (n, n)
        constraints["node fixing"] = (K, K)
        constraints["node monotone"] = (n - K, n - K)
        constraints["node doubling"] = (n - K, n - K)
    return lp, variables, constraints


def _linking_rows(
    lp: _Lp, inst: Instance, cliques: list[tuple[int, ...]]
) -> None:
    """Adjacent-predecessor requirement with the clique-rank correction.

    A vertex inside the chosen initial clique at clique rank R only has
    R-1 predecessors, so its kappa carries coefficient K-R+1; everyone
    ends up needing K predecessors when a double, K+1 otherwise, which
    forces y to 1 across the chosen clique.
    """
    n, K = inst.n, inst.K
    for i in range(n):
        terms: list[Term] = [(1, f"p_{j}_{i}") for j in sorted(inst.neighbors[i])]
        for c in cliques:
            if i in c:
                terms.append((K - (c.index(i) + 1) + 1, _kappa_name(c)))
        terms.append((1, f"y_{i}"))
        lp.constraint(f"link_v{i}", terms, ">=", K + 1)


def _export_ordering(
    inst: Instance, model: str, unordered: bool
) -> tuple[_Lp, dict, dict, str]:
    n, K = inst.n, inst.K
    m = len(inst.edges)
    lp = _Lp(_header(inst, model))
    cliques = ordered_extendable_cliques(inst, unordered)
    if not cliques:
        why = "no extendable K-clique; emitted trivially infeasible model"
        _trivial_model(lp, why)
        variables = {"dummy": (1, 1)}
        constraints = {"infeasible": (2, 2)}
        return lp, variables, constraints, why
    lp.obj_terms = [(1, f"y_{v}") for v in range(n)]
    lp.obj_const = -K
    edge_pairs = inst.sorted_edges()
    if model == "cycles":
        p_names = [f"p_{i}_{j}" for i in range(n) for j in range(n) if i != j]
        for i, j in itertools.combinations(range(n), 2):
            lp.constraint(
                f"pair_{i}_{j}", [(1, f"p_{i}_{j}"), (1, f"p_{j}_{i}")], "=", 1
            )
        tri = 0
        for i, j in edge_pairs:
            for k in range(n):
                if k == i or k == j:
                    continue
                lp.constraint(
                    f"tri_{i}_{j}_{k}",
                    [(1, f"p_{i}_{j}"), (1, f"p_{j}_{k}"), (1, f"p_{k}_{i}")],
                    "<=",
                    2,
                )
                lp.constraint(
                    f"tri_{j}_{i}_{k}",
                    [(1, f"p_{j}_{i}"), (1, f"p_{i}_{k}"), (1, f"p_{k}_{j}")],
                    "<=",
                    2,
                )
                tri += 2
        ordering = (n * (n - 1) // 2 + tri, n * n + n * n * m)
    else:
        p_names = [f"p_{i}_{j}" for i, j in edge_pairs] + [
            f"p_{j}_{i}" for i, j in edge_pairs
        ]
        p_names.sort()
        if model == "ranks":
            for i, j in edge_pairs:
                for a, b in ((i, j), (j, i)):
                    lp.constraint(
                        f"mtz_{a}_{b}",
                        [(n, f"p_{a}_{b}"), (1, f"r_{a}"), (-1, f"r_{b}")],
                        "<=",
                        n - 1,
                    )
            ordering = (2 * m, m)
        else:  # ccg master with 2- and 3-cycle seeds
            for i, j in edge_pairs:
                lp.constraint(
                    f"cyc2_{i}_{j}", [(1, f"p_{i}_{j}"), (1, f"p_{j}_{i}")], "<=", 1
                )
            seeds = m
            for t in enumerate_cliques(inst, 3):
                a, b, c = t.members
                lp.constraint(
                    f"cyc3_{a}_{b}_{c}",
                    [(1, f"p_{a}_{b}"), (1, f"p_{b}_{c}"), (1, f"p_{c}_{a}")],
                    "<=",
                    2,
                )
                lp.constraint(
                    f"cyc3_{a}_{c}_{b}",
                    [(1, f"p_{a}_{c}"), (1, f"p_{c}_{b}"), (1, f"p_{b}_{a}")],
                    "<=",
                    2,
                )
                seeds += 2
            ordering = (seeds, seeds)
    lp.constraint("pick_clique", [(1, _kappa_name(c)) for c in cliques], "=", 1)
    _linking_rows(lp, inst, cliques)
    lp.binaries = (
        [f"y_{v}" for v in range(n)]
        + [_kappa_name(c) for c in cliques]
        + p_names
    )
    if model == "ranks":
        lp.generals = [f"r_{v}" for v in range(n)]
        lp.bounds = [(0, f"r_{v}", n - 1) for v in range(n)]
    variables = {
        "y": (n, n),
        "kappa": (len(cliques), n),
        "p": (len(p_names), n * n if model == "cycles" else 2 * m),
    }
    constraints = {"clique selection": (1, 1), "linking": (n, n)}
    if model == "ccg":
        constraints["cycle breaking cuts"] = ordering
    else:
        constraints["linear ordering"] = ordering
    if model == "ranks":
        variables["r"] = (n, n)
    return lp, variables, constraints, ""


def _export_mp2(inst: Instance) -> tuple[_Lp, dict, dict]:
    n, K = inst.n, inst.K
    m = len(inst.edges)
    lp = _Lp(_header(inst, "mp2"))
    lp.obj_terms = [(1, f"y_{v}") for v in range(n)]
    lp.obj_const = 1
    lp.constraint("pick_clique", [(1, f"kappa_{v}") for v in range(n)], "=", K + 1)
    nonadj = 0
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in inst.edges:
            lp.constraint(
                f"nonadj_{u}_{v}", [(1, f"kappa_{u}"), (1, f"kappa_{v}")], "<=", 1
            )
            nonadj += 1
    for v in range(n):
        for u in sorted(inst.neighbors[v]):
            lp.constraint(
                f"cw_v{v}_u{u}", [(1, f"w_{u}_{v}"), (-1, f"kappa_{v}")], ">=", 0
            )
    for v in range(n):
        terms = [(1, f"w_{v}_{u}") for u in sorted(inst.neighbors[v])]
        terms.append((1, f"kappa_{v}"))
        terms.append((1, f"y_{v}"))
        lp.constraint(f"wit_v{v}", terms, "=", K + 1)
    lp.binaries = (
        [f"y_{v}" for v in range(n)]
        + [f"kappa_{v}" for v in range(n)]
        + sorted(f"w_{a}_{b}" for u, v in inst.edges for a, b in ((u, v), (v, u)))
    )
    variables = {"y": (n, n), "kappa": (n, n), "w": (2 * m, 2 * m)}
    constraints = {
        "clique selection": (1, 1),
        "clique witness": (nonadj + 2 * m, n * (n - 1) // 2 + m),
        "witness": (n, n),
    }
    return lp, variables, constraints


def export(
    inst: Instance, model: str, unordered_cliques: bool = False
) -> tuple[str, ModelSummary]:
    """Render one formulation as LP text plus its family counts."""
    model = model.lower()
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    warning = ""
    if model in ("ip", "minnodes"):
        lp, variables, constraints = _export_ip(inst, model == "minnodes")
    elif model == "mp2":
        lp, variables, constraints = _export_mp2(inst)
    else:
        lp, variables, constraints, warning = _export_ordering(
            inst, model, unordered_cliques
        )
    summary = ModelSummary(
        model=model,
        n=inst.n,
        m=len(inst.edges),
        K=inst.K,
        variables=variables,
        constraints=constraints,
        unordered_cliques=unordered_cliques,
        warning=warning,
    )
    return lp.render(), summary


def _expected_summary(
    inst: Instance, model: str, unordered: bool
) -> tuple[dict, dict, str]:
    """Closed-form family counts recomputed from n, |E|, K."""
    n, K = inst.n, inst.K
    m = len(inst.edges)
    if model in ("cycles", "ranks", "ccg"):
        base = len(extendable_k_cliques(inst))
        if base == 0:
            return (
                {"dummy": (1, 1)},
                {"infeasible": (2, 2)},
                "no extendable K-clique; emitted trivially infeasible model",
            )
        nkappa = base if unordered else base * math.factorial(K)
    if model == "ip" or model == "minnodes":
        variables = {"y": (n, n), "x": (n * n, n * n), "z": (n * (n - K), n * (n - K))}
        constraints = {
            "1-1 assignment": (2 * n, 2 * n),
            "clique": (n * (n - 1), n * n),
            "fixing": (K + 1, K + 1),
            "linking": (2 * n * (n - K), 2 * (n * n - K - 1)),
        }
        if model == "minnodes":
            variables["m"] = (n, n)
            constraints["node fixing"] = (K, K)
            constraints["node monotone"] = (n - K, n - K)
            constraints["node doubling"] = (n - K, n - K)
        return variables, constraints, ""
    if model == "cycles":
        variables = {"y": (n, n), "kappa": (nkappa, n), "p": (n * (n - 1), n * n)}
        constraints = {
            "linear ordering": (
                n * (n - 1) // 2 + 2 * m * (n - 2),
                n * n + n * n * m,
            ),
            "clique selection": (1, 1),
            "linking": (n, n),
        }
        return variables, constraints, ""
    if model == "ranks":
        variables = {
            "y": (n, n),
            "kappa": (nkappa, n),
            "p": (2 * m, 2 * m),
            "r": (n, n),
        }
        constraints = {
            "linear ordering": (2 * m, m),
            "clique selection": (1, 1),
            "linking": (n, n),
        }
        return variables, constraints, ""
    if model == "ccg":
        tri = len(enumerate_cliques(inst, 3))
        variables = {"y": (n, n), "kappa": (nkappa, n), "p": (2 * m, 2 * m)}
        constraints = {
            "clique selection": (1, 1),
            "linking": (n, n),
            "cycle breaking cuts": (m + 2 * tri, m + 2 * tri),
        }
        return variables, constraints, ""
    assert model == "mp2"
    variables = {"y": (n, n), "kappa": (n, n), "w": (2 * m, 2 * m)}
    constraints = {
        "clique selection": (1, 1),
        "clique witness": (n * (n - 1) // 2 + m, n * (n - 1) // 2 + m),
        "witness": (n, n),
    }
    return variables, constraints, ""


def verify_counts(summary: ModelSummary, inst: Instance) -> bool:
    """True iff the summary matches the closed-form counts for inst."""
    if (summary.n, summary.m, summary.K) != (inst.n, len(inst.edges), inst.K):
        return False
    variables, constraints, warning = _expected_summary(
        inst, summary.model, summary.unordered_cliques
    )
    return (
        summary.variables == variables
        and summary.constraints == constraints
        and summary.warning == warning
    )


def formulation_sizes(inst: Instance) -> dict[str, dict[str, dict[str, int]]]:
    """Closed-form variable and constraint counts, one row per approach.

    Includes the CP and decomposition rows that are implemented natively
    rather than exported, so sizes are comparable across the board.
    """
    n, K = inst.n, inst.K
    m = len(inst.edges)
    return {
        "cycles": {
            "variables": {"y": n, "kappa": n, "p": n * n},
            "constraints": {
                "linear ordering": n * n + n * n * m,
                "clique selection": 1,
                "linking": n,
            },
        },
        "ranks": {
            "variables": {"y": n, "kappa": n, "p": 2 * m, "r": n},
            "constraints": {
                "linear ordering": m,
                "clique selection": 1,
                "linking": n,
            },
        },
        "ccg": {
            "variables": {"y": n, "kappa": n, "p": 2 * m},
            "constraints": {"clique selection": 1, "linking": n},
        },
        "ip": {
            "variables": {"y": n, "x": n * n},
            "constraints": {
                "1-1 assignment": 2 * n,
                "clique": n * n,
                "fixing": K + 1,
                "linking": 2 * (n * n - K - 1),
            },
        },
        "cp-rank": {
            "variables": {"y": n, "r": n},
            "constraints": {
                "AllDifferent": 1,
                "clique": n * (n - 1) // 2 - m,
                "logical": n,
            },
        },
        "cp-vertex": {
            "variables": {"y": n, "v": n},
            "constraints": {
                "AllDifferent": 1,
                "clique": K * (K + 1) // 2,
                "fixing": K + 1,
                "logical": n - K - 1,
            },
        },
        "cp-combined": {
            "variables": {"y": n, "r": n, "v": n},
            "constraints": {
                "inverse": 1,
                "clique": (n * (n - 1) + K * (K + 1)) // 2 - m,
                "logical": n + n - K - 1,
                "fixing": K + 1,
            },
        },
        "naive": {
            "variables": {"y": n, "v": n},
            "constraints": {
                "fixing": K + 1,
                "AllDifferent": 1,
                "clique": K * (K + 1) // 2,
                "fixing and logical": n,
            },
        },
        "witness": {
            "variables": {"y": n, "kappa": n, "w": 2 * m, "r": n},
            "constraints": {
                "clique selection": 1,
                "clique witness": n * (n - 1) // 2 + m,
                "witness": n,
                "AllDifferent": 1,
                "rank": n + 2 * m,
            },
        },
    }


# --- parsing and evaluation of exported text ---


@dataclass
class LpConstraint:
    name: str
    terms: list[Term]
    sense: str
    rhs: int


@dataclass
class LpProgram:
    obj_terms: list[Term]
    obj_const: int
    constraints: list[LpConstraint]
    binaries: list[str]
    generals: list[str]
    bounds: dict[str, tuple[int, int]]

    def variables(self) -> set[str]:
        seen = {v for _, v in self.obj_terms}
        for c in self.constraints:
            seen.update(v for _, v in c.terms)
        return seen


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _parse_terms(text: str) -> tuple[list[Term], int]:
    tokens = text.replace("+", " + ").replace("-", " - ").split()
    terms: list[Term] = []
    const = 0
    sign = 1
    coef: Optional[int] = None

    def flush_const() -> None:
        nonlocal const, coef
        if coef is not None:
            const += sign * coef
            coef = None

    for tok in tokens:
        if tok == "+":
            flush_const()
            sign = 1
        elif tok == "-":
            flush_const()
            sign = -1
        elif tok.isdigit():
            coef = int(tok)
        elif _NAME.match(tok):
            terms.append((sign * (coef if coef is not None else 1), tok))
            sign, coef = 1, None
        else:
            raise ValueError(f"bad token {tok!r}")
    flush_const()
    return terms, const


def parse_lp(text: str) -> LpProgram:
    """Parse the subset of LP syntax this module writes."""
    section = ""
    chunks: list[str] = []
    prog = LpProgram([], 0, [], [], [], {})

    def close_chunk() -> None:
        if not chunks:
            return
        body = " ".join(chunks)
        chunks.clear()
        name, _, rest = body.partition(":")
        if section == "objective":
            terms, const = _parse_terms(rest)
            prog.obj_terms, prog.obj_const = terms, const
            return
        m = re.search(r"(<=|>=|=)", rest)
        assert m is not None, body
        lhs, sense, rhs = rest[: m.start()], m.group(1), rest[m.end():]
        terms, const = _parse_terms(lhs)
        prog.constraints.append(
            LpConstraint(name.strip(), terms, sense, int(rhs) - const)
        )

    for raw in text.splitlines():
        line = raw.rstrip()
        if not line or line.startswith("\\"):
            continue
        low = line.strip().lower()
        if low in ("minimize", "subject to", "bounds", "binaries", "generals", "end"):
            close_chunk()
            section = "objective" if low == "minimize" else low
            continue
        if section == "objective" or section == "subject to":
            if ":" in line:
                close_chunk()
            chunks.append(line.strip())
        elif section == "bounds":
            lo, _, var, _, hi = line.split()
            prog.bounds[var] = (int(lo), int(hi))
        elif section == "binaries":
            prog.binaries.extend(line.split())
        elif section == "generals":
            prog.generals.extend(line.split())
    close_chunk()
    return prog


def evaluate(
    prog: LpProgram, assignment: dict[str, int]
) -> tuple[bool, int, list[str]]:
    """Check an assignment: (all satisfied, objective value, violations)."""
    violations: list[str] = []
    for var in prog.binaries:
        if assignment.get(var, 0) not in (0, 1):
            violations.append(f"binary {var}={assignment[var]}")
    for var, (lo, hi) in prog.bounds.items():
        val = assignment.get(var, 0)
        if not lo <= val <= hi:
            violations.append(f"bound {var}={val}")
    for con in prog.constraints:
        lhs = sum(c * assignment.get(v, 0) for c, v in con.terms)
        ok = (
            lhs <= con.rhs
            if con.sense == "<="
            else lhs >= con.rhs if con.sense == ">=" else lhs == con.rhs
        )
        if not ok:
            violations.append(f"{con.name}: {lhs} {con.sense} {con.rhs}")
    obj = prog.obj_const + sum(c * assignment.get(v, 0) for c, v in prog.obj_terms)
    return (not violations, obj, violations)


# --- mechanical assignments from a known order ---


def minnodes_level_counts(K: int, bits: Sequence[int]) -> tuple[int, ...]:
    """Level sizes under the LP's convention: a double grows the next level."""
    out = [1] * K
    for r in range(K, len(bits)):
        out.append(out[-1] * (2 if bits[r - 1] else 1))
    return tuple(out)


def assignment_from_order(
    inst: Instance,
    order: VertexOrder,
    model: str,
    unordered_cliques: bool = False,
) -> dict[str, int]:
    """Variable values an order implies for one exported model."""
    model = model.lower()
    report = check_order(inst, order)
    if not report.is_dvop:
        raise ValueError("order is not valid for this instance")
    n, K = inst.n, inst.K
    ranks = order.inverse
    bits = report.doubles.bits
    out: dict[str, int] = {}
    if model in ("ip", "minnodes"):
        for v in range(n):
            out[f"x_{v}_{ranks[v]}"] = 1
        for r in range(n):
            out[f"y_{r}"] = bits[r]
        for v in range(n):
            r = ranks[v]
            if r >= K and bits[r] == 0:
                out[f"z_{v}_{r}"] = 1
        if model == "minnodes":
            for r, cnt in enumerate(minnodes_level_counts(K, bits)):
                out[f"m_{r}"] = cnt
        return out
    if model == "mp2":
        state = induce_witness_state(inst, order)
        for v in range(n):
            out[f"y_{v}"] = state.doubles[v]
            out[f"kappa_{v}"] = 1 if v in state.clique else 0
        for v, u in state.witness_arcs:
            out[f"w_{v}_{u}"] = 1
        return out
    assert model in ("cycles", "ranks", "ccg")
    for v in range(n):
        out[f"y_{v}"] = 1 if (ranks[v] < K or bits[ranks[v]]) else 0
    if model == "cycles":
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    else:
        pairs = [
            (a, b) for u, v in inst.sorted_edges() for a, b in ((u, v), (v, u))
        ]
    for i, j in pairs:
        out[f"p_{i}_{j}"] = 1 if ranks[i] < ranks[j] else 0
    prefix = tuple(order.perm[:K])
    chosen = tuple(sorted(prefix)) if unordered_cliques else prefix
    out[_kappa_name(chosen)] = 1
    if model == "ranks":
        for v in range(n):
            out[f"r_{v}"] = ranks[v]
    return out
