"""Pattern-first decomposition for the minimum-double objective.

A master problem picks a double pattern over ranks (minimizing the
number of doubles, lexicographically smallest among optima) and a
subproblem searches for an order realizing it: the rank-r vertex needs
at least K adjacent predecessors where the pattern allows a double and
at least K+1 where it does not.  When the subproblem fails, a deletion
filter extracts a minimal set of strict ranks that cannot all stay
double-free, and the resulting cover cut is returned to the master.
The plain exclude-this-pattern cut is kept only as a test fallback
(nogood=True); it removes a single pattern per round and is far weaker.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .dfs_solver import Deadline, Solution, SolveOptions, SolveStats
from .graph import Instance
from .order import DoublePattern, VertexOrder, check_order
from .presolve import PresolveResult, full_presolve


@dataclass(frozen=True)
class BendersCut:
    """Cover cut: at least one rank in `ranks` must hold a double."""

    ranks: frozenset[int]

    def __post_init__(self) -> None:
        if not self.ranks:
            raise ValueError("cover cut over an empty rank set")

    def satisfied_by(self, bits: Sequence[int]) -> bool:
        return any(bits[r] for r in self.ranks)


@dataclass(frozen=True)
class NoGoodCut:
    """Exclude one exact pattern (the weak fallback cut)."""

    bits: tuple[int, ...]

    def satisfied_by(self, bits: Sequence[int]) -> bool:
        return tuple(bits) != self.bits


def base_only_fixings(n: int, K: int) -> PresolveResult:
    """Just the definitional fixings, for runs with presolve disabled."""
    return PresolveResult(
        n=n,
        K=K,
        fixed_zero=frozenset(range(K)),
        fixed_one=frozenset({K}),
        cover_inequalities=(),
    )


def mp1_solve(
    n: int,
    K: int,
    fixings: PresolveResult,
    cuts: Sequence[BendersCut | NoGoodCut],
    deadline: Deadline | None = None,
) -> DoublePattern | None:
    """Minimum-cardinality pattern honoring fixings and cuts.

    Iterative deepening over the number of free doubles, scanning ranks
    in ascending order and trying 0 before 1, returns the
    lexicographically smallest optimum.  Absent when the fixings
    contradict each other or some cover can never be satisfied.
    """
    if fixings.infeasible or fixings.fixed_zero & fixings.fixed_one:
        return None
    bits = [0] * n
    for r in fixings.fixed_one:
        bits[r] = 1
    covers = [frozenset(c) for c in fixings.cover_inequalities]
    covers += [c.ranks for c in cuts if isinstance(c, BendersCut)]
    nogoods = [c for c in cuts if isinstance(c, NoGoodCut)]
    free = [
        r
        for r in range(K + 1, n)
        if r not in fixings.fixed_zero and r not in fixings.fixed_one
    ]
    if any(not (c & set(free)) and not any(bits[r] for r in c) for c in covers):
        return None
    covers_by_last = {}
    for c in covers:
        covers_by_last.setdefault(max(c & set(free), default=max(c)), []).append(c)

    def dfs(idx: int, remaining: int) -> tuple[int, ...] | None:
        if deadline is not None and deadline.expired():
            raise TimeoutError
        if idx == len(free):
            if remaining != 0:
                return None
            if any(not g.satisfied_by(bits) for g in nogoods):
                return None
            return tuple(bits)
        r = free[idx]
        for value in (0, 1):
            if value == 1 and remaining == 0:
                continue
            bits[r] = value
            if not any(
                all(bits[q] == 0 for q in c) for c in covers_by_last.get(r, ())
            ):
                got = dfs(idx + 1, remaining - value)
                if got is not None:
                    bits[r] = 0
                    return got
            bits[r] = 0
        return None

    for extra in range(len(free) + 1):
        got = dfs(0, extra)
        if got is not None:
            return DoublePattern(got)
    return None


def sp1_solve(
    inst: Instance,
    pattern: DoublePattern,
    deadline: Deadline | None = None,
    stats: SolveStats | None = None,
) -> VertexOrder | None:
    """Find an order whose rank-r vertex meets the pattern's threshold.

    Ranks below K demand adjacency to everything placed; rank r >= K
    demands at least K adjacent predecessors when pattern[r] = 1 and at
    least K+1 otherwise.  The initial clique is kept ascending to break
    its symmetry (thresholds are invariant under permuting it).
    """
    n, K = inst.n, inst.K
    adj = inst.adj_bits
    bits = pattern.bits
    if len(bits) != n:
        raise ValueError("pattern length must equal n")
    if bits[K] != 1:
        # Rank K always has exactly K adjacent predecessors, so the
        # double-free threshold K+1 can never be met there.
        return None
    perm: list[int] = []

    def rec(mask: int) -> bool:
        if deadline is not None and deadline.expired():
            raise TimeoutError
        r = len(perm)
        if r == n:
            return True
        cands: list[tuple[int, int]] = []
        for v in range(n):
            if mask >> v & 1:
                continue
            pred = (adj[v] & mask).bit_count()
            if r <= K:
                if pred == r and (r == 0 or v > perm[-1]):
                    cands.append((pred, v))
            elif pred >= (K if bits[r] else K + 1):
                cands.append((pred, v))
        cands.sort(key=lambda t: (-t[0], t[1]))
        for _, v in cands:
            if stats is not None:
                stats.choice_points += 1
            perm.append(v)
            if rec(mask | (1 << v)):
                return True
            perm.pop()
        return False

    if rec(0):
        return VertexOrder(tuple(perm))
    return None


def find_iis(
    inst: Instance,
    pattern: DoublePattern,
    deadline: Deadline | None = None,
    stats: SolveStats | None = None,
) -> BendersCut | None:
    """Minimal strict-rank set whose thresholds cannot all hold.

    Deletion filter: scan the pattern's zero ranks above K in decreasing
    order, tentatively relaxing each to the double threshold; ranks whose
    relaxation leaves the subproblem infeasible are discarded.  Every
    survivor is necessary, so at least one of them must be a double in
    any feasible pattern.  An empty survivor set means even the
    all-double pattern is infeasible, i.e. the instance has no valid
    order at all; then no cut exists and None is returned.
    """
    n, K = inst.n, inst.K
    bits = pattern.bits
    if any(bits[r] for r in range(K)) or bits[K] != 1:
        raise ValueError("pattern must respect the base fixings")

    def feasible(strict: set[int]) -> bool:
        test = tuple(
            0 if (r < K or r in strict) else 1 for r in range(n)
        )
        return sp1_solve(inst, DoublePattern(test), deadline, stats) is not None

    strict0 = sorted((r for r in range(K + 1, n) if bits[r] == 0), reverse=True)
    survivors = set(strict0)
    if feasible(survivors):
        raise ValueError("pattern is feasible; no infeasible subsystem exists")
    for r in strict0:
        if not feasible(survivors - {r}):
            survivors.discard(r)
    if not survivors:
        return None
    return BendersCut(frozenset(survivors))


@dataclass
class NaiveTrace:
    """Optional audit log: every cut paired with the pattern that spawned it."""

    cuts: list[tuple[BendersCut | NoGoodCut, DoublePattern]] = field(
        default_factory=list
    )


def solve_naive(
    inst: Instance,
    opts: SolveOptions | None = None,
    nogood: bool = False,
    trace: NaiveTrace | None = None,
) -> Solution:
    """Master-subproblem loop for the minimum-double objective."""
    opts = opts or SolveOptions()
    stats = SolveStats()
    t0 = time.monotonic()
    deadline = Deadline(opts.time_limit) if opts.time_limit is not None else None

    if opts.use_presolve:
        fixings = full_presolve(inst)
    else:
        fixings = base_only_fixings(inst.n, inst.K)
    if fixings.infeasible:
        stats.time_ms = (time.monotonic() - t0) * 1000.0
        return Solution("INFEASIBLE", None, None, None, stats)

    cuts: list[BendersCut | NoGoodCut] = []
    try:
        while True:
            pattern = mp1_solve(inst.n, inst.K, fixings, cuts, deadline)
            stats.iterations += 1
            if pattern is None:
                stats.time_ms = (time.monotonic() - t0) * 1000.0
                return Solution("INFEASIBLE", None, None, None, stats)
            order = sp1_solve(inst, pattern, deadline, stats)
            if order is not None:
                report = check_order(inst, order)
                assert report.is_dvop
                assert report.double_count == pattern.count()
                stats.time_ms = (time.monotonic() - t0) * 1000.0
                return Solution(
                    "OPTIMAL", pattern.count(), order, report.doubles, stats
                )
            if nogood:
                cuts.append(NoGoodCut(pattern.bits))
            else:
                t_iis = time.monotonic()
                cut = find_iis(inst, pattern, deadline, stats)
                stats.iis_time_ms += (time.monotonic() - t_iis) * 1000.0
                if cut is None:
                    stats.time_ms = (time.monotonic() - t0) * 1000.0
                    return Solution("INFEASIBLE", None, None, None, stats)
                cuts.append(cut)
            if trace is not None:
                trace.cuts.append((cuts[-1], pattern))
            stats.cuts += 1
    except TimeoutError:
        stats.time_ms = (time.monotonic() - t0) * 1000.0
        return Solution("TIMEOUT", None, None, None, stats)
