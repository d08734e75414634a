"""Witness-based decomposition for the minimum-double objective.

The master picks an initial clique and, for every other vertex, a
witness set: K+1 adjacent predecessors-to-be for a regular vertex, K
for a double.  Clique vertices are witnessed exactly by the rest of the
clique, every neighbor of a clique vertex must use it as a witness, and
the number of doubles is the number of K-sized witness sets (plus the
one double the clique itself always forces).  The subproblem orders the
witness digraph topologically; a directed cycle among non-clique
vertices refutes the assignment and yields a lifted cycle-breaking cut:
the lift term allows cycles that fit inside the clique, where witnesses
are mutual by design.  Looping master, subproblem, and cuts converges
to an optimal order; the extended validator checks an accepted
(clique, witnesses, doubles, order) against the full one-shot
constraint set.
"""

from __future__ import annotations

import heapq
import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .dfs_solver import Deadline, Solution, SolveStats
from .graph import Clique, Instance, enumerate_cliques
from .order import VertexOrder, check_order, greedy_dvop, greedy_from_clique
from .presolve import PresolveResult, full_presolve

PRE_BREAK = ("none", "2cycles", "2and3cycles")

Arc = tuple[int, int]


@dataclass(frozen=True)
class WitnessState:
    """A master solution: clique membership, witness arcs, double bits.

    An arc (v, u) means u witnesses v (u will precede v in any order
    realizing the state).  doubles is indexed by vertex.
    """

    clique: frozenset[int]
    witness_arcs: frozenset[Arc]
    doubles: tuple[int, ...]

    def witnesses_of(self, v: int) -> frozenset[int]:
        return frozenset(u for w, u in self.witness_arcs if w == v)

    @property
    def y_sum(self) -> int:
        return sum(self.doubles)


@dataclass(frozen=True)
class CycleCut:
    """Lifted cycle-breaking inequality over witness arcs.

    sum of w over arcs <= |cycle| - 1, relaxed by kappa of the smallest
    cycle vertex when the cycle is small enough to fit in the clique.
    """

    arcs: tuple[Arc, ...]
    lift_vertex: int
    lifted: bool

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.arcs)

    def rhs(self, clique: frozenset[int]) -> int:
        bonus = 1 if (self.lifted and self.lift_vertex in clique) else 0
        return len(self.vertices) - 1 + bonus

    def satisfied_by(self, state: WitnessState) -> bool:
        lhs = sum(1 for a in self.arcs if a in state.witness_arcs)
        return lhs <= self.rhs(state.clique)


def make_cycle_cut(cycle: Sequence[Arc], K: int) -> CycleCut:
    """Build the lifted cut for a simple directed cycle of witness arcs."""
    arcs = tuple(cycle)
    if not arcs:
        raise ValueError("empty cycle")
    tails = [v for v, _ in arcs]
    if len(set(tails)) != len(tails):
        raise ValueError("not a simple cycle")
    succ = dict(arcs)
    v = arcs[0][0]
    seen = []
    for _ in range(len(arcs)):
        seen.append(v)
        if v not in succ:
            raise ValueError("arcs do not close a single cycle")
        v = succ[v]
    if v != arcs[0][0] or set(seen) != set(tails):
        raise ValueError("arcs do not close a single cycle")
    verts = frozenset(tails)
    return CycleCut(arcs=arcs, lift_vertex=min(verts), lifted=len(verts) <= K + 1)


def state_violations(inst: Instance, state: WitnessState) -> list[str]:
    """All invariant violations of a witness state (empty list = valid)."""
    n, K = inst.n, inst.K
    out: list[str] = []
    if len(state.doubles) != n:
        return [f"doubles length {len(state.doubles)} != n"]
    if any(b not in (0, 1) for b in state.doubles):
        out.append("doubles not binary")
    if len(state.clique) != K + 1:
        out.append(f"clique size {len(state.clique)} != K+1")
    for u, v in itertools.combinations(sorted(state.clique), 2):
        if (u, v) not in inst.edges:
            out.append(f"clique pair {u},{v} not adjacent")
    for v, u in state.witness_arcs:
        if tuple(sorted((v, u))) not in inst.edges:
            out.append(f"witness arc ({v},{u}) not an edge")
    for v in sorted(state.clique):
        for u in sorted(inst.neighbors[v]):
            if (u, v) not in state.witness_arcs:
                out.append(f"neighbor {u} of clique vertex {v} does not use it")
    outdeg = [0] * n
    for v, _ in state.witness_arcs:
        outdeg[v] += 1
    for v in range(n):
        kappa = 1 if v in state.clique else 0
        want = (K + 1) * (1 - kappa) - state.doubles[v] + K * kappa
        if outdeg[v] != want:
            out.append(f"vertex {v} has {outdeg[v]} witnesses, wants {want}")
    for v in sorted(state.clique):
        if state.doubles[v] != 0:
            out.append(f"clique vertex {v} marked double")
    return out


def _witness_succ(inst: Instance, state: WitnessState) -> dict[int, list[int]]:
    """Witness digraph restricted to non-clique vertices, arcs v -> u."""
    succ: dict[int, list[int]] = {
        v: [] for v in range(inst.n) if v not in state.clique
    }
    for v, u in sorted(state.witness_arcs):
        if v not in state.clique and u not in state.clique:
            succ[v].append(u)
    return succ


def _find_cycle(succ: dict[int, list[int]]) -> tuple[Arc, ...]:
    """First back-arc cycle, closed by the shortest return path.

    Depth-first search from the smallest vertex; the first arc (v, u)
    hitting a vertex on the active stack closes a cycle whose remaining
    arcs are a breadth-first shortest path from u back to v.
    """
    color: dict[int, int] = {v: 0 for v in succ}

    def dfs(v: int) -> Optional[Arc]:
        color[v] = 1
        for u in succ[v]:
            if color[u] == 1:
                return (v, u)
            if color[u] == 0:
                got = dfs(u)
                if got is not None:
                    return got
        color[v] = 2
        return None

    back: Optional[Arc] = None
    for root in sorted(succ):
        if color[root] == 0:
            back = dfs(root)
            if back is not None:
                break
    assert back is not None, "no cycle in an acyclic digraph"
    v, u = back
    parent: dict[int, int] = {u: u}
    queue = deque([u])
    while v not in parent:
        x = queue.popleft()
        for y in succ[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return (back,) + tuple((path[i], path[i + 1]) for i in range(len(path) - 1))


def sp2_check(
    inst: Instance, state: WitnessState
) -> Union[VertexOrder, tuple[Arc, ...]]:
    """Topologically order the witness digraph, or find a cycle.

    Witness arcs demand the witness first, but only between non-clique
    pairs; the clique occupies the first K+1 ranks (sorted by index) and
    the rest follow in topological order with ties broken by index.
    """
    bad = state_violations(inst, state)
    if bad:
        raise ValueError("invalid witness state: " + "; ".join(bad))
    succ_w = _witness_succ(inst, state)
    # Precedence arcs run opposite to witness arcs: u before v when v uses u.
    indeg = {v: len(succ_w[v]) for v in succ_w}
    users: dict[int, list[int]] = {v: [] for v in succ_w}
    for v, targets in succ_w.items():
        for u in targets:
            users[u].append(v)
    heap = [v for v in succ_w if indeg[v] == 0]
    heapq.heapify(heap)
    topo: list[int] = []
    while heap:
        u = heapq.heappop(heap)
        topo.append(u)
        for v in users[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(topo) < len(succ_w):
        return _find_cycle(succ_w)
    return VertexOrder(tuple(sorted(state.clique)) + tuple(topo))


def find_disjoint_cycles(inst: Instance, state: WitnessState) -> list[tuple[Arc, ...]]:
    """Vertex-disjoint cycles of the non-clique witness digraph.

    Experimental multi-cut separation: extract a cycle, delete its
    vertices, repeat until the remainder is acyclic.
    """
    succ = _witness_succ(inst, state)
    cycles: list[tuple[Arc, ...]] = []
    while True:
        order: list[int] = []
        indeg = {v: len(succ[v]) for v in succ}
        heap = [v for v in succ if indeg[v] == 0]
        heapq.heapify(heap)
        users: dict[int, list[int]] = {v: [] for v in succ}
        for v, ts in succ.items():
            for u in ts:
                users[u].append(v)
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for v in users[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
        if len(order) == len(succ):
            return cycles
        cycle = _find_cycle(succ)
        cycles.append(cycle)
        drop = {v for v, _ in cycle}
        succ = {
            v: [u for u in ts if u not in drop]
            for v, ts in succ.items()
            if v not in drop
        }


def _head_lower_bound(head: Optional[PresolveResult], K: int) -> int:
    """Doubles forced beyond the clique, in vertex terms.

    Each head fixing at a rank past K names a distinct non-clique double
    of every valid order, and each cover inequality forces one more;
    head covers never touch fixed ranks, so the contributions add up.
    """
    if head is None or head.skipped:
        return 0
    fixed = sum(1 for r in head.fixed_one if r > K)
    return fixed + len(head.cover_inequalities)


def _witness_choices(
    inst: Instance, clique: set[int], v: int
) -> list[tuple[frozenset[int], int]]:
    """Witness-set candidates for one vertex: non-double sets first."""
    forced = sorted(inst.neighbors[v] & clique)
    others = sorted(inst.neighbors[v] - clique)
    out: list[tuple[frozenset[int], int]] = []
    for size, y in ((inst.K + 1, 0), (inst.K, 1)):
        need = size - len(forced)
        if need < 0 or need > len(others):
            continue
        for extra in itertools.combinations(others, need):
            out.append((frozenset(forced) | frozenset(extra), y))
    return out


def mp2_solve(
    inst: Instance,
    cuts: Sequence[CycleCut],
    incumbent: Optional[int] = None,
    presolve_head: Optional[PresolveResult] = None,
    stats: Optional[SolveStats] = None,
    deadline: Optional[Deadline] = None,
) -> Optional[WitnessState]:
    """Best witness state subject to the cut pool.

    Outer enumeration of initial cliques (ordered by the double count of
    their greedy completions, then lexicographically), inner DFS over
    witness sets per non-clique vertex (most clique neighbors first;
    non-double choices before double ones, each lexicographically).
    Branches are pruned at `incumbent` doubles (strict cutoff, counting
    y only, not the +1 constant) and on cuts whose left side already
    exceeds the right.  Absent when no clique exists or everything is
    pruned.
    """
    if presolve_head is not None and presolve_head.infeasible:
        return None
    n, K = inst.n, inst.K
    head_lb = _head_lower_bound(presolve_head, K)
    cliques = enumerate_cliques(inst, K + 1)
    if not cliques:
        return None

    def quality(c: Clique) -> tuple[int, tuple[int, ...]]:
        got = greedy_from_clique(inst, c)
        return (got[1].double_count if got else n + 1, c.members)

    cliques.sort(key=quality)

    cutoff = incumbent
    if cutoff is not None and head_lb >= cutoff:
        return None
    best: Optional[WitnessState] = None

    for cl in cliques:
        if stats is not None:
            stats.cliques_considered += 1
        members = set(cl.members)
        clique_arcs = [
            (v, u) for v in cl.members for u in cl.members if u != v
        ]
        cut_rhs = [c.rhs(frozenset(members)) for c in cuts]
        cut_lhs = [
            sum(1 for a in c.arcs if a[0] in members and a[1] in members)
            for c in cuts
        ]
        if any(l > r for l, r in zip(cut_lhs, cut_rhs)):
            continue
        arcs_by_cut: dict[Arc, list[int]] = {}
        for idx, c in enumerate(cuts):
            for a in c.arcs:
                arcs_by_cut.setdefault(a, []).append(idx)
        rest = sorted(
            (v for v in range(n) if v not in members),
            key=lambda v: (-len(inst.neighbors[v] & members), v),
        )
        choices = {v: _witness_choices(inst, members, v) for v in rest}
        assigned: dict[int, tuple[frozenset[int], int]] = {}

        def rec(idx: int, ycount: int) -> None:
            nonlocal best, cutoff
            if deadline is not None and deadline.expired():
                raise TimeoutError
            if cutoff is not None and ycount >= cutoff:
                return
            if idx == len(rest):
                if ycount < head_lb:
                    return
                arcs = list(clique_arcs)
                doubles = [0] * n
                for v, (wset, y) in assigned.items():
                    doubles[v] = y
                    arcs.extend((v, u) for u in wset)
                best = WitnessState(
                    clique=frozenset(members),
                    witness_arcs=frozenset(arcs),
                    doubles=tuple(doubles),
                )
                cutoff = ycount
                return
            v = rest[idx]
            for wset, y in choices[v]:
                if cutoff is not None and ycount + y >= cutoff:
                    continue
                if stats is not None:
                    stats.choice_points += 1
                touched: list[int] = []
                dead = False
                for u in wset:
                    for ci in arcs_by_cut.get((v, u), ()):
                        cut_lhs[ci] += 1
                        touched.append(ci)
                        if cut_lhs[ci] > cut_rhs[ci]:
                            dead = True
                if not dead:
                    assigned[v] = (wset, y)
                    rec(idx + 1, ycount + y)
                    del assigned[v]
                for ci in touched:
                    cut_lhs[ci] -= 1

        rec(0, 0)
    return best


@dataclass(frozen=True)
class WitnessOptions:
    time_limit: float | None = None
    pre_break: str = "none"
    use_presolve: bool = True
    separate_all: bool = False


def _seed_cuts(inst: Instance, pre_break: str) -> list[CycleCut]:
    """Cycle cuts known before any separation: 2-cycles, optionally 3-cycles."""
    if pre_break == "none":
        return []
    if pre_break not in PRE_BREAK:
        raise ValueError(f"pre_break must be one of {PRE_BREAK}")
    cuts = [
        make_cycle_cut(((u, v), (v, u)), inst.K) for u, v in inst.sorted_edges()
    ]
    if pre_break == "2and3cycles":
        for tri in enumerate_cliques(inst, 3):
            a, b, c = tri.members
            cuts.append(make_cycle_cut(((a, b), (b, c), (c, a)), inst.K))
            cuts.append(make_cycle_cut(((a, c), (c, b), (b, a)), inst.K))
    return cuts


@dataclass
class WitnessTrace:
    """Optional audit log of the master-subproblem dialogue."""

    cuts: list[tuple[CycleCut, WitnessState]] = field(default_factory=list)
    accepted: list[tuple[WitnessState, VertexOrder]] = field(default_factory=list)


def solve_witness(
    inst: Instance,
    opts: WitnessOptions | None = None,
    trace: WitnessTrace | None = None,
) -> Solution:
    """Master-subproblem loop with lifted cycle-breaking cuts."""
    opts = opts or WitnessOptions()
    stats = SolveStats()
    t0 = time.monotonic()
    deadline = Deadline(opts.time_limit) if opts.time_limit is not None else None

    head: Optional[PresolveResult] = None
    if opts.use_presolve:
        head = full_presolve(inst)
        if head.infeasible:
            stats.time_ms = (time.monotonic() - t0) * 1000.0
            return Solution("INFEASIBLE", None, None, None, stats)

    warm = greedy_dvop(inst)
    incumbent = warm[1].double_count if warm is not None else None

    cuts = _seed_cuts(inst, opts.pre_break)

    def timed_out() -> Solution:
        stats.time_ms = (time.monotonic() - t0) * 1000.0
        if warm is None:
            return Solution("TIMEOUT", None, None, None, stats)
        return Solution(
            "TIMEOUT", warm[1].double_count, warm[0], warm[1].doubles, stats
        )

    try:
        while True:
            state = mp2_solve(inst, cuts, incumbent, head, stats, deadline)
            stats.iterations += 1
            if state is None:
                # A feasible instance always yields a state below the greedy
                # cutoff (its own induced witness assignment qualifies).
                assert warm is None
                stats.time_ms = (time.monotonic() - t0) * 1000.0
                return Solution("INFEASIBLE", None, None, None, stats)
            got = sp2_check(inst, state)
            if isinstance(got, VertexOrder):
                report = check_order(inst, got)
                assert report.is_dvop
                objective = state.y_sum + 1
                assert report.double_count == objective
                assert ef_validate(inst, state, got)
                if trace is not None:
                    trace.accepted.append((state, got))
                stats.time_ms = (time.monotonic() - t0) * 1000.0
                return Solution("OPTIMAL", objective, got, report.doubles, stats)
            new_cycles = (
                find_disjoint_cycles(inst, state) if opts.separate_all else [got]
            )
            for cycle in new_cycles:
                cut = make_cycle_cut(cycle, inst.K)
                assert not cut.satisfied_by(state)
                if trace is not None:
                    trace.cuts.append((cut, state))
                cuts.append(cut)
                stats.cuts += 1
    except TimeoutError:
        return timed_out()


def ef_validate(inst: Instance, state: WitnessState, order: VertexOrder) -> bool:
    """Check a (state, order) pair against the one-shot constraint set.

    Clique size and adjacency, witness forcing at clique vertices, the
    witness-count linking equation, clique ranks at the front, and
    witness-before-witnessed precedence between non-clique pairs.
    """
    n, K = inst.n, inst.K
    if len(state.doubles) != n or order.n != n:
        raise ValueError("state and order must match the instance size")
    if state_violations(inst, state):
        return False
    ranks = order.inverse
    for v in state.clique:
        if ranks[v] > K:
            return False
    for v, u in state.witness_arcs:
        if v not in state.clique and u not in state.clique:
            if ranks[u] >= ranks[v]:
                return False
    return True


def induce_witness_state(inst: Instance, order: VertexOrder) -> WitnessState:
    """The witness state a valid order implies.

    Clique = first K+1 vertices; every later vertex is witnessed by its
    first K (if a double) or K+1 (otherwise) adjacent predecessors in
    rank order.  Clique members are witnessed by the rest of the clique.
    """
    report = check_order(inst, order)
    if not report.is_dvop:
        raise ValueError("order is not valid for this instance")
    n, K = inst.n, inst.K
    clique = frozenset(order.perm[: K + 1])
    arcs: list[Arc] = [
        (v, u) for v in clique for u in clique if u != v
    ]
    doubles = [0] * n
    for r in range(K + 1, n):
        v = order.perm[r]
        y = report.doubles.bits[r]
        doubles[v] = y
        need = K + 1 - y
        got = 0
        for j in range(r):
            u = order.perm[j]
            if u in inst.neighbors[v]:
                arcs.append((v, u))
                got += 1
                if got == need:
                    break
        assert got == need
    return WitnessState(
        clique=clique, witness_arcs=frozenset(arcs), doubles=tuple(doubles)
    )
