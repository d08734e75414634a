"""Arc-witness decomposition: states, cycle cuts, and the full loop."""

import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from conftest import small_instances
from ddvop.graph import Instance
from ddvop.oracle import brute_optimum, enumerate_valid_orders
from ddvop.order import VertexOrder, check_order
from ddvop.presolve import full_presolve
from ddvop.witness_decomp import (
    WitnessOptions,
    WitnessState,
    WitnessTrace,
    ef_validate,
    find_disjoint_cycles,
    induce_witness_state,
    make_cycle_cut,
    mp2_solve,
    solve_witness,
    sp2_check,
    state_violations,
)


def clique_arcs(members):
    return [(v, u) for v in members for u in members if u != v]


@pytest.fixture
def g6b_state():
    return WitnessState(
        clique=frozenset({0, 1, 3}),
        witness_arcs=frozenset(
            clique_arcs((0, 1, 3))
            + [(4, 0), (4, 1), (2, 0), (2, 1), (2, 4), (5, 0), (5, 1), (5, 3)]
        ),
        doubles=(0, 0, 0, 0, 1, 0),
    )


@pytest.fixture
def g6b_cyclic_state(g6b_state):
    return WitnessState(
        clique=g6b_state.clique,
        witness_arcs=g6b_state.witness_arcs | {(4, 2)},
        doubles=(0, 0, 0, 0, 0, 0),
    )


def test_acyclic_state_yields_order(g6b, g6b_state):
    assert state_violations(g6b, g6b_state) == []
    assert g6b_state.y_sum == 1
    got = sp2_check(g6b, g6b_state)
    assert isinstance(got, VertexOrder)
    assert got.perm == (0, 1, 3, 4, 2, 5)
    report = check_order(g6b, got)
    assert report.is_dvop
    assert report.doubles.bits == (0, 0, 1, 1, 0, 0)
    assert report.double_count == g6b_state.y_sum + 1
    assert ef_validate(g6b, g6b_state, got)


def test_cyclic_state_yields_cycle(g6b, g6b_state, g6b_cyclic_state):
    assert state_violations(g6b, g6b_cyclic_state) == []
    got = sp2_check(g6b, g6b_cyclic_state)
    assert isinstance(got, tuple)
    assert set(got) == {(2, 4), (4, 2)}
    cut = make_cycle_cut(got, g6b.K)
    assert cut.vertices == frozenset({2, 4})
    assert cut.lift_vertex == 2 and cut.lifted
    assert cut.rhs(frozenset({0, 1, 3})) == 1
    assert cut.rhs(frozenset({0, 1, 2})) == 2
    assert not cut.satisfied_by(g6b_cyclic_state)
    assert cut.satisfied_by(g6b_state)
    disjoint = find_disjoint_cycles(g6b, g6b_cyclic_state)
    assert len(disjoint) == 1
    assert set(disjoint[0]) == {(2, 4), (4, 2)}


def test_make_cycle_cut_units():
    # Length-4 cycles get no lifting; the right-hand side is |C| - 1.
    c4 = make_cycle_cut([(0, 1), (1, 2), (2, 3), (3, 0)], 2)
    assert not c4.lifted
    assert c4.rhs(frozenset({0, 1})) == 3
    # Short cycles lift their lowest vertex: the bound weakens by one
    # only when that vertex sits inside the master's clique.
    c3 = make_cycle_cut([(0, 1), (1, 2), (2, 0)], 2)
    assert c3.lifted and c3.lift_vertex == 0
    assert c3.rhs(frozenset({0, 5, 9})) == 3
    assert c3.rhs(frozenset({7, 8, 9})) == 2


@pytest.mark.parametrize(
    "arcs",
    [
        [],
        [(0, 1), (1, 0), (2, 3), (3, 2)],
        [(0, 1), (1, 2)],
    ],
)
def test_make_cycle_cut_rejects_non_cycles(arcs):
    with pytest.raises(ValueError):
        make_cycle_cut(arcs, 2)


def test_invalid_states_rejected(g6b, g6b_state):
    # Doubles must account for every extra witness beyond the clique.
    short = WitnessState(
        clique=g6b_state.clique,
        witness_arcs=g6b_state.witness_arcs,
        doubles=(0, 0, 0, 0, 0, 0),
    )
    assert any("witnesses" in s for s in state_violations(g6b, short))
    with pytest.raises(ValueError):
        sp2_check(g6b, short)
    oversized = WitnessState(
        clique=frozenset({0, 1, 2, 3}),
        witness_arcs=g6b_state.witness_arcs,
        doubles=g6b_state.doubles,
    )
    assert state_violations(g6b, oversized)


FROZEN = [
    ("g6a", "OPTIMAL", 2),
    ("g6b", "OPTIMAL", 1),
    ("g6a_k3", "INFEASIBLE", None),
    ("p5_k2", "INFEASIBLE", None),
    ("p5_k1", "OPTIMAL", 4),
    ("k4", "OPTIMAL", 1),
    ("k6", "OPTIMAL", 1),
    ("g5k3a", "OPTIMAL", 2),
    ("g5k3b", "OPTIMAL", 1),
    ("g6k3", "OPTIMAL", 3),
    ("wheel6", "OPTIMAL", 3),
]


@pytest.mark.parametrize("fixture,status,objective", FROZEN)
@pytest.mark.parametrize("pre_break", ["none", "2cycles", "2and3cycles"])
def test_frozen_objectives(fixture, status, objective, pre_break, request):
    inst = request.getfixturevalue(fixture)
    sol = solve_witness(inst, WitnessOptions(pre_break=pre_break))
    assert sol.status == status
    assert sol.objective == objective
    if status == "OPTIMAL":
        report = check_order(inst, sol.order)
        assert report.is_dvop and report.double_count == objective


@pytest.mark.parametrize("use_presolve", [True, False])
@pytest.mark.parametrize("separate_all", [False, True])
def test_option_grid_g6a(g6a, use_presolve, separate_all):
    opts = WitnessOptions(use_presolve=use_presolve, separate_all=separate_all)
    sol = solve_witness(g6a, opts)
    assert sol.status == "OPTIMAL" and sol.objective == 2


@pytest.mark.parametrize(
    "fixture", ["g6a", "g6b", "g5k3a", "g5k3b", "g6k3", "k4", "p5_k1", "wheel6"]
)
def test_induced_states(fixture, request):
    inst = request.getfixturevalue(fixture)
    _, walker = enumerate_valid_orders(inst)
    for order in itertools.islice(walker, 60):
        state = induce_witness_state(inst, order)
        assert state_violations(inst, state) == []
        report = check_order(inst, order)
        assert state.y_sum + 1 == report.double_count
        assert ef_validate(inst, state, order)


@pytest.mark.parametrize("fixture", ["g6a", "g6b", "wheel6"])
def test_manual_loop_cut_soundness(fixture, request):
    # Drive the master/subproblem loop by hand: separated cycles avoid
    # the state's clique, each cut kills its own state, and no cut ever
    # excludes a state induced by an optimal order.
    inst = request.getfixturevalue(fixture)
    ref = brute_optimum(inst, "min-double")
    _, walker = enumerate_valid_orders(inst)
    optimal_states = [
        induce_witness_state(inst, o)
        for o in walker
        if check_order(inst, o).double_count == ref.value
    ]
    cuts = []
    head = full_presolve(inst)
    for _ in range(200):
        state = mp2_solve(inst, cuts, incumbent=None, presolve_head=head)
        assert state is not None
        got = sp2_check(inst, state)
        if isinstance(got, VertexOrder):
            report = check_order(inst, got)
            assert report.is_dvop
            assert report.double_count == state.y_sum + 1 == ref.value
            break
        assert all(v not in state.clique for arc in got for v in arc)
        cut = make_cycle_cut(got, inst.K)
        assert not cut.satisfied_by(state)
        for induced in optimal_states:
            assert cut.satisfied_by(induced)
        cuts.append(cut)
    else:
        pytest.fail("loop did not converge in 200 cuts")


def test_trace_hooks(g6a):
    trace = WitnessTrace()
    sol = solve_witness(g6a, trace=trace)
    assert sol.status == "OPTIMAL"
    assert len(trace.accepted) == 1
    state, order = trace.accepted[0]
    assert ef_validate(g6a, state, order)
    for cut, cut_state in trace.cuts:
        assert not cut.satisfied_by(cut_state)


def test_timeout():
    big = Instance.build(12, 3, list(itertools.combinations(range(12), 2)))
    sol = solve_witness(big, WitnessOptions(time_limit=1e-6))
    assert sol.status == "TIMEOUT"
    assert sol.objective == 1


@settings(deadline=None, max_examples=40)
@given(small_instances(max_n=7), st.sampled_from(["none", "2cycles", "2and3cycles"]))
def test_agrees_with_oracle(inst, pre_break):
    ref = brute_optimum(inst, "min-double")
    sol = solve_witness(inst, WitnessOptions(pre_break=pre_break))
    if ref is None:
        assert sol.status == "INFEASIBLE"
    else:
        assert sol.status == "OPTIMAL"
        assert sol.objective == ref.value
        report = check_order(inst, sol.order)
        assert report.is_dvop and report.double_count == ref.value
