"""Order validation, double/node accounting, and greedy construction."""

import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from conftest import small_instances
from ddvop.graph import Clique, Instance
from ddvop.order import (
    DoublePattern,
    OrderReport,
    VertexOrder,
    check_order,
    format_solution,
    greedy_dvop,
    greedy_from_clique,
    initial_clique,
    parse_solution,
)
from ddvop.oracle import enumerate_valid_orders


def test_vertex_order_views():
    order = VertexOrder((3, 5, 2, 1, 0, 4))
    assert order.n == 6
    assert order.inverse == (4, 3, 2, 0, 5, 1)
    assert VertexOrder.from_ranks(order.inverse) == order
    with pytest.raises(ValueError):
        VertexOrder((0, 0, 1))


def test_double_pattern():
    p = DoublePattern((0, 0, 1, 1, 0, 1))
    assert p.count() == 3
    assert list(p) == [0, 0, 1, 1, 0, 1]
    assert p[2] == 1 and len(p) == 6
    with pytest.raises(ValueError):
        DoublePattern((0, 2))


def test_identity_order_g6a(g6a):
    report = check_order(g6a, VertexOrder(tuple(range(6))))
    assert report.is_dvop
    assert report.doubles.bits == (0, 0, 1, 1, 1, 0)
    assert report.double_count == 3
    assert report.node_counts == (1, 1, 2, 4, 8, 8)
    assert report.total_nodes == 24


def test_optimal_order_g6a(g6a):
    report = check_order(g6a, VertexOrder((3, 5, 2, 1, 0, 4)))
    assert report.is_dvop
    assert report.double_count == 2
    assert report.total_nodes == 12


def test_invalid_order_g6a_k3(g6a_k3):
    report = check_order(g6a_k3, VertexOrder(tuple(range(6))))
    assert not report.is_dvop


def test_check_order_rejects_size_mismatch(g6a):
    with pytest.raises(ValueError):
        check_order(g6a, VertexOrder((0, 1, 2)))


def test_node_counts_follow_recursion(g6a):
    report = check_order(g6a, VertexOrder(tuple(range(6))))
    counts = report.node_counts
    for r in range(6):
        if r < g6a.K:
            assert counts[r] == 1
        else:
            assert counts[r] == (report.doubles[r] + 1) * counts[r - 1]
    assert report.total_nodes == sum(counts)


def test_clique_prefix_permutation_invariance(g6a):
    base = check_order(g6a, VertexOrder((3, 5, 2, 1, 0, 4)))
    swapped = check_order(g6a, VertexOrder((5, 3, 2, 1, 0, 4)))
    assert swapped.is_dvop
    assert swapped.doubles == base.doubles
    assert swapped.total_nodes == base.total_nodes


def test_greedy_g6a(g6a):
    got = greedy_dvop(g6a)
    assert got is not None
    order, report = got
    assert report.is_dvop
    assert check_order(g6a, order) == report
    assert 2 <= report.double_count <= 3


def test_greedy_k5_single_double(k5):
    got = greedy_dvop(k5)
    assert got is not None
    assert got[1].double_count == 1


def test_greedy_infeasible(p5_k2, g6a_k3):
    assert greedy_dvop(p5_k2) is None
    assert greedy_dvop(g6a_k3) is None


def test_greedy_from_clique_stuck():
    # Triangle plus a pendant vertex: no completion has 2 placed
    # neighbors for vertex 3, so the greedy walk dead-ends.
    inst = Instance.build(4, 2, [(0, 1), (0, 2), (1, 2), (0, 3)])
    assert greedy_from_clique(inst, Clique((0, 1, 2))) is None
    assert greedy_dvop(inst) is None


def test_initial_clique(g6a):
    order = VertexOrder((3, 5, 2, 1, 0, 4))
    clique = initial_clique(g6a, order)
    assert clique.members == (2, 3, 5)
    assert all(g6a.has_edge(u, v) for u, v in [(2, 3), (2, 5), (3, 5)])


def test_format_and_parse_solution(g6a):
    order = VertexOrder((3, 5, 2, 1, 0, 4))
    report = check_order(g6a, order)
    text = format_solution("OPTIMAL", order, report)
    assert text.splitlines()[0] == "s OPTIMAL 2 12"
    status, got_order, got_pattern = parse_solution(text)
    assert status == "OPTIMAL"
    assert got_order == order
    assert got_pattern == report.doubles


def test_format_solution_without_order():
    text = format_solution("INFEASIBLE")
    assert text == "s INFEASIBLE - -\n"
    status, order, pattern = parse_solution(text)
    assert status == "INFEASIBLE" and order is None and pattern is None


def test_format_solution_errors(g6a):
    order = VertexOrder(tuple(range(6)))
    with pytest.raises(ValueError):
        format_solution("DONE")
    with pytest.raises(ValueError):
        format_solution("OPTIMAL", order, None)


@pytest.mark.parametrize(
    "text",
    [
        "o 0 1 2\nd 0 0 1\n",
        "s OPTIMAL 1\n",
        "s OPTIMAL 1 2\ns OPTIMAL 1 2\n",
        "s OPTIMAL 1 2\no 0 1 2\n",
        "x 1 2\n",
    ],
)
def test_parse_solution_errors(text):
    with pytest.raises(ValueError):
        parse_solution(text)


@given(small_instances())
def test_greedy_agrees_with_feasibility(inst):
    count, _ = enumerate_valid_orders(inst)
    got = greedy_dvop(inst)
    if count == 0:
        assert got is None
    else:
        assert got is not None
        order, report = got
        assert report.is_dvop
        assert check_order(inst, order) == report


@settings(deadline=None)
@given(small_instances())
def test_every_valid_order_checks_out(inst):
    _, orders = enumerate_valid_orders(inst)
    for order in itertools.islice(orders, 200):
        report = check_order(inst, order)
        assert report.is_dvop
        assert report.double_count == report.doubles.count()
        prefix = order.perm[: inst.K + 1]
        for i, u in enumerate(prefix):
            for v in prefix[i + 1 :]:
                assert inst.has_edge(u, v)
