import random

import pytest
from hypothesis import given, settings, strategies as st

from plslab.graph import (ConfiguredGraph, GuardedGraph, LocalityViolation,
                          inner, inner2, n2, rim)


def small_graph(n, seed, p=0.4):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return ConfiguredGraph(range(n), edges,
                           weight={v: rng.randint(1, 9) for v in range(n)},
                           edge_constrained={frozenset(e) for e in edges
                                             if rng.random() < 0.5})


@given(st.integers(1, 10), st.integers(0, 500))
@settings(max_examples=60, deadline=None)
def test_ports_are_symmetric(n, seed):
    g = small_graph(n, seed)
    for v in g.nodes:
        for p, pi in g.node_config(v).ports:
            u = g.neighbor_at(v, p)
            assert g.neighbor_at(u, pi.remote_port) == v
            back = g.port_info(u, pi.remote_port)
            assert back.remote_port == p
            assert back.constrained == pi.constrained


def test_edge_order_assigns_ports():
    g = ConfiguredGraph(range(3), [(0, 1), (0, 2)])
    assert g.neighbor_at(0, 0) == 1
    assert g.neighbor_at(0, 1) == 2


@given(st.integers(1, 9), st.integers(0, 500))
@settings(max_examples=60, deadline=None)
def test_json_roundtrip(n, seed):
    g = small_graph(n, seed)
    h = ConfiguredGraph.from_json(g.to_json())
    assert h.to_json() == g.to_json()
    assert sorted(h.nodes) == sorted(g.nodes)
    assert h.m == g.m


def test_induced_subgraph_keeps_ports():
    g = ConfiguredGraph(range(4), [(0, 1), (0, 2), (0, 3), (2, 3)])
    h = g.induced_subgraph([0, 2, 3])
    # port 0 at node 0 pointed at the dropped node 1; it must stay vacant
    assert h.neighbor_at(0, 1) == 2
    assert h.neighbor_at(0, 2) == 3
    assert list(h.ports(0)) == [1, 2]


def test_inner_rim_identities():
    g = small_graph(12, 3)
    U = [v for v in g.nodes if v % 3 != 0]
    assert set(inner2(g, U)) == set(inner(g, inner(g, U)))
    assert set(rim(g, U)) == set(U) - set(inner2(g, U))
    for v in n2(g, U):
        assert v not in set(U)


def test_self_loops_rejected():
    with pytest.raises(ValueError):
        ConfiguredGraph(range(2), [(0, 0)])


def test_duplicate_edges_rejected():
    with pytest.raises(ValueError):
        ConfiguredGraph(range(2), [(0, 1), (1, 0)])


def test_replace_is_functional():
    g = ConfiguredGraph(range(2), [(0, 1)])
    h = g.replace(output={0: 1, 1: 0})
    assert g.output(0) is None
    assert h.output(0) == 1 and h.output(1) == 0


def test_guard_allows_reads_within_budget():
    g = ConfiguredGraph(range(6), [(v, v + 1) for v in range(5)])
    gg = GuardedGraph(g, 2)
    with gg.focus(0):
        assert gg.neighbor_at(1, 1) == 2
        assert gg.weight(2) == 1


def test_guard_trips_beyond_budget():
    g = ConfiguredGraph(range(6), [(v, v + 1) for v in range(5)])
    gg = GuardedGraph(g, 2)
    with gg.focus(0):
        with pytest.raises(LocalityViolation):
            gg.weight(4)


def test_guard_focus_moves_the_window():
    g = ConfiguredGraph(range(8), [(v, v + 1) for v in range(7)])
    gg = GuardedGraph(g, 2)
    with gg.focus(5):
        assert gg.weight(7) == 1
        with pytest.raises(LocalityViolation):
            gg.weight(0)
