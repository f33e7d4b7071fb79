"""Problem predicates, objectives, and graph-family membership."""

import random

from plslab import generators as gen
from plslab.problems import (arboricity_at_most, arboricity_family,
                             dag_family, forest_family, is_dag, is_forest,
                             is_kcolorable, kcolor_family, maxis_problem,
                             mwds_problem, mwvc_problem, TAUT)


def test_objective_is_weighted_sum():
    g = gen.gnp(6, 0.5, seed=1, weighted=True)
    o = {v: v % 2 for v in g.nodes}
    want = sum(g.weight(v) * o[v] for v in g.nodes)
    assert mwvc_problem().objective(g, o) == want


def test_objective_requires_total_output():
    g = gen.path(3)
    try:
        mwvc_problem().objective(g, {0: 1, 1: 0})
    except ValueError:
        pass
    else:
        raise AssertionError("partial output should raise")


def test_mwvc_legality_hand_cases():
    pb = mwvc_problem()
    g = gen.path(3)                      # edges 0-1, 1-2
    assert pb.legal(g, {0: 0, 1: 1, 2: 0})
    assert not pb.legal(g, {0: 1, 1: 0, 2: 0})    # edge 1-2 uncovered
    assert pb.legal(g, {0: 1, 1: 1, 2: 1})


def test_maxis_legality_hand_cases():
    pb = maxis_problem()
    g = gen.path(3)
    assert pb.legal(g, {0: 1, 1: 0, 2: 1})
    assert not pb.legal(g, {0: 1, 1: 1, 2: 0})    # adjacent ones
    assert pb.legal(g, {0: 0, 1: 0, 2: 0})


def test_maxis_isolated_nodes_stay_out():
    # an isolated node touches no constrained edge, so it may not be picked
    pb = maxis_problem()
    g = gen._configured(3, [(0, 1)])
    assert not pb.legal(g, {0: 0, 1: 0, 2: 1})
    assert pb.legal(g, {0: 1, 1: 0, 2: 0})


def test_mwds_legality_hand_cases():
    pb = mwds_problem()
    g = gen._configured(4, [(0, 1), (0, 2), (0, 3)],
                        node_constrained=set(range(4)))
    assert pb.legal(g, {0: 1, 1: 0, 2: 0, 3: 0})
    assert not pb.legal(g, {0: 0, 1: 1, 2: 1, 3: 0})   # leaf 3 undominated
    # nothing to dominate means the empty set is fine
    free = gen.star(4)
    assert pb.legal(free, {v: 0 for v in free.nodes})


def test_taut_nodes_accept_anything():
    g = gen.path(3).replace(prd={1: TAUT})
    pb = mwvc_problem()
    # node 1 is tautologized: edge 0-1 still constrains node 0's view
    assert pb.legal_at(g, {0: 0, 1: 0, 2: 1}, 1)
    assert not pb.legal_at(g, {0: 0, 1: 0, 2: 1}, 0)


def test_covering_monotone_up_packing_monotone_down():
    rng = random.Random(5)
    for seed in range(20):
        g = gen.gnp(8, 0.4, seed=seed)
        o = {v: rng.randint(0, 1) for v in g.nodes}
        v = rng.randrange(8)
        if mwvc_problem().legal(g, o):
            assert mwvc_problem().legal(g, {**o, v: 1})
        if maxis_problem().legal(g, o):
            assert maxis_problem().legal(g, {**o, v: 0})


def test_forest_membership():
    assert is_forest(gen.path(6))
    assert is_forest(gen.star(5))
    assert not is_forest(gen.cycle(4))
    assert forest_family().member(gen.random_tree(20, seed=2))


def test_kcolorable_membership():
    assert is_kcolorable(gen.cycle(4), 2)
    assert not is_kcolorable(gen.cycle(5), 2)
    assert is_kcolorable(gen.cycle(5), 3)
    assert not is_kcolorable(gen.complete(4), 3)
    assert kcolor_family(2).member(gen.bipartite(3, 3, 0.8, seed=1))


def test_dag_membership():
    g = gen._configured(3, [(0, 1), (1, 2), (0, 2)], directed=True)
    assert is_dag(g)
    c = gen._configured(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert not is_dag(c)
    assert dag_family().directed


def test_arboricity_membership():
    assert arboricity_at_most(gen.random_tree(10, seed=0), 1)
    assert not arboricity_at_most(gen.complete(4), 1)
    assert arboricity_at_most(gen.complete(4), 2)
    assert not arboricity_at_most(gen.complete(6), 2)
    assert arboricity_family(2).member(gen.cycle(7))


def test_family_members_from_generators():
    for n, seed in [(10, 0), (16, 3)]:
        assert forest_family().member(gen.forest_member(n, seed))
        assert kcolor_family(3).member(gen.kcolor_member(n, 3, seed))
        assert dag_family().member(gen.dag_member(n, seed))
        assert arboricity_family(2).member(gen.arboricity_member(n, 2, seed))
