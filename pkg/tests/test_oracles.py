"""Brute-force and search oracles: known optima, distances, searches."""

import pytest

from plslab import generators as gen
from plslab.oracles import (adversary_search, brute_opt, delta_far,
                            exhaustive_search, family_distance, solve_wmax,
                            solve_wmin)
from plslab.problems import (dag_family, forest_family, kcolor_family,
                             maxis_problem, mwds_problem, mwvc_problem)
from plslab.registry import get_scheme
from plslab.scheme import SchemePair


def test_brute_opt_known_values():
    val, o = brute_opt(mwvc_problem(), gen.cycle(3))
    assert val == 2 and mwvc_problem().legal(gen.cycle(3), o)
    val, _ = brute_opt(maxis_problem(), gen.cycle(6))
    assert val == 3
    val, _ = brute_opt(maxis_problem(), gen.cycle(5))
    assert val == 2
    star = gen._configured(5, [(0, v) for v in range(1, 5)],
                           node_constrained=set(range(5)))
    val, o = brute_opt(mwds_problem(), star)
    assert val == 1 and o[0] == 1


def test_brute_opt_weighted():
    # cover the single edge with the cheaper endpoint
    g = gen._configured(2, [(0, 1)], weight={0: 5, 1: 2})
    val, o = brute_opt(mwvc_problem(), g)
    assert val == 2 and o == {0: 0, 1: 1}


def test_brute_opt_witness_is_legal():
    for seed in range(10):
        g = gen.gnp(7, 0.4, seed=seed, weighted=True)
        for pb in (mwvc_problem(), maxis_problem()):
            val, o = brute_opt(pb, g)
            assert pb.legal(g, o)
            assert pb.objective(g, o) == val


def test_local_bounds_bracket_global_optimum():
    # restricting legality to the interior can only lower the min value;
    # zeroing the ring can only lower the max value
    for seed in range(10):
        g = gen.gnp(8, 0.4, seed=seed, weighted=True)
        U = [v for v in g.nodes if v % 2 == 0]
        vmin, _ = brute_opt(mwvc_problem(), g)
        _, wmin = solve_wmin(mwvc_problem(), g, U)
        assert wmin <= sum(g.weight(v) for v in U)
        _, wmax = solve_wmax(maxis_problem(), g, U)
        vmax, _ = brute_opt(maxis_problem(), g)
        assert wmax <= vmax + sum(g.weight(v) for v in U)


def test_family_distance_closed_forms():
    assert family_distance(forest_family(), gen.complete(4)) == 3   # m-n+#cc
    assert family_distance(forest_family(), gen.cycle(5)) == 1
    assert family_distance(forest_family(), gen.random_tree(9, seed=1)) == 0
    assert family_distance(kcolor_family(2), gen.cycle(5)) == 1
    assert family_distance(kcolor_family(2), gen.complete(4)) == 2
    c3 = gen._configured(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert family_distance(dag_family(), c3) == 1


def test_delta_far_monotone_in_delta():
    g = gen.complete(5)
    # distance 6 of 10 edges: far at 1/4 and 1/2, not at 3/4
    assert family_distance(forest_family(), g) == 6
    assert delta_far(forest_family(), g, 0.25)[0] == "far"
    assert delta_far(forest_family(), g, 0.5)[0] == "far"
    assert delta_far(forest_family(), g, 0.75)[0] == "close"
    assert delta_far(forest_family(), gen.random_tree(8), 0.25)[0] == "member"


def test_adversary_search_reproducible():
    pair = get_scheme("forest-pls")
    g = gen.cycle(4)
    r1 = adversary_search(pair, g, budget=2000, seed=7)
    r2 = adversary_search(pair, g, budget=2000, seed=7)
    assert r1 == r2


def test_adversary_search_finds_hole_in_weak_verifier():
    # a verifier that accepts any nonempty labels is trivially forgeable
    weak = SchemePair("weak", None, lambda cfg, own, nbrs: True)
    hit = adversary_search(weak, gen.cycle(3), budget=50, seed=0)
    assert hit is not None


def test_adversary_search_respects_sound_scheme():
    pair = get_scheme("forest-pls")
    assert adversary_search(pair, gen.cycle(4), budget=3000, seed=1) is None


def test_exhaustive_search_tiny():
    weak = SchemePair("weak", None, lambda cfg, own, nbrs: own == "1")
    hit = exhaustive_search(weak, gen.path(2), maxlen=2)
    assert hit == {0: "1", 1: "1"}
    never = SchemePair("no", None, lambda cfg, own, nbrs: False)
    assert exhaustive_search(never, gen.path(2), maxlen=3) is None


def test_exhaustive_search_budget_guard():
    yes = SchemePair("yes", None, lambda cfg, own, nbrs: False)
    with pytest.raises(TimeoutError):
        exhaustive_search(yes, gen.cycle(4), maxlen=40, node_budget=10)
