"""Ball-growing partition invariants on small random graphs."""

import random
from fractions import Fraction

from plslab.generators import avg_degree_graph, gnp
from plslab.graph import inner2, rim
from plslab.partition import (check_cgf_rule, check_growth_min,
                              check_rim_coverage, part_cgf, part_opt)


def seeds():
    return range(12)


def test_part_opt_clusters_partition_nodes():
    for seed in seeds():
        g = gnp(14, 0.25, seed=seed, weighted=True)
        o = {v: 1 for v in g.nodes}
        st = part_opt(g, o, Fraction(1, 2), "min")
        assert sorted(st.cluster) == sorted(g.nodes)
        # members lists per leader tile the node set exactly
        tiled = [v for l in st.by_leader for v in st.members(l)]
        assert sorted(tiled) == sorted(g.nodes)


def test_part_opt_members_connected():
    for seed in seeds():
        g = gnp(14, 0.3, seed=seed)
        o = {v: random.Random(seed).randint(0, 1) for v in g.nodes}
        st = part_opt(g, o, Fraction(1, 1), "min")
        for leader in st.by_leader:
            mem = set(st.members(leader))
            seen = {leader}
            frontier = [leader]
            while frontier:
                v = frontier.pop()
                for p, _ in g.node_config(v).ports:
                    u = g.neighbor_at(v, p)
                    if u in mem and u not in seen:
                        seen.add(u)
                        frontier.append(u)
            assert seen == mem


def test_part_opt_min_invariants_exact():
    for seed in seeds():
        g = gnp(16, 0.25, seed=100 + seed, weighted=True)
        o = {v: 1 for v in g.nodes}
        for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
            st = part_opt(g, o, eps, "min")
            assert check_rim_coverage(g, st) == []
            assert check_growth_min(g, st, o, eps) == []


def test_part_opt_max_mode_covers_rims():
    for seed in seeds():
        g = gnp(16, 0.25, seed=200 + seed)
        o = {v: 1 for v in g.nodes}
        st = part_opt(g, o, Fraction(1, 2), "max")
        assert check_rim_coverage(g, st) == []


def test_part_opt_respects_processing_order():
    g = gnp(12, 0.3, seed=7)
    o = {v: 1 for v in g.nodes}
    order = sorted(g.nodes, reverse=True)
    st = part_opt(g, o, Fraction(1), "min", order=order)
    assert st.order == order
    # first processed node leads the first non-empty cluster
    first = next(c for c in st.clusters if c.members)
    assert first.leader == order[0]


def test_part_cgf_rule_holds_without_stall():
    for seed in seeds():
        g = gnp(14, 0.3, seed=300 + seed)
        st = part_cgf(g, Fraction(1, 4))
        stalled = any(c.extra.get("stalled") for c in st.clusters)
        if not stalled:
            assert check_cgf_rule(g, st, Fraction(1, 4)) == []
        assert sorted(st.cluster) == sorted(g.nodes)


def test_part_cgf_multi_affiliation_seclists():
    for seed in seeds():
        g = gnp(14, 0.3, seed=400 + seed)
        st = part_cgf(g, Fraction(1, 2), multi_affiliation=True)
        for v, lst in st.seclist.items():
            assert st.cluster[v] not in lst
            assert len(lst) == len(set(lst))


def test_radius_grows_slowly():
    # sanity on one mid-size instance: radius well under the locality budget
    g = avg_degree_graph(256, 4, seed=1)
    o = {v: 1 for v in g.nodes}
    st = part_opt(g, o, Fraction(1, 2), "min")
    assert st.max_radius() <= 8 * 2 * 8   # 8*(q/p)*log2(n)
