"""Per-scheme sanity: honest runs accept, hand-built bad instances reject."""

import pytest

from plslab import generators as gen
from plslab.graph import LocalityViolation
from plslab.problems import maxis_problem, mwds_problem, mwvc_problem
from plslab.registry import SCHEME_NAMES, get_scheme
from plslab.scheme import (run_prover_instrumented, run_verifier)


def prove_and_verify(name, g):
    pair = get_scheme(name, n=g.n)
    labels = run_prover_instrumented(pair, g)
    return pair, labels, run_verifier(pair, g, labels)


def test_every_scheme_accepts_honest_runs():
    yes = {
        "mwvc-apls2": lambda s: gen.yes_instance(mwvc_problem(), 20, s),
        "mvc-bipartite": lambda s: gen.yes_instance(
            mwvc_problem(), 20, s, weighted=False, bipartite_only=True),
        "maxis-apls-delta": lambda s: gen.yes_instance(maxis_problem(), 20, s),
        "maxis-bipartite": lambda s: gen.yes_instance(
            maxis_problem(), 20, s, bipartite_only=True),
        "mwds-apls-h": lambda s: gen.yes_instance(mwds_problem(), 20, s),
        "forest-pls": lambda s: gen.forest_member(20, s),
        "dag-pls": lambda s: gen.dag_member(20, s),
        "kcolor-pls:2": lambda s: gen.kcolor_member(20, 2, s),
        "kcolor-pls:3": lambda s: gen.kcolor_member(20, 3, s),
        "arboricity-pls:2": lambda s: gen.arboricity_member(20, 2, s),
        "universal-pls:forest": lambda s: gen.forest_member(20, s),
        "compiled-min:mwvc": lambda s: gen.yes_instance(mwvc_problem(), 20, s),
        "compiled-max:maxis": lambda s: gen.yes_instance(maxis_problem(), 20, s),
        "compiled-tpls:forest": lambda s: gen.forest_member(20, s),
        "compiled-tpls:2color": lambda s: gen.kcolor_member(20, 2, s),
        "compiled-tpls:dag": lambda s: gen.dag_member(20, s),
        "compiled-tpls:arboricity-2": lambda s: gen.arboricity_member(20, 2, s),
    }
    assert set(yes) == set(SCHEME_NAMES)
    for name, make in yes.items():
        for seed in range(2):
            g = make(seed)
            _, _, verdict = prove_and_verify(name, g)
            assert verdict, (name, seed, verdict.rejecting)


def test_mwvc_hand_example():
    # triangle, unit weights: cover {0,1} is optimal (value 2)
    g = gen._configured(3, [(0, 1), (1, 2), (2, 0)],
                        output={0: 1, 1: 1, 2: 0})
    _, _, verdict = prove_and_verify("mwvc-apls2", g)
    assert verdict


def test_mwvc_rejects_tampered_output():
    g = gen.yes_instance(mwvc_problem(), 12, seed=3)
    pair = get_scheme("mwvc-apls2")
    labels = pair.prover(g)
    # claim a different output than the instance carries
    flip = next(v for v in g.nodes if g.output(v) == 1)
    bad = g.replace(output={flip: 0})
    assert not run_verifier(pair, bad, labels)


def test_mwvc_rejects_bloated_cover():
    # all-ones on a star is a cover but > 2x optimal when leaves abound:
    # the fractional-matching certificate can't pay for it
    g = gen._configured(6, [(0, v) for v in range(1, 6)],
                        output={v: 1 for v in range(6)})
    pair = get_scheme("mwvc-apls2")
    labels = pair.prover(g)
    # no fractional matching is worth half of 6, so the ledger can't balance
    assert not run_verifier(pair, g, labels)


def test_mvcb_rejects_uncovered_edge():
    g = gen._configured(4, [(0, 1), (1, 2), (2, 3)],
                        output={0: 0, 1: 1, 2: 0, 3: 0})   # 2-3 uncovered
    pair = get_scheme("mvc-bipartite")
    labels_src = gen._configured(4, [(0, 1), (1, 2), (2, 3)],
                                 output={0: 0, 1: 1, 2: 1, 3: 0})
    labels = pair.prover(labels_src)
    assert not run_verifier(pair, g, labels)


def test_maxis_hand_examples():
    # C5 alternating picks 2; optimal
    c5 = gen.cycle(5).replace(output={0: 1, 1: 0, 2: 1, 3: 0, 4: 0})
    _, _, verdict = prove_and_verify("maxis-apls-delta", c5)
    assert verdict
    # star: all leaves is optimal
    star = gen.star(6).replace(
        output={0: 0, **{v: 1 for v in range(1, 6)}})
    _, _, verdict = prove_and_verify("maxis-apls-delta", star)
    assert verdict


def test_maxis_rejects_adjacent_ones():
    g = gen.path(4).replace(output={0: 1, 1: 1, 2: 0, 3: 1})
    pair = get_scheme("maxis-apls-delta")
    src = gen.path(4).replace(output={0: 1, 1: 0, 2: 1, 3: 0})
    labels = pair.prover(src)
    assert not run_verifier(pair, g, labels)


def test_mwds_star_example():
    g = gen._configured(6, [(0, v) for v in range(1, 6)],
                        node_constrained=set(range(6)),
                        output={0: 1, **{v: 0 for v in range(1, 6)}})
    _, _, verdict = prove_and_verify("mwds-apls-h", g)
    assert verdict


def test_forest_rejects_cycle():
    pair = get_scheme("forest-pls")
    tree = gen.random_tree(4, seed=0)
    labels = pair.prover(tree)
    c4 = gen.cycle(4)
    assert not run_verifier(pair, c4, labels)
    assert adversaryless_reject(pair, c4)


def adversaryless_reject(pair, g):
    """No honest run exists; quick random probes shouldn't stick either."""
    from plslab.oracles import adversary_search
    return adversary_search(pair, g, budget=500, seed=0) is None


def test_kcolor_rejects_odd_cycle():
    pair = get_scheme("kcolor-pls:2")
    assert adversaryless_reject(pair, gen.cycle(5))


def test_dag_rejects_directed_cycle():
    pair = get_scheme("dag-pls")
    c3 = gen._configured(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert adversaryless_reject(pair, c3)


def test_universal_rejects_inconsistent_copies():
    pair = get_scheme("universal-pls:forest")
    g = gen.path(3)
    labels = pair.prover(g)
    other = pair.prover(gen.path(3).replace(weight={0: 7}))
    # splice in a label built from a different graph copy
    labels[1] = other[1]
    assert not run_verifier(pair, g, labels)


def test_universal_prover_is_inherently_global():
    pair = get_scheme("universal-pls:forest")
    with pytest.raises(LocalityViolation):
        run_prover_instrumented(pair, gen.path(300), radius_budget=10)
