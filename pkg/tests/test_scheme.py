"""Framework-level behavior: verdicts, budgets, label dumps, slocal runs."""

import math

import pytest

from plslab.graph import ConfiguredGraph, GuardedGraph, LocalityViolation
from plslab.scheme import (SchemePair, default_budget, dump_labels,
                           parse_labels, proof_size, proof_size_fit,
                           run_prover_instrumented, run_slocal, run_verifier)


def path(n):
    return ConfiguredGraph(range(n), [(i, i + 1) for i in range(n - 1)])


def accept_all(cfg, own, nbrs):
    return True


def test_run_verifier_accepts_and_rejects():
    g = path(4)
    labels = {v: "1" for v in g.nodes}
    pair = SchemePair("yes", prover=None, verifier=accept_all)
    assert run_verifier(pair, g, labels)

    def picky(cfg, own, nbrs):
        return own == "1"

    labels[2] = "0"
    v = run_verifier(SchemePair("p", None, picky), g, labels)
    assert not v and v.rejecting == (2,)


def test_missing_label_rejects_locally():
    g = path(3)
    labels = {0: "1", 2: "1"}   # node 1 unlabeled
    pair = SchemePair("yes", None, accept_all)
    v = run_verifier(pair, g, labels)
    # node 1 has no label; its neighbors can't read it either
    assert set(v.rejecting) == {0, 1, 2}


def test_verifier_errors_become_rejections():
    g = path(3)

    def boom(cfg, own, nbrs):
        if cfg.id == 1:
            raise ValueError("bad decode")
        return True

    v = run_verifier(SchemePair("b", None, boom), g, {v: "" for v in g.nodes})
    assert v.rejecting == (1,)


def test_default_budget_formula():
    for n in (2, 5, 16, 1000):
        assert default_budget(n) == 4 * math.ceil(math.log2(n)) ** 2
    assert default_budget(1) >= 1


def test_dump_parse_roundtrip():
    labels = {3: "101", 0: "", 7: "0110"}
    text = dump_labels(labels)
    assert parse_labels(text) == labels
    # ascending ids, id TAB hex lines
    ids = [int(line.split("\t")[0]) for line in text.strip().splitlines()]
    assert ids == sorted(labels)


def test_proof_size():
    assert proof_size({0: "101", 1: "1"}) == 3
    assert proof_size({}) == 0


def test_proof_size_fit_recovers_line():
    pts = [(n, round(7 * math.log2(n) + 3)) for n in (64, 128, 256, 512)]
    a, b, resid = proof_size_fit(pts)
    assert abs(a - 7) < 0.2 and abs(b - 3) < 1.5 and resid < 1


def test_instrumented_prover_trips_on_far_reads():
    g = path(40)

    def greedy_far(gg):
        with gg.focus(0):
            gg.node_config(39)      # way outside any small budget
        return {}

    pair = SchemePair("far", prover=greedy_far, verifier=accept_all)
    with pytest.raises(LocalityViolation):
        run_prover_instrumented(pair, g, radius_budget=2)


def test_run_slocal_greedy_mis():
    g = path(6)

    def alg(view, v, state):
        for p, _ in view.node_config(v).ports:
            u = view.neighbor_at(v, p)
            if state.read_decision(u, 0) == 1:
                return 0
        return 1

    st = run_slocal(alg, g, r=2)
    chosen = {v for v, d in st.decision.items() if d == 1}
    # greedy in id order on a path picks alternating nodes
    assert chosen == {0, 2, 4}


def test_run_slocal_requires_radius():
    with pytest.raises(ValueError):
        run_slocal(lambda view, v, st: 0, path(3))
