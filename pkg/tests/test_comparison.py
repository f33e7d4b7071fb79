import random

import pytest

from plslab.comparison import cmp_check, cmp_prove, cmp_read, cmp_write
from plslab.bits import BitReader, BitWriter
from plslab.graph import ConfiguredGraph


def rand_connected(n, seed):
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    edges += [(u, v) for u in range(n) for v in range(u + 1, n)
              if rng.random() < 0.2 and (u, v) not in edges]
    return ConfiguredGraph(range(n), set(edges)), rng


def check_all(g, fields, a, b, root, require=">="):
    ok = []
    for v in g.nodes:
        cfg = g.node_config(v)
        nf = [fields.get(g.neighbor_at(v, p)) for p, _ in cfg.ports]
        ok.append(cmp_check(cfg, fields[v], nf, a.get(v, 0), b.get(v, 0),
                            root, require=require))
    return all(ok)


def test_honest_certificates_pass():
    for seed in range(25):
        g, rng = rand_connected(2 + seed % 9, seed)
        a = {v: rng.randint(0, 20) for v in g.nodes}
        b = {v: rng.randint(0, 20) for v in g.nodes}
        if sum(a.values()) < sum(b.values()):
            a, b = b, a
        fields = cmp_prove(g, g.nodes, 0, a, b)
        assert check_all(g, fields, a, b, 0)


def test_root_enforces_relation():
    g, _ = rand_connected(6, 1)
    a = {v: 1 for v in g.nodes}
    b = {v: 2 for v in g.nodes}
    fields = cmp_prove(g, g.nodes, 0, a, b)   # sums honest: 6 < 12
    assert not check_all(g, fields, a, b, 0)


def test_equality_mode():
    g, _ = rand_connected(7, 2)
    a = {v: 3 for v in g.nodes}
    fields = cmp_prove(g, g.nodes, 0, a, a)
    assert check_all(g, fields, a, a, 0, require="==")
    b = dict(a)
    b[3] += 1
    assert not check_all(g, fields, a, b, 0, require="==")


def test_tampered_sums_are_caught():
    # no single-field lie can make an untrue inequality verify everywhere
    for seed in range(15):
        g, rng = rand_connected(6, 100 + seed)
        a = {v: rng.randint(0, 5) for v in g.nodes}
        b = {v: sum(a.values()) + 1 if v == 0 else 0 for v in g.nodes}
        # sum(a) < sum(b): honest proving is impossible, try forged fields
        fields = cmp_prove(g, g.nodes, 0, a, a)   # structurally valid tree
        for v in g.nodes:
            for fld in ("sum_a", "sum_b", "dist", "root"):
                forged = dict(fields)
                forged[v] = fields[v]._replace(**{fld: getattr(fields[v],
                                                               fld) + 1})
                assert not check_all(g, forged, a, b, 0)


def test_disconnected_scope_raises():
    g = ConfiguredGraph(range(4), [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        cmp_prove(g, g.nodes, 0, {}, {})


def test_scope_subset():
    g = ConfiguredGraph(range(5), [(v, v + 1) for v in range(4)])
    scope = [1, 2, 3]
    a = {2: 5}
    fields = cmp_prove(g, scope, 2, a, {})
    for v in scope:
        cfg = g.node_config(v)
        nf = [fields.get(g.neighbor_at(v, p)) for p, _ in cfg.ports]
        assert cmp_check(cfg, fields[v], nf, a.get(v, 0), 0, 2)


def test_fields_bit_roundtrip():
    g, _ = rand_connected(6, 5)
    fields = cmp_prove(g, g.nodes, 0, {v: v for v in g.nodes}, {})
    for f in fields.values():
        w = BitWriter()
        cmp_write(w, f)
        assert cmp_read(BitReader(w.getvalue())) == f


def test_overflow_rejected():
    g = ConfiguredGraph(range(2), [(0, 1)])
    with pytest.raises(OverflowError):
        cmp_prove(g, g.nodes, 0, {0: 1 << 63}, {})
