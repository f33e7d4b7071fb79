"""Concrete certification schemes.

Every scheme here follows the same pattern: an encode function that packs
a per-node struct into a self-delimiting bit string, a parse function
that unpacks it (raising DecodeError on garbage), a per-node check that
sees only the node's own configuration, its own struct, and its
neighbors' structs, and a whole-graph prover.

Two conventions keep the schemes reusable inside the cluster compilers:

* labels carry an `active` bit; inactive nodes (predicate tag TAUT) are
  exempt from the problem predicate but still participate in structural
  checks.  Each node's bit is checked against its own expected activity,
  so neighbors' bits can be trusted.
* a neighbor entry of None means "this edge is outside the instance"
  (masked away by a compiler); port references are by port *number*, so
  they survive subgraph projection.

The node count n is treated as global knowledge where a scheme needs it
(harmonic bounds); everything else a verifier uses travels in labels.
"""

import json
import math
from contextlib import nullcontext
from fractions import Fraction
from typing import NamedTuple, Optional

from .bits import BitReader, BitWriter, DecodeError
from .comparison import CmpFields, cmp_check, cmp_prove, cmp_read, cmp_write
from .graph import ConfiguredGraph, GuardedGraph, PortInfo
from .problems import TAUT
from .scheme import SchemePair

MWDS_SCALE = 1 << 40


# ---------- small shared helpers ----------

def components(g):
    seen = set()
    out = []
    for s in g.nodes:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            for u in g.neighbors(comp[i]):
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
            i += 1
        out.append(sorted(comp))
    return out


def _expected_active(cfg):
    return cfg.prd != TAUT


def _need_output(cfg):
    if cfg.output is None:
        raise DecodeError("instance has no output at this node")
    return cfg.output


def _write_portmap(w, entries):
    """Sparse (port, value) pairs."""
    w.uint(len(entries))
    for p, val in sorted(entries.items()):
        w.uint(p)
        w.uint(val)


def _read_portmap(r):
    n = r.uint()
    out = {}
    for _ in range(n):
        p = r.uint()
        out[p] = r.uint()
    if len(out) != n:
        raise DecodeError("duplicate port in port map")
    return out


def _cmp_nbrs(own_cmp, nbrs):
    return [nb.cmp if (nb is not None and nb.cmp.root == own_cmp.root)
            else None for nb in nbrs]


def _port_index(cfg):
    return {p: i for i, (p, _) in enumerate(cfg.ports)}


# =======================================================================
# weighted vertex cover, factor 2 via a fractional edge packing
# =======================================================================

class MwvcLabel(NamedTuple):
    active: bool
    o: int
    t: dict                  # port -> 2*packing value on that edge (>0 only)
    cmp: CmpFields


def encode_mwvc(lab: MwvcLabel) -> str:
    w = BitWriter()
    w.raw("1" if lab.active else "0")
    w.uint(lab.o)
    _write_portmap(w, lab.t)
    cmp_write(w, lab.cmp)
    return w.getvalue()


def parse_mwvc(bits: str) -> MwvcLabel:
    r = BitReader(bits)
    active = r._take(1) == "1"
    o = r.uint()
    t = _read_portmap(r)
    cmp = cmp_read(r)
    r.expect_done()
    return MwvcLabel(active, o, t, cmp)


def check_mwvc(cfg, own: MwvcLabel, nbrs, expected_o, expected_active):
    if own.active != expected_active or own.o != expected_o:
        return False
    if not 0 <= own.o <= 1:
        return False
    idx = _port_index(cfg)
    info = dict(cfg.ports)
    # edge packing: symmetric, on constrained in-instance edges, feasible
    for p, t in own.t.items():
        if p not in idx or t <= 0 or not info[p].constrained:
            return False
        nb = nbrs[idx[p]]
        if nb is None:
            return False
        if nb.t.get(info[p].remote_port, 0) != t:
            return False
        if not (own.active or nb.active):
            return False
    if sum(own.t.values()) > 2 * cfg.weight:
        return False
    if own.active:
        for p, pi in cfg.ports:
            if not pi.constrained:
                continue
            nb = nbrs[idx[p]]
            if nb is None:
                return False
            if own.o < 1 and nb.o < 1:
                return False
    a_v = sum(own.t.values())
    b_v = 2 * cfg.weight * own.o
    return cmp_check(cfg, own.cmp, _cmp_nbrs(own.cmp, nbrs),
                     a_v, b_v, own.cmp.root)


def _frac_matching(g, allowed_edges, weight):
    """Max fractional matching under node capacities; returns integer
    doubled values per edge (frozenset -> t)."""
    import networkx as nx
    if not allowed_edges:
        return {}
    D = nx.DiGraph()
    nodes = set()
    for (u, v) in allowed_edges:
        nodes.update((u, v))
    big = sum(weight(v) for v in nodes) + 1
    for v in nodes:
        D.add_edge("s", ("L", v), capacity=weight(v))
        D.add_edge(("R", v), "t", capacity=weight(v))
    for (u, v) in allowed_edges:
        D.add_edge(("L", u), ("R", v), capacity=big)
        D.add_edge(("L", v), ("R", u), capacity=big)
    _, flow = nx.maximum_flow(D, "s", "t")
    out = {}
    for (u, v) in allowed_edges:
        t = flow[("L", u)].get(("R", v), 0) + flow[("L", v)].get(("R", u), 0)
        if t:
            out[frozenset((u, v))] = t
    return out


def prove_mwvc(g):
    labels = {}
    o = {v: _need_output(g.node_config(v)) for v in g.nodes}
    allowed = []
    for (u, v, c) in g.edges():
        if not c:
            continue
        au = g.prd(u) != TAUT
        av = g.prd(v) != TAUT
        if au or av:
            allowed.append((u, v))
    t = _frac_matching(g, allowed, g.weight)
    for comp in components(g):
        root = comp[0]
        a = {}
        b = {}
        for v in comp:
            a[v] = sum(t.get(frozenset((v, u)), 0) for u in g.neighbors(v))
            b[v] = 2 * g.weight(v) * o[v]
        cmp = cmp_prove(g, comp, root, a, b)
        for v in comp:
            tmap = {}
            cfg = g.node_config(v)
            for p, _ in cfg.ports:
                tv = t.get(frozenset((v, g.neighbor_at(v, p))), 0)
                if tv:
                    tmap[p] = tv
            labels[v] = MwvcLabel(g.prd(v) != TAUT, o[v], tmap, cmp[v])
    return labels


# =======================================================================
# vertex cover on bipartite graphs, exact via a matching equality
# =======================================================================

class MvcbLabel(NamedTuple):
    active: bool
    o: int
    matched: int             # 0 = unmatched, else port+1
    cmp: CmpFields


def encode_mvcb(lab: MvcbLabel) -> str:
    w = BitWriter()
    w.raw("1" if lab.active else "0")
    w.uint(lab.o)
    w.uint(lab.matched)
    cmp_write(w, lab.cmp)
    return w.getvalue()


def parse_mvcb(bits: str) -> MvcbLabel:
    r = BitReader(bits)
    active = r._take(1) == "1"
    o = r.uint()
    matched = r.uint()
    cmp = cmp_read(r)
    r.expect_done()
    return MvcbLabel(active, o, matched, cmp)


def check_mvcb(cfg, own: MvcbLabel, nbrs, expected_o, expected_active):
    if own.active != expected_active or own.o != expected_o:
        return False
    if not 0 <= own.o <= 1:
        return False
    idx = _port_index(cfg)
    info = dict(cfg.ports)
    if own.matched:
        p = own.matched - 1
        if p not in idx or not info[p].constrained:
            return False
        nb = nbrs[idx[p]]
        if nb is None or nb.matched != info[p].remote_port + 1:
            return False
    if own.active:
        for p, pi in cfg.ports:
            if not pi.constrained:
                continue
            nb = nbrs[idx[p]]
            if nb is None:
                return False
            if own.o < 1 and nb.o < 1:
                return False
    a_v = 2 * own.o
    b_v = 1 if own.matched else 0
    return cmp_check(cfg, own.cmp, _cmp_nbrs(own.cmp, nbrs),
                     a_v, b_v, own.cmp.root, require="==")


def prove_mvcb(g):
    import networkx as nx
    o = {v: _need_output(g.node_config(v)) for v in g.nodes}
    H = nx.Graph()
    H.add_nodes_from(g.nodes)
    H.add_edges_from((u, v) for (u, v, c) in g.edges() if c)
    M = nx.max_weight_matching(H, maxcardinality=True, weight=None)
    mate = {}
    for (u, v) in M:
        mate[u] = v
        mate[v] = u
    labels = {}
    for comp in components(g):
        a = {v: 2 * o[v] for v in comp}
        b = {v: 1 if v in mate else 0 for v in comp}
        cmp = cmp_prove(g, comp, comp[0], a, b)
        for v in comp:
            matched = g.port_of(v, mate[v]) + 1 if v in mate else 0
            labels[v] = MvcbLabel(g.prd(v) != TAUT, o[v], matched, cmp[v])
    return labels


# =======================================================================
# independent set, factor max-degree via a dominating witness set
# =======================================================================

class MaxisLabel(NamedTuple):
    active: bool
    o: int
    mis: int
    cmp: CmpFields


def encode_maxis(lab: MaxisLabel) -> str:
    w = BitWriter()
    w.raw("1" if lab.active else "0")
    w.uint(lab.o)
    w.raw("1" if lab.mis else "0")
    cmp_write(w, lab.cmp)
    return w.getvalue()


def parse_maxis(bits: str) -> MaxisLabel:
    r = BitReader(bits)
    active = r._take(1) == "1"
    o = r.uint()
    mis = 1 if r._take(1) == "1" else 0
    cmp = cmp_read(r)
    r.expect_done()
    return MaxisLabel(active, o, mis, cmp)


def check_maxis(cfg, own: MaxisLabel, nbrs, expected_o, expected_active):
    if own.active != expected_active or own.o != expected_o:
        return False
    if not 0 <= own.o <= 1:
        return False
    idx = _port_index(cfg)
    # relevance w.r.t. the instance: masked ports are not instance edges
    relevant = any(pi.constrained and nbrs[idx[p]] is not None
                   for p, pi in cfg.ports)
    # the witness set must touch every relevant node, active or not
    if relevant:
        hit = own.mis == 1
        for p, pi in cfg.ports:
            if pi.constrained and not hit:
                nb = nbrs[idx[p]]
                if nb is not None and nb.mis:
                    hit = True
        if not hit:
            return False
    elif own.mis:
        return False
    if own.active:
        if not relevant and own.o != 0:
            return False
        for p, pi in cfg.ports:
            if not pi.constrained:
                continue
            nb = nbrs[idx[p]]
            if nb is None:
                return False
            if own.o + nb.o > 1:
                return False
            if own.mis and nb.mis:
                return False
    a_v = cfg.weight * own.o
    b_v = cfg.weight * own.mis
    return cmp_check(cfg, own.cmp, _cmp_nbrs(own.cmp, nbrs),
                     a_v, b_v, own.cmp.root)


def prove_maxis(g):
    o = {v: _need_output(g.node_config(v)) for v in g.nodes}
    # greedy maximal independent set among nodes touching constrained edges
    relevant = {v for v in g.nodes
                if any(pi.constrained for _, pi in g.node_config(v).ports)}
    mis = set()
    for v in sorted(relevant):
        if not any(u in mis and g.edge_constrained(v, g.port_of(v, u))
                   for u in g.neighbors(v)):
            mis.add(v)
    labels = {}
    for comp in components(g):
        a = {v: g.weight(v) * o[v] for v in comp}
        b = {v: g.weight(v) * (1 if v in mis else 0) for v in comp}
        cmp = cmp_prove(g, comp, comp[0], a, b)
        for v in comp:
            labels[v] = MaxisLabel(g.prd(v) != TAUT, o[v],
                                   1 if v in mis else 0, cmp[v])
    return labels


# =======================================================================
# independent set on bipartite graphs, exact via an edge-cover equality
# =======================================================================

class MaxisbLabel(NamedTuple):
    active: bool
    o: int
    chosen: dict             # port -> 1 for edge-cover edges
    cmp: CmpFields


def encode_maxisb(lab: MaxisbLabel) -> str:
    w = BitWriter()
    w.raw("1" if lab.active else "0")
    w.uint(lab.o)
    _write_portmap(w, lab.chosen)
    cmp_write(w, lab.cmp)
    return w.getvalue()


def parse_maxisb(bits: str) -> MaxisbLabel:
    r = BitReader(bits)
    active = r._take(1) == "1"
    o = r.uint()
    chosen = _read_portmap(r)
    cmp = cmp_read(r)
    r.expect_done()
    return MaxisbLabel(active, o, chosen, cmp)


def check_maxisb(cfg, own: MaxisbLabel, nbrs, expected_o, expected_active):
    if own.active != expected_active or own.o != expected_o:
        return False
    if not 0 <= own.o <= 1:
        return False
    idx = _port_index(cfg)
    info = dict(cfg.ports)
    relevant = any(pi.constrained and nbrs[idx[p]] is not None
                   for p, pi in cfg.ports)
    for p, flag in own.chosen.items():
        if flag != 1 or p not in idx or not info[p].constrained:
            return False
        nb = nbrs[idx[p]]
        if nb is None or nb.chosen.get(info[p].remote_port) != 1:
            return False
    if relevant and not own.chosen:
        return False
    if own.active:
        if not relevant and own.o != 0:
            return False
        for p, pi in cfg.ports:
            if not pi.constrained:
                continue
            nb = nbrs[idx[p]]
            if nb is None:
                return False
            if own.o + nb.o > 1:
                return False
    a_v = 2 * own.o
    b_v = len(own.chosen)
    return cmp_check(cfg, own.cmp, _cmp_nbrs(own.cmp, nbrs),
                     a_v, b_v, own.cmp.root, require="==")


def prove_maxisb(g):
    import networkx as nx
    o = {v: _need_output(g.node_config(v)) for v in g.nodes}
    relevant = {v for v in g.nodes
                if any(pi.constrained for _, pi in g.node_config(v).ports)}
    H = nx.Graph()
    H.add_nodes_from(relevant)
    H.add_edges_from((u, v) for (u, v, c) in g.edges() if c)
    cover = set()
    mate = {}
    for (u, v) in nx.max_weight_matching(H, maxcardinality=True, weight=None):
        cover.add(frozenset((u, v)))
        mate[u] = v
        mate[v] = u
    for v in sorted(relevant):
        if v not in mate:
            u = next(g.neighbor_at(v, p) for p, pi in g.node_config(v).ports
                     if pi.constrained)
            cover.add(frozenset((v, u)))
    labels = {}
    for comp in components(g):
        a = {v: 2 * o[v] for v in comp}
        b = {}
        chosen_by = {}
        for v in comp:
            ch = {}
            for p, _ in g.node_config(v).ports:
                if frozenset((v, g.neighbor_at(v, p))) in cover:
                    ch[p] = 1
            chosen_by[v] = ch
            b[v] = len(ch)
        cmp = cmp_prove(g, comp, comp[0], a, b)
        for v in comp:
            labels[v] = MaxisbLabel(g.prd(v) != TAUT, o[v],
                                    chosen_by[v], cmp[v])
    return labels


# =======================================================================
# weighted dominating set, harmonic factor via greedy dual prices
# =======================================================================

class MwdsLabel(NamedTuple):
    active: bool
    cm: bool                 # node-constrained flag, echoed for neighbors
    o: int
    yhat: int                # floor(price * MWDS_SCALE)
    cmp: CmpFields


def encode_mwds(lab: MwdsLabel) -> str:
    w = BitWriter()
    w.raw("1" if lab.active else "0")
    w.raw("1" if lab.cm else "0")
    w.uint(lab.o)
    w.uint(lab.yhat)
    cmp_write(w, lab.cmp)
    return w.getvalue()


def parse_mwds(bits: str) -> MwdsLabel:
    r = BitReader(bits)
    active = r._take(1) == "1"
    cm = r._take(1) == "1"
    o = r.uint()
    yhat = r.uint()
    cmp = cmp_read(r)
    r.expect_done()
    return MwdsLabel(active, cm, o, yhat, cmp)


def harmonic(n) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, max(1, n) + 1)),
               Fraction(0))


def check_mwds(cfg, own: MwdsLabel, nbrs, expected_o, expected_active, n):
    if own.active != expected_active or own.o != expected_o:
        return False
    if not 0 <= own.o <= 1:
        return False
    if own.cm != cfg.constrained:
        return False
    if own.yhat and not cfg.constrained:
        return False
    idx = _port_index(cfg)
    if own.active and cfg.constrained:
        if own.o < 1:
            dominated = False
            for p, _ in cfg.ports:
                nb = nbrs[idx[p]]
                if nb is not None and nb.o >= 1:
                    dominated = True
            if not dominated:
                return False
    H = harmonic(n)
    load = own.yhat if cfg.constrained else 0
    for p, _ in cfg.ports:
        nb = nbrs[idx[p]]
        if nb is not None and nb.cm:
            load += nb.yhat
    if H.denominator * load > H.numerator * MWDS_SCALE * cfg.weight:
        return False
    a_v = own.yhat
    b_v = MWDS_SCALE * cfg.weight * own.o - 1
    return cmp_check(cfg, own.cmp, _cmp_nbrs(own.cmp, nbrs),
                     a_v, b_v, own.cmp.root)


def prove_mwds(g):
    o = {v: _need_output(g.node_config(v)) for v in g.nodes}
    labels = {}
    for comp in components(g):
        elems = {v for v in comp if g.node_constrained(v)}
        price = {v: Fraction(0) for v in comp}
        uncovered = set(elems)
        while uncovered:
            # classic greedy: cheapest cost per newly dominated element
            best = None
            for u in comp:
                newly = ({u} | set(g.neighbors(u))) & uncovered
                if not newly:
                    continue
                ratio = Fraction(g.weight(u), len(newly))
                if best is None or ratio < best[0]:
                    best = (ratio, u, newly)
            ratio, u, newly = best
            for v in newly:
                price[v] = ratio
            uncovered -= newly
        a = {v: int(price[v] * MWDS_SCALE) for v in comp}
        b = {v: MWDS_SCALE * g.weight(v) * o[v] - 1 for v in comp}
        cmp = cmp_prove(g, comp, comp[0], a, b)
        for v in comp:
            labels[v] = MwdsLabel(g.prd(v) != TAUT, g.node_constrained(v),
                                  o[v], a[v], cmp[v])
    return labels


# =======================================================================
# forests: root/parent/depth certificate
# =======================================================================

class ForestLabel(NamedTuple):
    root: int
    parent: int              # 0 = root, else port+1
    dist: int


def encode_forest(lab: ForestLabel) -> str:
    w = BitWriter()
    w.uint(lab.root)
    w.uint(lab.parent)
    w.uint(lab.dist)
    return w.getvalue()


def parse_forest(bits: str) -> ForestLabel:
    r = BitReader(bits)
    lab = ForestLabel(r.uint(), r.uint(), r.uint())
    r.expect_done()
    return lab


def check_forest(cfg, own: ForestLabel, nbrs):
    idx = _port_index(cfg)
    live = [(p, pi) for p, pi in cfg.ports if nbrs[idx[p]] is not None]
    smaller = []
    for p, pi in live:
        nb = nbrs[idx[p]]
        if nb.root != own.root:
            return False
        if abs(nb.dist - own.dist) != 1:
            return False
        if nb.dist == own.dist - 1:
            smaller.append(p)
    if own.parent == 0:
        # root: must be the designated node, at depth 0, with no way up
        return own.dist == 0 and own.root == cfg.id and not smaller
    p = own.parent - 1
    return smaller == [p]


def prove_forest(g, restrict=None):
    """restrict: optional set of edges (frozensets) forming the forest."""
    labels = {}
    allow = (lambda u, v: True) if restrict is None else \
        (lambda u, v: frozenset((u, v)) in restrict)
    seen = set()
    for s in g.nodes:
        if s in seen:
            continue
        # BFS the tree containing s (graph must be a forest on the
        # allowed edges for the labels to verify)
        comp = [s]
        seen.add(s)
        parent = {s: 0}
        dist = {s: 0}
        i = 0
        while i < len(comp):
            v = comp[i]
            for p, _ in g.node_config(v).ports:
                u = g.neighbor_at(v, p)
                if allow(v, u) and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    parent[u] = g.port_of(u, v) + 1
                    dist[u] = dist[v] + 1
            i += 1
        root = min(comp)
        if root != s:
            # restart rooted at the smallest id for determinism
            for v in comp:
                seen.discard(v)
            seen.add(root)
            comp2 = [root]
            parent = {root: 0}
            dist = {root: 0}
            i = 0
            while i < len(comp2):
                v = comp2[i]
                for p, _ in g.node_config(v).ports:
                    u = g.neighbor_at(v, p)
                    if allow(v, u) and u not in seen:
                        seen.add(u)
                        comp2.append(u)
                        parent[u] = g.port_of(u, v) + 1
                        dist[u] = dist[v] + 1
                i += 1
            comp = comp2
        for v in comp:
            labels[v] = ForestLabel(root, parent[v], dist[v])
    return labels


# =======================================================================
# DAGs: strictly increasing levels
# =======================================================================

class DagLabel(NamedTuple):
    level: int


def encode_dag(lab: DagLabel) -> str:
    w = BitWriter()
    w.uint(lab.level)
    return w.getvalue()


def parse_dag(bits: str) -> DagLabel:
    r = BitReader(bits)
    lab = DagLabel(r.uint())
    r.expect_done()
    return lab


def check_dag(cfg, own: DagLabel, nbrs):
    idx = _port_index(cfg)
    for p, pi in cfg.ports:
        nb = nbrs[idx[p]]
        if nb is None:
            continue
        if pi.direction == 1 and nb.level <= own.level:
            return False
        if pi.direction == -1 and nb.level >= own.level:
            return False
    return True


def prove_dag(g):
    # longest-path levels via repeated relaxation (graphs are small)
    level = {v: 0 for v in g.nodes}
    for _ in range(g.n):
        changed = False
        for v in g.nodes:
            for p, pi in g.node_config(v).ports:
                if pi.direction == 1:
                    u = g.neighbor_at(v, p)
                    if level[u] <= level[v]:
                        level[u] = level[v] + 1
                        changed = True
        if not changed:
            break
    else:
        raise ValueError("graph has a directed cycle")
    return {v: DagLabel(level[v]) for v in g.nodes}


# =======================================================================
# proper k-colorings
# =======================================================================

class ColorLabel(NamedTuple):
    color: int               # 0-based


def encode_color(lab: ColorLabel) -> str:
    w = BitWriter()
    w.uint(lab.color)
    return w.getvalue()


def parse_color(bits: str) -> ColorLabel:
    r = BitReader(bits)
    lab = ColorLabel(r.uint())
    r.expect_done()
    return lab


def check_color(cfg, own: ColorLabel, nbrs, k):
    if not 0 <= own.color < k:
        return False
    return all(nb is None or nb.color != own.color for nb in nbrs)


def find_kcoloring(g, k):
    nodes = sorted(g.nodes, key=lambda v: -g.degree(v))
    color = {}

    def rec(i):
        if i == len(nodes):
            return True
        v = nodes[i]
        used = {color[u] for u in g.neighbors(v) if u in color}
        for c in range(1 if i == 0 else k):
            if c not in used:
                color[v] = c
                if rec(i + 1):
                    return True
                del color[v]
        return False

    if not rec(0):
        raise ValueError(f"graph is not {k}-colorable")
    return color


def prove_kcolor(g, k):
    color = find_kcoloring(g, k)
    return {v: ColorLabel(color[v]) for v in g.nodes}


# =======================================================================
# arboricity c: per-edge part numbers plus one forest certificate per part
# =======================================================================

class ArbLabel(NamedTuple):
    parts: dict              # port -> part in 1..c
    forests: tuple           # c ForestLabel entries


def encode_arb(lab: ArbLabel) -> str:
    w = BitWriter()
    _write_portmap(w, lab.parts)
    for f in lab.forests:
        w.uint(f.root)
        w.uint(f.parent)
        w.uint(f.dist)
    return w.getvalue()


def parse_arb(bits: str, c: int) -> ArbLabel:
    r = BitReader(bits)
    parts = _read_portmap(r)
    forests = tuple(ForestLabel(r.uint(), r.uint(), r.uint())
                    for _ in range(c))
    r.expect_done()
    return ArbLabel(parts, forests)


def check_arb(cfg, own: ArbLabel, nbrs, c):
    idx = _port_index(cfg)
    info = dict(cfg.ports)
    live = [p for p, _ in cfg.ports if nbrs[idx[p]] is not None]
    for p in live:
        part = own.parts.get(p)
        nb = nbrs[idx[p]]
        if part is None or not 1 <= part <= c:
            return False
        if nb.parts.get(info[p].remote_port) != part:
            return False
    for i in range(c):
        f = own.forests[i]
        mine = [p for p in live if own.parts.get(p) == i + 1]
        smaller = []
        for p in mine:
            nf = nbrs[idx[p]].forests[i]
            if nf.root != f.root or abs(nf.dist - f.dist) != 1:
                return False
            if nf.dist == f.dist - 1:
                smaller.append(p)
        if f.parent == 0:
            if f.dist != 0 or f.root != cfg.id or smaller:
                return False
        elif smaller != [f.parent - 1]:
            return False
    return True


def edge_partition(g, c):
    """Split the edges into c forests; uses generator hints in node data
    when present, otherwise backtracks."""
    hints = {}
    for v in g.nodes:
        d = g.data(v)
        if isinstance(d, dict) and "arb" in d:
            for port, part in d["arb"]:
                try:
                    u = g.neighbor_at(v, int(port))
                except KeyError:
                    continue      # edge projected away by a sub-instance
                hints[frozenset((v, u))] = int(part)
    edges = [frozenset((u, v)) for (u, v, _) in g.edges()]
    if hints and all(e in hints for e in edges):
        part = {e: hints[e] for e in edges}
        if _parts_are_forests(g, part, c):
            return part
    # backtracking with union-find per part
    parent = [{v: v for v in g.nodes} for _ in range(c)]

    def find(i, x):
        while parent[i][x] != x:
            parent[i][x] = parent[i][parent[i][x]]
            x = parent[i][x]
        return x

    part = {}
    edges_l = sorted((tuple(sorted(e)) for e in edges))

    def rec(j):
        if j == len(edges_l):
            return True
        u, v = edges_l[j]
        for i in range(c):
            ru, rv = find(i, u), find(i, v)
            if ru == rv:
                continue
            parent[i][ru] = rv
            part[frozenset((u, v))] = i + 1
            if rec(j + 1):
                return True
            del part[frozenset((u, v))]
            parent[i] = {x: x for x in g.nodes}
            for e2, pe in part.items():
                if pe == i + 1:
                    a, b = tuple(e2)
                    ra, rb = find(i, a), find(i, b)
                    parent[i][ra] = rb
        return False

    if not rec(0):
        raise ValueError(f"edges do not split into {c} forests")
    return part


def _parts_are_forests(g, part, c):
    for i in range(1, c + 1):
        par = {v: v for v in g.nodes}

        def find(x):
            while par[x] != x:
                par[x] = par[par[x]]
                x = par[x]
            return x

        for e, pe in part.items():
            if pe != i:
                continue
            u, v = tuple(e)
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            par[ru] = rv
    return True


def prove_arb(g, c):
    part = edge_partition(g, c)
    per_part = []
    for i in range(1, c + 1):
        keep = {e for e, pe in part.items() if pe == i}
        per_part.append(prove_forest(g, restrict=keep))
    labels = {}
    for v in g.nodes:
        parts = {}
        for p, _ in g.node_config(v).ports:
            parts[p] = part[frozenset((v, g.neighbor_at(v, p)))]
        labels[v] = ArbLabel(parts, tuple(per_part[i][v] for i in range(c)))
    return labels


# =======================================================================
# the universal scheme: ship the whole configured graph in every label
# =======================================================================

def serialize_view(view, restrict=None) -> str:
    """Port-exact canonical text form, built through the public (and
    possibly locality-guarded) read API."""
    nodes = []
    for v in (view.nodes if restrict is None else sorted(restrict)):
        cfg = view.node_config(v)
        ports = []
        for p, pi in cfg.ports:
            ports.append([p, view.neighbor_at(v, p), pi.remote_port,
                          1 if pi.constrained else 0, pi.direction])
        nodes.append({"id": v, "weight": cfg.weight, "data": cfg.data,
                      "prd": cfg.prd, "output": cfg.output,
                      "constrained": bool(cfg.constrained), "ports": ports})
    return json.dumps({"directed": bool(view.directed), "nodes": nodes},
                      sort_keys=True, separators=(",", ":"))


_portspec_cache = {}


def graph_from_portspec(text) -> ConfiguredGraph:
    # verifiers re-parse the same copy at every node; cache good parses
    hit = _portspec_cache.get(text)
    if hit is not None:
        return hit
    obj = json.loads(text)
    g = ConfiguredGraph.__new__(ConfiguredGraph)
    g.directed = bool(obj["directed"])
    recs = obj["nodes"]
    ids = [r["id"] for r in recs]
    if len(set(ids)) != len(ids):
        raise DecodeError("duplicate ids in graph copy")
    g._nodes = tuple(sorted(ids))
    g._index = set(g._nodes)
    g._weight, g._data, g._prd = {}, {}, {}
    g._output, g._nconstr = {}, {}
    g._adj = {v: {} for v in g._nodes}
    g._pinfo = {v: {} for v in g._nodes}
    for r in recs:
        v = r["id"]
        g._weight[v] = int(r["weight"])
        g._data[v] = r["data"]
        g._prd[v] = r["prd"]
        g._output[v] = r["output"]
        g._nconstr[v] = bool(r["constrained"])
        for (p, u, rp, c, d) in r["ports"]:
            if u not in g._index or u == v or p in g._adj[v]:
                raise DecodeError("bad port table in graph copy")
            g._adj[v][p] = u
            g._pinfo[v][p] = PortInfo(rp, bool(c), d)
    edges = []
    for v in g._nodes:
        for p, u in g._adj[v].items():
            pi = g._pinfo[v][p]
            if g._adj.get(u, {}).get(pi.remote_port) != v:
                raise DecodeError("asymmetric port table in graph copy")
            rpi = g._pinfo[u][pi.remote_port]
            if rpi.remote_port != p or rpi.constrained != pi.constrained \
                    or rpi.direction != -pi.direction:
                raise DecodeError("inconsistent port metadata in copy")
            if v < u:
                edges.append((v, u, pi.constrained))
    g._edges = edges
    if len(_portspec_cache) > 256:
        _portspec_cache.clear()
    _portspec_cache[text] = g
    return g


class UniLabel(NamedTuple):
    id: int
    serial: str              # the canonical text, carried as raw bytes


def encode_uni(lab: UniLabel) -> str:
    w = BitWriter()
    w.uint(lab.id)
    data = lab.serial.encode()
    w.field("".join(f"{b:08b}" for b in data))
    return w.getvalue()


def parse_uni(bits: str) -> UniLabel:
    r = BitReader(bits)
    ident = r.uint()
    payload = r.field()
    r.expect_done()
    if len(payload) % 8:
        raise DecodeError("graph copy not byte aligned")
    try:
        nbytes = len(payload) // 8
        text = int(payload, 2).to_bytes(nbytes, "big").decode() \
            if nbytes else ""
    except (ValueError, UnicodeDecodeError):
        raise DecodeError("graph copy is not text")
    return UniLabel(ident, text)


def check_uni(cfg, own: UniLabel, nbrs, decision):
    if own.id != cfg.id:
        return False
    try:
        h = graph_from_portspec(own.serial)
    except (ValueError, KeyError, TypeError, json.JSONDecodeError):
        return False
    if not h.has_node(cfg.id):
        return False
    hc = h.node_config(cfg.id)
    if (hc.weight, hc.data, hc.prd, hc.output, hc.constrained, hc.ports) != \
            (cfg.weight, cfg.data, cfg.prd, cfg.output, cfg.constrained,
             cfg.ports):
        return False
    idx = _port_index(cfg)
    for p, _ in cfg.ports:
        nb = nbrs[idx[p]]
        if nb is None:
            return False
        if nb.serial != own.serial or nb.id != h.neighbor_at(cfg.id, p):
            return False
    return bool(decision(h))


def prove_uni(view):
    # each label ships a copy of its own component (the families served
    # here are all closed under disjoint union, so that is enough)
    labels = {}
    serial_of = {}
    for v in view.nodes:
        if v in serial_of:
            labels[v] = UniLabel(v, serial_of[v])
            continue
        with (view.focus(v) if isinstance(view, GuardedGraph)
              else nullcontext()):
            comp = [v]
            seen = {v}
            i = 0
            while i < len(comp):
                for u in view.neighbors(comp[i]):
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                i += 1
            s = serialize_view(view, comp)
        for u in comp:
            serial_of[u] = s
        labels[v] = UniLabel(v, s)
    return labels


# =======================================================================
# bundles the compilers plug in
# =======================================================================

class OptBase(NamedTuple):
    """An approximation scheme usable on (possibly masked) instances."""
    name: str
    prove: callable              # instance graph -> {node: bits}
    parse: callable              # bits -> struct
    check: callable              # (cfg, own, nbrs, expected_o, expected_active)


class FamilyBase(NamedTuple):
    """A membership scheme usable on (possibly masked) instances."""
    name: str
    prove: callable              # instance graph -> {node: bits}
    parse: callable              # bits -> struct
    check: callable              # (cfg, own, nbrs) -> bool


def _componentwise(prove, g):
    """Run a whole-graph prover one component at a time.

    Under a locality guard each component is explored from its smallest
    node, so every read is distance-checked against the budget; the
    prover then works on the (plain) induced copy of that component.
    """
    if not isinstance(g, GuardedGraph):
        return prove(g)
    labels = {}
    seen = set()
    for s in g.nodes:
        if s in seen:
            continue
        with g.focus(s):
            comp = [s]
            seen.add(s)
            i = 0
            while i < len(comp):
                for u in g.neighbors(comp[i]):
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                i += 1
            sub = g.induced_subgraph(sorted(comp))
        labels.update(prove(sub))
    return labels


def _enc(prove, encode):
    return lambda g: {v: encode(lab)
                      for v, lab in _componentwise(prove, g).items()}


def mwvc_base() -> OptBase:
    return OptBase("mwvc", _enc(prove_mwvc, encode_mwvc),
                   parse_mwvc, check_mwvc)


def mvcb_base() -> OptBase:
    return OptBase("mvc-bipartite", _enc(prove_mvcb, encode_mvcb),
                   parse_mvcb, check_mvcb)


def maxis_base() -> OptBase:
    return OptBase("maxis", _enc(prove_maxis, encode_maxis),
                   parse_maxis, check_maxis)


def maxisb_base() -> OptBase:
    return OptBase("maxis-bipartite", _enc(prove_maxisb, encode_maxisb),
                   parse_maxisb, check_maxisb)


def mwds_base(n: int) -> OptBase:
    # the harmonic bound needs the node count; it is global knowledge
    def check(cfg, own, nbrs, expected_o, expected_active):
        return check_mwds(cfg, own, nbrs, expected_o, expected_active, n)
    return OptBase("mwds", _enc(prove_mwds, encode_mwds), parse_mwds, check)


def forest_base() -> FamilyBase:
    return FamilyBase("forest", _enc(prove_forest, encode_forest),
                      parse_forest, check_forest)


def dag_base() -> FamilyBase:
    return FamilyBase("dag", _enc(prove_dag, encode_dag),
                      parse_dag, check_dag)


def kcolor_base(k: int) -> FamilyBase:
    return FamilyBase(f"{k}color",
                      _enc(lambda g: prove_kcolor(g, k), encode_color),
                      parse_color,
                      lambda cfg, own, nbrs: check_color(cfg, own, nbrs, k))


def arb_base(c: int) -> FamilyBase:
    return FamilyBase(f"arboricity-{c}",
                      _enc(lambda g: prove_arb(g, c), encode_arb),
                      lambda bits: parse_arb(bits, c),
                      lambda cfg, own, nbrs: check_arb(cfg, own, nbrs, c))


def uni_base(decision, name="universal") -> FamilyBase:
    # prove_uni manages its own focus windows; no componentwise wrapper
    prove = lambda g: {v: encode_uni(lab) for v, lab in prove_uni(g).items()}
    return FamilyBase(name, prove, parse_uni,
                      lambda cfg, own, nbrs: check_uni(cfg, own, nbrs,
                                                       decision))
