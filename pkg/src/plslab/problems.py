"""Problem descriptors: weighted multiplicity problems and graph families.

An OptProblem is a locally checkable weighted multiplicity problem: every
node gets an output multiplicity o(v) in {0..k}, legality is a per-node
predicate over o(v) and the neighbors' multiplicities, and the objective
is sum of w(v)*o(v).  Covering problems stay legal when multiplicities are
raised, packing problems when lowered.  A node whose prd tag is TAUT is
exempt from its predicate (used when projecting instances onto clusters:
border nodes keep their outputs but stop being checked).

A CgfFamily is a graph family closed under node-induced subgraphs and
disjoint unions, with an exact small-n membership oracle.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

TAUT = "taut"


def is_taut(cfg):
    return cfg.prd == TAUT


@dataclass(frozen=True)
class OptProblem:
    name: str
    mode: str                       # "min" (covering) or "max" (packing)
    k: int                          # multiplicity bound
    predicate: Callable             # (NodeConfig, o_v, [o_u by port]) -> bool
    relevant: Callable              # (NodeConfig) -> bool: may o(v) be > 0?
    constrained_on: str             # "edges" or "nodes"

    def objective(self, g, o):
        missing = [v for v in g.nodes if o.get(v) is None]
        if missing:
            raise ValueError(f"output missing at nodes {missing}")
        return sum(g.weight(v) * o[v] for v in g.nodes)

    def legal_at(self, g, o, v):
        cfg = g.node_config(v)
        nbr = [o[g.neighbor_at(v, p)] for p, _ in cfg.ports]
        return self.predicate(cfg, o[v], nbr)

    def legal(self, g, o):
        return all(self.legal_at(g, o, v) for v in g.nodes)


def _mwvc_pred(cfg, o_v, nbr_o):
    if not (0 <= o_v <= 1):
        return False
    if is_taut(cfg):
        return True
    for (p, info), o_u in zip(cfg.ports, nbr_o):
        if info.constrained and o_v < 1 and o_u < 1:
            return False
    return True


def _maxis_pred(cfg, o_v, nbr_o):
    if not (0 <= o_v <= 1):
        return False
    if is_taut(cfg):
        return True
    touches = any(info.constrained for _, info in cfg.ports)
    if not touches:
        return o_v == 0       # only nodes touching a constrained edge count
    for (p, info), o_u in zip(cfg.ports, nbr_o):
        if info.constrained and o_v + o_u > 1:
            return False
    return True


def _mwds_pred(cfg, o_v, nbr_o):
    if not (0 <= o_v <= 1):
        return False
    if is_taut(cfg):
        return True
    if cfg.constrained and o_v < 1 and all(o_u < 1 for o_u in nbr_o):
        return False
    return True


def mwvc_problem() -> OptProblem:
    """Minimum weight vertex cover of the constrained edges."""
    return OptProblem("mwvc", "min", 1, _mwvc_pred,
                      lambda cfg: True, "edges")


def maxis_problem() -> OptProblem:
    """Maximum weight independent set w.r.t. the constrained edges."""
    return OptProblem("maxis", "max", 1, _maxis_pred,
                      lambda cfg: any(i.constrained for _, i in cfg.ports),
                      "edges")


def mwds_problem() -> OptProblem:
    """Minimum weight set dominating every constrained node."""
    return OptProblem("mwds", "min", 1, _mwds_pred,
                      lambda cfg: True, "nodes")


# --- graph families (all closed under induced subgraphs + disjoint union) ---

def is_forest(g) -> bool:
    parent = {v: v for v in g.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v, _) in g.edges():
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_kcolorable(g, k) -> bool:
    if k >= g.n:
        return True
    if k == 2:
        # bipartiteness by BFS 2-coloring
        color = {}
        for s in g.nodes:
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in g.neighbors(v):
                    if u not in color:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        return False
        return True
    # small-n backtracking
    nodes = sorted(g.nodes, key=lambda v: -g.degree(v))
    color = {}

    def rec(i):
        if i == len(nodes):
            return True
        v = nodes[i]
        used = {color[u] for u in g.neighbors(v) if u in color}
        limit = 1 if i == 0 else k    # first node's color is wlog
        for c in range(limit):
            if c not in used:
                color[v] = c
                if rec(i + 1):
                    return True
                del color[v]
        return False

    return rec(0)


def is_dag(g) -> bool:
    if not g.directed:
        return g.m == 0
    indeg = {v: 0 for v in g.nodes}
    out = {v: [] for v in g.nodes}
    for v in g.nodes:
        for p, info in g.node_config(v).ports:
            if info.direction == 1:
                u = g.neighbor_at(v, p)
                out[v].append(u)
                indeg[u] += 1
    work = [v for v in g.nodes if indeg[v] == 0]
    seen = 0
    while work:
        v = work.pop()
        seen += 1
        for u in out[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                work.append(u)
    return seen == g.n


def arboricity_at_most(g, c) -> bool:
    """Edge set splits into <= c forests (density bound over subgraphs)."""
    if g.m == 0:
        return True
    if not _density_ok(g, c):
        return False
    # the density bound is exact (Nash-Williams); no search needed
    return True


def _density_ok(g, c):
    # max over node subsets with >= 2 nodes of ceil(m'/(n'-1)) <= c
    nodes = list(g.nodes)
    n = len(nodes)
    if n > 16:
        raise ValueError("arboricity oracle capped at n <= 16")
    edges = [(u, v) for (u, v, _) in g.edges()]
    for mask in range(1, 1 << n):
        sub = [nodes[i] for i in range(n) if mask >> i & 1]
        if len(sub) < 2:
            continue
        s = set(sub)
        m2 = sum(1 for (u, v) in edges if u in s and v in s)
        if m2 > c * (len(sub) - 1):
            return False
    return True


@dataclass(frozen=True)
class CgfFamily:
    name: str
    member: Callable                 # graph -> bool, exact at small n
    directed: bool = False
    member_cap: Optional[int] = None  # n beyond which `member` is too slow


def forest_family() -> CgfFamily:
    return CgfFamily("forest", is_forest)


def kcolor_family(k) -> CgfFamily:
    return CgfFamily(f"{k}color", lambda g: is_kcolorable(g, k),
                     member_cap=None if k == 2 else 20)


def dag_family() -> CgfFamily:
    return CgfFamily("dag", is_dag, directed=True)


def arboricity_family(c) -> CgfFamily:
    return CgfFamily(f"arboricity-{c}",
                     lambda g: arboricity_at_most(g, c), member_cap=16)


def to_networkx(g):
    import networkx as nx
    h = nx.DiGraph() if g.directed else nx.Graph()
    h.add_nodes_from(g.nodes)
    for (u, v, _) in g.edges():
        h.add_edge(u, v)
    return h


def is_planar(g) -> bool:
    import networkx as nx
    h = to_networkx(g)
    return nx.check_planarity(h.to_undirected() if g.directed else h)[0]


def planar_family() -> CgfFamily:
    # membership oracle only; no base certification scheme ships for it
    return CgfFamily("planar", is_planar)
