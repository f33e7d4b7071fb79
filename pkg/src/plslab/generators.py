"""Instance generators for the harness and the CLI.

All generators are deterministic given their seed.  Optimization
instances mark every edge constrained; "yes" instances come with an
optimal output attached, built as a disjoint union of small components
that the brute-force oracle can solve exactly (the optimum of a disjoint
union is the union of the optima).
"""

import random
import zlib

from .graph import ConfiguredGraph
from .oracles import brute_opt
from .problems import (arboricity_family, dag_family, forest_family,
                       kcolor_family)

GADGET_CAP = 10          # component size in planted yes-instances


def _rng(*key):
    # hash() is randomized per process; crc32 of the repr is stable
    return random.Random(zlib.crc32(repr(key).encode()))


def _configured(n, edges, *, weight=None, directed=False, output=None,
                data=None, node_constrained=None):
    return ConfiguredGraph(range(n), edges, directed=directed,
                           weight=weight, output=output, data=data,
                           node_constrained=node_constrained,
                           edge_constrained={frozenset(e) for e in edges})


def path(n):
    return _configured(n, [(v, v + 1) for v in range(n - 1)])


def cycle(n):
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return _configured(n, [(v, (v + 1) % n) for v in range(n)])


def star(n):
    return _configured(n, [(0, v) for v in range(1, n)])


def complete(n):
    return _configured(n, [(u, v) for u in range(n)
                           for v in range(u + 1, n)])


def _rand_weights(n, rng, lo=1, hi=8):
    return {v: rng.randint(lo, hi) for v in range(n)}


def gnp(n, p, seed=0, weighted=False):
    rng = _rng("gnp", n, seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    w = _rand_weights(n, rng) if weighted else None
    return _configured(n, edges, weight=w)


def random_tree(n, seed=0, weighted=False):
    rng = _rng("tree", n, seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    w = _rand_weights(n, rng) if weighted else None
    return _configured(n, edges, weight=w)


def bipartite(a, b, p, seed=0):
    rng = _rng("bip", a, b, seed)
    edges = [(u, a + v) for u in range(a) for v in range(b)
             if rng.random() < p]
    return _configured(a + b, edges)


def avg_degree_graph(n, avg_deg, seed=0):
    """G(n, p) with p chosen for the requested average degree."""
    return gnp(n, min(1.0, avg_deg / max(1, n - 1)), seed)


# --- planted yes-instances for the optimization schemes ---

def _gadget_edges(rng, size, bipartite_only):
    if bipartite_only:
        a = rng.randint(1, max(1, size - 1))
        edges = [(u, v) for u in range(a) for v in range(a, size)
                 if rng.random() < 0.6]
    else:
        edges = [(u, v) for u in range(size)
                 for v in range(u + 1, size) if rng.random() < 0.5]
    return edges


def yes_instance(problem, n, seed=0, *, weighted=True,
                 bipartite_only=False, comp_cap=GADGET_CAP):
    """A graph of ~n nodes with a provably optimal output attached.

    Disjoint small components, each solved exactly by the brute oracle.
    """
    rng = _rng("yes", problem.name, n, seed)
    if problem.mode == "max":
        weighted = False     # the degree-factor guarantee needs unit weights
    nodes, edges, weight, output = [], [], {}, {}
    off = 0
    while off < n:
        size = min(rng.randint(2, comp_cap), n - off)
        if size == 1:
            size = 2 if n - off >= 2 else 1
        comp = _gadget_edges(rng, size, bipartite_only)
        nconstr = set(range(size)) if problem.constrained_on == "nodes" else None
        g = ConfiguredGraph(
            range(size), comp,
            weight=_rand_weights(size, rng) if weighted else None,
            node_constrained=nconstr,
            edge_constrained={frozenset(e) for e in comp})
        _, o = brute_opt(problem, g)
        for v in range(size):
            nodes.append(off + v)
            weight[off + v] = g.weight(v)
            output[off + v] = o[v]
        edges += [(off + u, off + v) for (u, v) in comp]
        off += size
    return ConfiguredGraph(
        nodes, edges, weight=weight, output=output,
        node_constrained=(set(nodes) if problem.constrained_on == "nodes"
                          else None),
        edge_constrained={frozenset(e) for e in edges})


# --- family members for the membership schemes ---

def forest_member(n, seed=0):
    rng = _rng("forest", n, seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)
             if rng.random() < 0.8]      # drop some edges: several trees
    return ConfiguredGraph(range(n), edges)


def kcolor_member(n, k, seed=0):
    rng = _rng("kcolor", n, k, seed)
    color = {v: rng.randrange(k) for v in range(n)}
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if color[u] != color[v] and rng.random() < min(1.0, 4 / n)]
    return ConfiguredGraph(range(n), edges)


def dag_member(n, seed=0):
    rng = _rng("dag", n, seed)
    perm = list(range(n))
    rng.shuffle(perm)
    rank = {v: i for i, v in enumerate(perm)}
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < min(1.0, 3 / n):
                edges.append((u, v) if rank[u] < rank[v] else (v, u))
    return ConfiguredGraph(range(n), edges, directed=True)


def arboricity_member(n, c, seed=0):
    """Union of c forests on the same node set, with the partition left
    as a per-node hint so the prover need not search for one."""
    rng = _rng("arb", n, c, seed)
    edges, part_of = [], {}
    present = set()
    for part in range(1, c + 1):
        for v in range(1, n):
            u = rng.randrange(v)
            if rng.random() < 0.7 and frozenset((u, v)) not in present:
                present.add(frozenset((u, v)))
                part_of[(u, v)] = part
                edges.append((u, v))
    g = ConfiguredGraph(range(n), edges)
    hints = {v: {"arb": []} for v in g.nodes}
    for (u, v), part in part_of.items():
        hints[u]["arb"].append([g.port_of(u, v), part])
        hints[v]["arb"].append([g.port_of(v, u), part])
    return g.replace(data=hints)


def family_member(name, n, seed=0):
    if name == "forest":
        return forest_member(n, seed)
    if name == "2color":
        return kcolor_member(n, 2, seed)
    if name.endswith("color"):
        return kcolor_member(n, int(name[:-5]), seed)
    if name.startswith("kcolor-"):
        return kcolor_member(n, int(name.split("-")[1]), seed)
    if name == "dag":
        return dag_member(n, seed)
    if name.startswith("arboricity-"):
        return arboricity_member(n, int(name.split("-")[1]), seed)
    raise ValueError(f"no member generator for family {name}")


FAMILIES = {
    "forest": forest_family,
    "2color": lambda: kcolor_family(2),
    "3color": lambda: kcolor_family(3),
    "dag": dag_family,
    "arboricity-2": lambda: arboricity_family(2),
}
