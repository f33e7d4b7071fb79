"""Configured graphs: ids, weights, ports, input fields, and locality guards.

A configured graph is an undirected (or edge-directed) graph where every
node carries a unique integer id, a positive integer weight, optional free
form `data`, a predicate tag `prd`, an optional output multiplicity, and a
port map numbering its incident edges.  Verifiers never see neighbor ids
directly -- ids travel in labels -- so the per-node view (`NodeConfig`)
exposes only local fields plus per-port metadata.
"""

import json
from collections import deque
from contextlib import contextmanager
from typing import NamedTuple, Optional, Tuple


class PortInfo(NamedTuple):
    remote_port: int          # the port number this edge has at the other end
    constrained: bool
    direction: int            # 0 undirected, +1 outgoing, -1 incoming


class NodeConfig(NamedTuple):
    """What a single node knows about itself: no neighbor ids here."""
    id: int
    weight: int
    data: object
    prd: object
    output: Optional[int]
    constrained: bool
    ports: Tuple[Tuple[int, PortInfo], ...]   # (local port, info), port-sorted

    @property
    def degree(self):
        return len(self.ports)


class LocalityViolation(Exception):
    def __init__(self, node, accessed, distance, budget):
        self.node, self.accessed = node, accessed
        self.distance, self.budget = distance, budget
        super().__init__(
            f"node {node} accessed node {accessed} at distance "
            f"{distance} (budget {budget})")


class ConfiguredGraph:
    """Immutable configured graph.  Ports are assigned in edge order."""

    def __init__(self, node_ids, edges, *, directed=False, weight=None,
                 data=None, prd=None, output=None, node_constrained=None,
                 edge_constrained=None):
        node_ids = list(node_ids)
        if len(set(node_ids)) != len(node_ids):
            raise ValueError("duplicate node ids")
        self.directed = bool(directed)
        self._nodes = tuple(sorted(node_ids))
        self._index = set(self._nodes)
        weight = weight or {}
        self._weight = {v: int(weight.get(v, 1)) for v in self._nodes}
        for v, w in self._weight.items():
            if w < 1:
                raise ValueError(f"weight of node {v} must be positive")
        data = data or {}
        prd = prd or {}
        output = output or {}
        node_constrained = node_constrained or set()
        self._data = {v: data.get(v) for v in self._nodes}
        self._prd = {v: prd.get(v) for v in self._nodes}
        self._output = {v: output.get(v) for v in self._nodes}
        self._nconstr = {v: v in node_constrained for v in self._nodes}

        econstr = set()
        for e in (edge_constrained or set()):
            econstr.add(frozenset(e))
        self._adj = {v: {} for v in self._nodes}       # port -> neighbor id
        self._pinfo = {v: {} for v in self._nodes}     # port -> PortInfo
        self._edges = []
        seen = set()
        for (u, v) in edges:
            if u not in self._index or v not in self._index:
                raise ValueError(f"edge ({u},{v}) has an unknown endpoint")
            if u == v:
                raise ValueError("self-loops are not supported")
            key = (u, v) if self.directed else frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add(key)
            pu, pv = len(self._adj[u]), len(self._adj[v])
            c = frozenset((u, v)) in econstr
            self._adj[u][pu] = v
            self._adj[v][pv] = u
            du = 1 if self.directed else 0
            self._pinfo[u][pu] = PortInfo(pv, c, du)
            self._pinfo[v][pv] = PortInfo(pu, c, -du)
            self._edges.append((u, v, c))

    # --- construction from explicit port maps (subgraph projection) ---
    @classmethod
    def _from_ports(cls, nodes, adj, pinfo, edges, template):
        g = cls.__new__(cls)
        g.directed = template.directed
        g._nodes = tuple(sorted(nodes))
        g._index = set(g._nodes)
        g._weight = {v: template._weight[v] for v in g._nodes}
        g._data = {v: template._data[v] for v in g._nodes}
        g._prd = {v: template._prd[v] for v in g._nodes}
        g._output = {v: template._output[v] for v in g._nodes}
        g._nconstr = {v: template._nconstr[v] for v in g._nodes}
        g._adj = adj
        g._pinfo = pinfo
        g._edges = edges
        return g

    # --- basic accessors ---
    @contextmanager
    def focus(self, v):
        # unguarded graphs accept the focus protocol as a no-op
        yield self

    @property
    def nodes(self):
        return self._nodes

    @property
    def n(self):
        return len(self._nodes)

    @property
    def m(self):
        return len(self._edges)

    def edges(self):
        """(u, v, constrained) triples in port-assignment order."""
        return list(self._edges)

    def has_node(self, v):
        return v in self._index

    def degree(self, v):
        return len(self._adj[v])

    def ports(self, v):
        return sorted(self._adj[v])

    def neighbor_at(self, v, port):
        return self._adj[v][port]

    def neighbors(self, v):
        return [self._adj[v][p] for p in sorted(self._adj[v])]

    def port_of(self, v, u):
        for p, w in self._adj[v].items():
            if w == u:
                return p
        raise KeyError(f"{u} is not a neighbor of {v}")

    def weight(self, v):
        return self._weight[v]

    def data(self, v):
        return self._data[v]

    def prd(self, v):
        return self._prd[v]

    def output(self, v):
        return self._output[v]

    def node_constrained(self, v):
        return self._nconstr[v]

    def edge_constrained(self, v, port):
        return self._pinfo[v][port].constrained

    def port_info(self, v, port):
        return self._pinfo[v][port]

    def node_config(self, v) -> NodeConfig:
        ports = tuple((p, self._pinfo[v][p]) for p in sorted(self._pinfo[v]))
        return NodeConfig(v, self._weight[v], self._data[v], self._prd[v],
                          self._output[v], self._nconstr[v], ports)

    # --- derived views ---
    def replace(self, *, output=None, prd=None, data=None, weight=None):
        """New graph with some per-node fields swapped out."""
        g = ConfiguredGraph.__new__(ConfiguredGraph)
        g.directed = self.directed
        g._nodes, g._index = self._nodes, self._index
        g._adj, g._pinfo, g._edges = self._adj, self._pinfo, self._edges
        g._nconstr = self._nconstr
        g._weight = dict(self._weight) if weight is None else \
            {v: int(weight.get(v, 1)) for v in self._nodes}
        g._data = dict(self._data) if data is None else \
            {v: data.get(v) for v in self._nodes}
        g._prd = dict(self._prd) if prd is None else \
            {v: prd.get(v) for v in self._nodes}
        g._output = dict(self._output) if output is None else \
            {v: output.get(v) for v in self._nodes}
        return g

    def distances_from(self, v, limit=None):
        """BFS hop distances (underlying undirected graph)."""
        dist = {v: 0}
        q = deque([v])
        while q:
            u = q.popleft()
            if limit is not None and dist[u] >= limit:
                continue
            for w in self._adj[u].values():
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def ball(self, v, r):
        if v not in self._index:
            raise KeyError(f"unknown node id {v}")
        return sorted(self.distances_from(v, limit=r))

    def induced_subgraph(self, U):
        """Projection onto U: same ids, weights, data, and port numbers."""
        U = set(U)
        bad = U - self._index
        if bad:
            raise KeyError(f"unknown node ids {sorted(bad)}")
        adj = {v: {} for v in U}
        pinfo = {v: {} for v in U}
        for v in U:
            for p, u in self._adj[v].items():
                if u in U:
                    adj[v][p] = u
                    pinfo[v][p] = self._pinfo[v][p]
        edges = [(u, v, c) for (u, v, c) in self._edges if u in U and v in U]
        return ConfiguredGraph._from_ports(U, adj, pinfo, edges, self)

    # --- serialization ---
    def to_json(self) -> str:
        """Canonical text form: sorted nodes, sorted edges, stable layout."""
        nodes = []
        for v in self._nodes:
            rec = {"id": v, "weight": self._weight[v]}
            if self._data[v] is not None:
                rec["data"] = self._data[v]
            if self._prd[v] is not None:
                rec["prd"] = self._prd[v]
            if self._output[v] is not None:
                rec["output"] = self._output[v]
            if self._nconstr[v]:
                rec["constrained"] = True
            nodes.append(rec)
        eset = []
        for (u, v, c) in self._edges:
            if self.directed:
                rec = {"u": u, "v": v}
            else:
                rec = {"u": min(u, v), "v": max(u, v)}
            if c:
                rec["constrained"] = True
            eset.append(rec)
        eset.sort(key=lambda r: (r["u"], r["v"]))
        obj = {"directed": self.directed, "nodes": nodes, "edges": eset}
        return json.dumps(obj, sort_keys=True, separators=(", ", ": "),
                          indent=1) + "\n"

    @classmethod
    def from_json(cls, text) -> "ConfiguredGraph":
        obj = json.loads(text)
        ids, weight, data, prd, output = [], {}, {}, {}, {}
        nconstr = set()
        for rec in obj["nodes"]:
            v = rec["id"]
            ids.append(v)
            weight[v] = rec.get("weight", 1)
            if "data" in rec:
                data[v] = rec["data"]
            if "prd" in rec:
                prd[v] = rec["prd"]
            if "output" in rec:
                output[v] = rec["output"]
            if rec.get("constrained"):
                nconstr.add(v)
        edges, econstr = [], set()
        for rec in obj["edges"]:
            u, v = rec["u"], rec["v"]
            edges.append((u, v))
            if rec.get("constrained"):
                econstr.add(frozenset((u, v)))
        return cls(ids, edges, directed=obj.get("directed", False),
                   weight=weight, data=data, prd=prd, output=output,
                   node_constrained=nconstr, edge_constrained=econstr)


# --- the §-free set operators every partition rule leans on ---

def inner(g, U):
    """Nodes of U whose whole neighborhood is inside U."""
    U = set(U)
    return sorted(v for v in U if all(u in U for u in g.neighbors(v)))


def inner2(g, U):
    return inner(g, inner(g, U))


def rim(g, U):
    i2 = set(inner2(g, U))
    return sorted(v for v in U if v not in i2)


def n2(g, U):
    """Nodes outside U at hop distance at most 2 from U (measured in g)."""
    U = set(U)
    one = set()
    for v in U:
        one.update(u for u in g.neighbors(v) if u not in U)
    two = set(one)
    for v in one:
        two.update(u for u in g.neighbors(v) if u not in U)
    return sorted(two)


class GuardedGraph:
    """Read-only facade that traps graph accesses outside a radius budget.

    While `focus(v)` is active, any read touching a node farther than
    `budget` hops from v raises LocalityViolation.  The global node count
    and the id ordering stay readable (both are global knowledge in the
    sequential model); everything structural is distance-checked.
    """

    def __init__(self, g: ConfiguredGraph, budget: int):
        self._g = g
        self.budget = budget
        self._focus = None
        self._dist = None       # lazily expanded BFS distances from focus
        self._frontier = None
        self.violations = []

    @property
    def n(self):
        return self._g.n

    @property
    def directed(self):
        return self._g.directed

    @property
    def nodes(self):
        return self._g.nodes   # ids only; structure reads are still checked

    @contextmanager
    def focus(self, v):
        prev = (self._focus, self._dist, self._frontier)
        self._focus = v
        self._dist = {v: 0}
        self._frontier = deque([v])
        try:
            yield self
        finally:
            self._focus, self._dist, self._frontier = prev

    def _distance(self, u):
        # expand the BFS from the focus node only as far as needed
        if u in self._dist:
            return self._dist[u]
        while self._frontier:
            x = self._frontier.popleft()
            for w in self._g._adj[x].values():
                if w not in self._dist:
                    self._dist[w] = self._dist[x] + 1
                    self._frontier.append(w)
            if u in self._dist:
                return self._dist[u]
        return None   # unreachable from focus

    def _check(self, u):
        if self._focus is None:
            raise RuntimeError("guarded access outside a focus() block")
        d = self._distance(u)
        if d is None or d > self.budget:
            err = LocalityViolation(self._focus, u,
                                    d if d is not None else float("inf"),
                                    self.budget)
            self.violations.append(err)
            raise err

    # checked mirrors of the read API
    def degree(self, v):
        self._check(v)
        return self._g.degree(v)

    def ports(self, v):
        self._check(v)
        return self._g.ports(v)

    def neighbors(self, v):
        self._check(v)
        return self._g.neighbors(v)

    def neighbor_at(self, v, port):
        self._check(v)
        return self._g.neighbor_at(v, port)

    def port_of(self, v, u):
        self._check(v)
        return self._g.port_of(v, u)

    def weight(self, v):
        self._check(v)
        return self._g.weight(v)

    def data(self, v):
        self._check(v)
        return self._g.data(v)

    def prd(self, v):
        self._check(v)
        return self._g.prd(v)

    def output(self, v):
        self._check(v)
        return self._g.output(v)

    def node_constrained(self, v):
        self._check(v)
        return self._g.node_constrained(v)

    def edge_constrained(self, v, port):
        self._check(v)
        return self._g.edge_constrained(v, port)

    def port_info(self, v, port):
        self._check(v)
        return self._g.port_info(v, port)

    def node_config(self, v):
        self._check(v)
        return self._g.node_config(v)

    def ball(self, v, r):
        out = self._g.ball(v, r)
        for u in out:
            self._check(u)
        return out

    def induced_subgraph(self, U):
        for u in U:
            self._check(u)
        return self._g.induced_subgraph(U)

    def distances_from(self, v, limit=None):
        dist = self._g.distances_from(v, limit=limit)
        for u in dist:
            self._check(u)
        return dist
