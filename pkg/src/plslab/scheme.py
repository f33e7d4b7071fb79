"""Scheme framework: label assignments, verifier runs, instrumented provers,
and a sequential local-computation engine.

A scheme pair bundles a prover (whole-graph function producing one bit
string per node) with a per-node verifier.  The verifier for node v sees
only v's own configuration, v's label, and the labels of v's neighbors in
port order -- never the neighbors' ids or configurations.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

from .bits import DecodeError, from_hex, to_hex
from .graph import ConfiguredGraph, GuardedGraph

# Budget for "locally restricted" prover runs: C * ceil(log2 n)^c bits of
# radius.  The constant and exponent were fixed empirically and are the
# defaults everywhere.
LOCALITY_CONSTANT = 4
LOCALITY_EXPONENT = 2


def default_budget(n, c=LOCALITY_EXPONENT, const=LOCALITY_CONSTANT):
    return max(1, const * math.ceil(math.log2(max(2, n))) ** c)


class Verdict(NamedTuple):
    accept: bool
    rejecting: tuple     # sorted node ids where the verifier said no

    def __bool__(self):
        return self.accept


@dataclass
class SchemePair:
    name: str
    prover: Callable                 # graph-like -> {node: bits}
    verifier: Callable               # (NodeConfig, bits, [bits by port]) -> bool
    kind: str = "pls"                # pls | apls | tpls
    params: dict = field(default_factory=dict)
    universe: Optional[Callable] = None      # graph -> bool (domain check)
    yes_family: Optional[Callable] = None    # graph -> bool (testing oracle)
    meta: dict = field(default_factory=dict)


def run_verifier(pair: SchemePair, g: ConfiguredGraph, labels) -> Verdict:
    """Evaluate the per-node predicate everywhere; collect rejections.

    A label that fails to decode (or any other verifier-side error) is a
    rejection at that node, never an exception.
    """
    rejecting = []
    for v in g.nodes:
        cfg = g.node_config(v)
        own = labels.get(v)
        nbr = [labels.get(g.neighbor_at(v, p)) for p, _ in cfg.ports]
        ok = False
        if own is not None and all(x is not None for x in nbr):
            try:
                ok = bool(pair.verifier(cfg, own, nbr))
            except DecodeError:
                ok = False
            except (ValueError, KeyError, IndexError, TypeError,
                    ZeroDivisionError, OverflowError):
                ok = False
        if not ok:
            rejecting.append(v)
    return Verdict(not rejecting, tuple(rejecting))


def run_prover_instrumented(pair: SchemePair, g: ConfiguredGraph,
                            radius_budget=None):
    """Run the prover behind the locality trap.

    Every structural read the prover makes while focused on some node is
    distance-checked against the budget.  A read outside the budget raises
    LocalityViolation.
    """
    if radius_budget is None:
        radius_budget = default_budget(g.n)
    elif callable(radius_budget):
        radius_budget = radius_budget(g.n)
    guarded = GuardedGraph(g, radius_budget)
    return pair.prover(guarded)


class SlocalState:
    """Shared blackboard of a sequential local run.

    `info` is free-form per-node scratch readable and writable within the
    current node's radius; `decision` is written exactly once per node, by
    the engine, when that node is processed.
    """

    def __init__(self, order):
        self.order = list(order)
        self.info = {}
        self.decision = {}
        self._guard = None

    def read_info(self, u, default=None):
        if self._guard is not None:
            self._guard._check(u)
        return self.info.get(u, default)

    def write_info(self, u, value):
        if self._guard is not None:
            self._guard._check(u)
        self.info[u] = value

    def read_decision(self, u, default=None):
        if self._guard is not None:
            self._guard._check(u)
        return self.decision.get(u, default)


def run_slocal(alg, g, order=None, r=None):
    """Process nodes sequentially; each step only sees its radius-r ball.

    `alg(view, v, state)` returns v's decision.  If `g` is already guarded,
    its budget wins (the caller is instrumenting a larger computation).
    """
    if order is None:
        order = list(g.nodes)
    if isinstance(g, GuardedGraph):
        gg = g
    else:
        if r is None:
            raise ValueError("locality radius required for unguarded runs")
        gg = GuardedGraph(g, r)
    state = SlocalState(order)
    for v in order:
        with gg.focus(v):
            state._guard = gg
            try:
                state.decision[v] = alg(gg, v, state)
            finally:
                state._guard = None
    return state


def proof_size(labels) -> int:
    return max((len(b) for b in labels.values()), default=0)


def proof_size_fit(points):
    """Least-squares fit bits = a*log2(n) + b over (n, bits) points."""
    import numpy as np
    xs = [math.log2(n) for n, _ in points]
    ys = [bits for _, bits in points]
    a, b = np.polyfit(xs, ys, 1)
    resid = max(abs(a * x + b - y) for x, y in zip(xs, ys))
    return float(a), float(b), float(resid)


# --- label dump format: one `id<TAB>hex` line per node, ascending id ---

def dump_labels(labels) -> str:
    return "".join(f"{v}\t{to_hex(labels[v])}\n" for v in sorted(labels))


def parse_labels(text) -> dict:
    labels = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        ident, _, hx = line.partition("\t")
        labels[int(ident)] = from_hex(hx.strip())
    return labels
