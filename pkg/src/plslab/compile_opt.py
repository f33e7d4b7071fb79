"""Cluster compiler for optimization certification.

Takes an approximation scheme for a covering (min) or packing (max)
problem and produces a locally restricted scheme whose guarantee only
degrades by a (1+eps) factor.  The prover partitions the nodes into
low-diameter clusters with the ball-growing routine, then certifies four
properties with per-node labels:

* feasibility -- the published output satisfies the problem predicate at
  every node (outputs travel in labels so neighbors can check);
* rim -- every cluster border node is adopted by some accounting set,
  enforced by exact local rules on the encoded border distances;
* growth -- per cluster, the accounting set carries at most an
  eps-fraction of the interior mass (min) or the witness mass is at most
  (1+eps) times the cluster mass (max), via tree comparisons over the
  cluster-plus-adoptees scope;
* optimality -- a locally optimal witness assignment is published and
  the plugged-in approximation scheme certifies its quality on the
  cluster-induced instance (border predicates relaxed to TAUT).

Every node belongs to exactly one cluster; for the max variant every
node is also charged to exactly one witness set, so the witness sets
tile the graph and the accounting stays exact.
"""

from fractions import Fraction
from typing import NamedTuple, Optional

from .bits import BitReader, BitWriter, DecodeError
from .comparison import CmpFields, cmp_check, cmp_prove, cmp_read, cmp_write
from .graph import inner
from .partition import S_set, ext_set, part_opt
from .problems import TAUT
from .scheme import SchemePair


class CompiledLabel(NamedTuple):
    o: int
    cluster: int
    sec: Optional[int]
    rimd: int                # 0: interior (border distance > 2); else 1 or 2
    g: int                   # witness multiplicity at this node
    cmp1: CmpFields          # growth comparison, own-cluster scope
    cmp2: Optional[CmpFields]    # growth comparison, adopting-cluster scope
    cmp3: Optional[CmpFields]    # min only: witness-vs-interior comparison
    base: str                # plugged-in scheme's sub-label


def encode_compiled(lab: CompiledLabel, minimize: bool) -> str:
    w = BitWriter()
    w.uint(lab.o)
    w.uint(lab.cluster)
    if lab.sec is None:
        w.raw("0")
    else:
        w.raw("1")
        w.uint(lab.sec)
    w.uint(lab.rimd)
    w.uint(lab.g)
    cmp_write(w, lab.cmp1)
    if lab.sec is not None:
        cmp_write(w, lab.cmp2)
    if minimize:
        cmp_write(w, lab.cmp3)
    w.field(lab.base)
    return w.getvalue()


def parse_compiled(bits: str, minimize: bool) -> CompiledLabel:
    r = BitReader(bits)
    o = r.uint()
    cluster = r.uint()
    sec = r.uint() if r._take(1) == "1" else None
    rimd = r.uint()
    if rimd > 2:
        raise DecodeError("border distance out of range")
    g = r.uint()
    cmp1 = cmp_read(r)
    cmp2 = cmp_read(r) if sec is not None else None
    cmp3 = cmp_read(r) if minimize else None
    base = r.field()
    r.expect_done()
    return CompiledLabel(o, cluster, sec, rimd, g, cmp1, cmp2, cmp3, base)


def _tile(lab: CompiledLabel) -> int:
    """The witness set this node is charged to (max variant)."""
    if lab.rimd == 0 or lab.sec is None:
        return lab.cluster
    return lab.sec


def _grw_fields(lab: CompiledLabel, j):
    if lab.cluster == j:
        return lab.cmp1
    if lab.sec == j:
        return lab.cmp2
    return None


def _in_accounting(lab: CompiledLabel, j) -> bool:
    if lab.sec == j:
        return True
    return lab.cluster == j and lab.rimd != 0 and lab.sec is None


def _check_compiled(problem, base, p, q, minimize, cfg, own_bits, nbr_bits):
    own = parse_compiled(own_bits, minimize)
    nbrs = [parse_compiled(b, minimize) for b in nbr_bits]
    w = cfg.weight

    # feasibility: label echoes the output and the predicate holds
    if cfg.output is None or own.o != cfg.output:
        return False
    if not 0 <= own.o <= problem.k or not 0 <= own.g <= problem.k:
        return False
    if not problem.predicate(cfg, own.o, [nb.o for nb in nbrs]):
        return False

    # border distances: exact local characterization
    if any(nb.cluster != own.cluster for nb in nbrs):
        if own.rimd != 1:
            return False
    elif own.rimd != (2 if any(nb.rimd == 1 for nb in nbrs) else 0):
        return False
    if own.sec is not None and own.sec == own.cluster:
        return False

    # growth comparisons for every scope this node belongs to
    for root, f in ((own.cluster, own.cmp1), (own.sec, own.cmp2)):
        if root is None:
            continue
        nf = [_grw_fields(nb, root) for nb in nbrs]
        if minimize:
            a = p * w * own.o if (own.cluster == root and own.rimd == 0) \
                else 0
            b = q * w * own.o if _in_accounting(own, root) else 0
        else:
            a = (q + p) * w * own.o if own.cluster == root else 0
            b = q * w * own.g if _tile(own) == root else 0
        if not cmp_check(cfg, f, nf, a, b, root):
            return False

    if minimize:
        j = own.cluster
        nf3 = [nb.cmp3 if nb.cluster == j else None for nb in nbrs]
        a3 = w * own.g
        b3 = w * own.o if own.rimd == 0 else 0
        if not cmp_check(cfg, own.cmp3, nf3, a3, b3, j):
            return False
        in_inst = [nb.cluster == own.cluster for nb in nbrs]
        active = cfg.prd != TAUT and own.rimd != 1
    else:
        t = _tile(own)
        in_inst = [_tile(nb) == t for nb in nbrs]
        active = cfg.prd != TAUT and all(in_inst)

    bown = base.parse(own.base)
    bnbrs = [base.parse(nb.base) if keep else None
             for nb, keep in zip(nbrs, in_inst)]
    return base.check(cfg, bown, bnbrs, own.g, active)


def _outputs(view):
    o = {}
    for v in view.nodes:
        with view.focus(v):
            val = view.output(v)
            if val is None:
                raise ValueError(f"output missing at node {v}")
            o[v] = val
    return o


def _border_dists(view, cluster):
    rimd = {}
    for v in view.nodes:
        with view.focus(v):
            if any(cluster[u] != cluster[v] for u in view.neighbors(v)):
                rimd[v] = 1
    for v in view.nodes:
        if v in rimd:
            continue
        with view.focus(v):
            rimd[v] = 2 if any(rimd.get(u) == 1
                               for u in view.neighbors(v)) else 0
    return rimd


def _taut_border(view, U):
    interior = set(inner(view, U))
    return {v: (view.prd(v) if v in interior else TAUT) for v in U}


def _prove_compiled(problem, base, eps, minimize, local_opt,
                    view, order=None):
    p, q = eps.numerator, eps.denominator
    o = _outputs(view)
    st = part_opt(view, o, eps, "min" if minimize else "max", order=order)
    cluster = st.cluster
    rimd = _border_dists(view, cluster)
    grw1, grw2, opt3, gval, bbits = {}, {}, {}, {}, {}

    if not minimize:
        # tile of each node: interior and unadopted border stay home,
        # adopted border nodes are charged to the adopting cluster
        tile = {}
        for v in view.nodes:
            if rimd[v] == 0 or st.sec.get(v) is None:
                tile[v] = cluster[v]
            else:
                tile[v] = st.sec[v]
        tiles = {}
        for v in view.nodes:
            tiles.setdefault(tile[v], []).append(v)

    for leader in st.by_leader:
        with view.focus(leader):
            V = st.members(leader)
            S = S_set(view, st, leader)
            ext = ext_set(view, st, leader)
            interior = [v for v in V if rimd[v] == 0]
            if minimize:
                gj = local_opt(view, V)
                a = {v: p * view.weight(v) * o[v] for v in interior}
                b = {v: q * view.weight(v) * o[v] for v in S}
                fields = cmp_prove(view, ext, leader, a, b)
                for v in ext:
                    (grw1 if cluster[v] == leader else grw2)[v] = fields[v]
                a3 = {v: view.weight(v) * gj[v] for v in V}
                b3 = {v: view.weight(v) * o[v] for v in interior}
                c3 = cmp_prove(view, V, leader, a3, b3)
                inst_nodes = V
            else:
                U = sorted(tiles.get(leader, []))
                gj = local_opt(view, U) if U else {}
                a = {v: (q + p) * view.weight(v) * o[v] for v in V}
                b = {v: q * view.weight(v) * gj[v] for v in U}
                fields = cmp_prove(view, ext, leader, a, b)
                for v in ext:
                    (grw1 if cluster[v] == leader else grw2)[v] = fields[v]
                c3 = {}
                inst_nodes = U
            for v in inst_nodes:
                gval[v] = gj[v]
                if minimize:
                    opt3[v] = c3[v]
            if inst_nodes:
                inst = view.induced_subgraph(inst_nodes).replace(
                    output={v: gj[v] for v in inst_nodes},
                    prd=_taut_border(view, inst_nodes))
                for v, bits in base.prove(inst).items():
                    bbits[v] = bits

    labels = {}
    for v in view.nodes:
        lab = CompiledLabel(o[v], cluster[v], st.sec.get(v), rimd[v],
                            gval[v], grw1[v], grw2.get(v),
                            opt3.get(v), bbits[v])
        labels[v] = encode_compiled(lab, minimize)
    return labels


def compile_min(problem, base, eps, *, local_min=None, name=None,
                order=None) -> SchemePair:
    eps = Fraction(eps)
    if local_min is None:
        from .oracles import solve_wmin
        local_min = lambda g, U: solve_wmin(problem, g, U)[0]

    def prover(view):
        return _prove_compiled(problem, base, eps, True, local_min, view,
                               order=order)

    def verifier(cfg, own, nbrs):
        return _check_compiled(problem, base, eps.numerator,
                               eps.denominator, True, cfg, own, nbrs)

    return SchemePair(name or f"compiled-min:{base.name}", prover, verifier,
                      kind="apls", params={"eps": eps, "mode": "min",
                                           "problem": problem.name})


def compile_max(problem, base, eps, *, local_max=None, name=None,
                order=None) -> SchemePair:
    eps = Fraction(eps)
    if local_max is None:
        from .oracles import solve_wmax
        local_max = lambda g, U: _restrict(solve_wmax(problem, g, U)[0], U)

    def prover(view):
        return _prove_compiled(problem, base, eps, False, local_max, view,
                               order=order)

    def verifier(cfg, own, nbrs):
        return _check_compiled(problem, base, eps.numerator,
                               eps.denominator, False, cfg, own, nbrs)

    return SchemePair(name or f"compiled-max:{base.name}", prover, verifier,
                      kind="apls", params={"eps": eps, "mode": "max",
                                           "problem": problem.name})


def _restrict(o, U):
    return {v: o[v] for v in U}


# ---- exact local optimizers for the concrete problems ----
# (branch and bound; clusters are small but can exceed brute-force caps)

def mwvc_local_min(view, U):
    """Cheapest cover of the constrained edges incident to interior
    non-TAUT nodes of U."""
    Uset = set(U)
    interior = {v for v in inner(view, U) if view.prd(v) != TAUT}
    edges = set()
    for v in interior:
        cfg = view.node_config(v)
        for port, pi in cfg.ports:
            if pi.constrained:
                edges.add(frozenset((v, view.neighbor_at(v, port))))
    adj = {}
    for e in edges:
        u, v = tuple(e)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    cover = _min_weight_cover(adj, {v: view.weight(v) for v in adj})
    return {v: (1 if v in cover else 0) for v in U}


def _min_weight_cover(adj, weight):
    nodes = sorted(adj, key=lambda v: (-len(adj[v]), v))
    best = [sum(weight.values()), set(nodes)]

    def lower_bound(uncovered):
        # greedy disjoint edges, each costs at least its lighter endpoint
        lb = 0
        used = set()
        for (u, v) in uncovered:
            if u not in used and v not in used:
                lb += min(weight[u], weight[v])
                used.update((u, v))
        return lb

    def rec(chosen, cost):
        uncovered = [(u, v) for u in adj for v in adj[u]
                     if u < v and u not in chosen and v not in chosen]
        if not uncovered:
            if cost < best[0]:
                best[0], best[1] = cost, set(chosen)
            return
        if cost + lower_bound(uncovered) >= best[0]:
            return
        u, v = max(uncovered,
                   key=lambda e: len(adj[e[0]]) + len(adj[e[1]]))
        for pick in sorted((u, v), key=lambda x: weight[x]):
            chosen.add(pick)
            rec(chosen, cost + weight[pick])
            chosen.remove(pick)

    rec(set(), 0)
    return best[1]


def maxis_local_max(view, U):
    """Heaviest conflict-free subset of U: nodes touching a constrained
    edge anywhere (or with TAUT predicates) may take 1; constrained edges
    inside U with a non-TAUT endpoint conflict."""
    Uset = set(U)
    eligible = set()
    conflicts = {}
    for v in U:
        cfg = view.node_config(v)
        taut_v = view.prd(v) == TAUT
        touches = any(pi.constrained for _, pi in cfg.ports)
        if taut_v or touches:
            eligible.add(v)
    for v in U:
        cfg = view.node_config(v)
        for port, pi in cfg.ports:
            u = view.neighbor_at(v, port)
            if pi.constrained and u in Uset and \
                    (view.prd(v) != TAUT or view.prd(u) != TAUT):
                conflicts.setdefault(v, set()).add(u)
                conflicts.setdefault(u, set()).add(v)
    free = [v for v in eligible if v not in conflicts]
    contested = sorted(v for v in eligible if v in conflicts)
    chosen = _max_weight_indep(contested, conflicts,
                               {v: view.weight(v) for v in contested})
    out = {v: 0 for v in U}
    for v in free:
        out[v] = 1
    for v in chosen:
        out[v] = 1
    return out


def _max_weight_indep(nodes, adj, weight):
    best = [0, set()]

    def rec(remaining, chosen, value):
        if value > best[0]:
            best[0], best[1] = value, set(chosen)
        if not remaining:
            return
        if value + sum(weight[v] for v in remaining) <= best[0]:
            return
        v = max(remaining, key=lambda x: (len(adj[x] & remaining), x))
        # branch: include v (drop its conflicts), then exclude v
        rec(remaining - {v} - adj[v], chosen | {v}, value + weight[v])
        rec(remaining - {v}, chosen, value)

    rec(set(nodes), set(), 0)
    return best[1]
