"""Cluster compiler for graph-family membership, testing-flavored.

Takes a membership scheme for a family closed under disjoint union and
subgraphs and produces a locally restricted scheme with one-sided error:
members are always accepted, and any accepted graph is delta-close to
the family (at most a delta fraction of the edges needs removing).

The prover partitions the nodes into clusters whose crossing-edge count
is small relative to their internal edge count, then certifies:

* adoption -- every inter-cluster edge is adopted by the cluster of one
  of its endpoints (each node carries the list of clusters that adopted
  it, so both endpoints can see the adoption locally);
* sparsity -- per cluster, twice the adopted-edge count is at most a
  2*delta fraction of the internal edge degree sum, via a tree
  comparison over the cluster;
* membership -- the plugged-in scheme certifies the cluster-induced
  subgraph, with cross-cluster ports masked out.

Soundness: deleting the adopted (= all crossing) edges leaves a disjoint
union of certified cluster subgraphs, and the sparsity sums bound the
deleted count by delta times the edge total.
"""

from fractions import Fraction
from typing import NamedTuple

from .bits import BitReader, BitWriter
from .comparison import CmpFields, cmp_check, cmp_prove, cmp_read, cmp_write
from .partition import part_cgf
from .scheme import SchemePair


class CgfLabel(NamedTuple):
    cluster: int
    seclist: tuple           # sorted ids of clusters that adopted this node
    cmp: CmpFields
    base: str


def encode_cgf(lab: CgfLabel) -> str:
    w = BitWriter()
    w.uint(lab.cluster)
    w.uint(len(lab.seclist))
    for s in lab.seclist:
        w.uint(s)
    cmp_write(w, lab.cmp)
    w.field(lab.base)
    return w.getvalue()


def parse_cgf(bits: str) -> CgfLabel:
    r = BitReader(bits)
    cluster = r.uint()
    cnt = r.uint()
    seclist = tuple(r.uint() for _ in range(cnt))
    if list(seclist) != sorted(set(seclist)):
        raise ValueError("adoption list not sorted-unique")
    cmp = cmp_read(r)
    base = r.field()
    r.expect_done()
    return CgfLabel(cluster, seclist, cmp, base)


def _check_cgf(base, p, q, cfg, own_bits, nbr_bits):
    own = parse_cgf(own_bits)
    nbrs = [parse_cgf(b) for b in nbr_bits]

    if own.cluster in own.seclist:
        return False

    # every crossing edge must be adopted by one of its endpoints' clusters
    adopted = 0      # ports whose edge is charged to this node's cluster
    for nb in nbrs:
        if nb.cluster == own.cluster:
            continue
        if own.cluster in nb.seclist:
            adopted += 1
        elif nb.cluster not in own.seclist:
            return False

    # sparsity: per cluster j, 2q * |adopted_j| <= 2p * |internal_j|
    internal = sum(1 for nb in nbrs if nb.cluster == own.cluster)
    a_v = p * internal           # sums to 2p * (internal edge count)
    b_v = 2 * q * adopted        # each adopted edge counted once
    nf = [nb.cmp if nb.cluster == own.cluster else None for nb in nbrs]
    if not cmp_check(cfg, own.cmp, nf, a_v, b_v, own.cluster):
        return False

    bown = base.parse(own.base)
    keep = [nb.cluster == own.cluster for nb in nbrs]
    bnbrs = [base.parse(nb.base) if k else None
             for nb, k in zip(nbrs, keep)]
    return base.check(cfg, bown, bnbrs)


def _prove_cgf(base, delta, view, order=None):
    p, q = delta.numerator, delta.denominator
    st = part_cgf(view, delta, order=order, multi_affiliation=True)
    cluster = st.cluster
    cmps, bbits = {}, {}
    for leader in st.by_leader:
        with view.focus(leader):
            V = st.members(leader)
            Vset = set(V)
            a, b = {}, {}
            for v in V:
                internal = adopted = 0
                for u in view.neighbors(v):
                    if u in Vset:
                        internal += 1
                    elif leader in st.seclist[u]:
                        adopted += 1
                a[v] = p * internal
                b[v] = 2 * q * adopted
            fields = cmp_prove(view, V, leader, a, b)
            for v in V:
                cmps[v] = fields[v]
            inst = view.induced_subgraph(V)
            for v, bits in base.prove(inst).items():
                bbits[v] = bits
    labels = {}
    for v in view.nodes:
        lab = CgfLabel(cluster[v], tuple(sorted(st.seclist[v])),
                       cmps[v], bbits[v])
        labels[v] = encode_cgf(lab)
    return labels


def compile_cgf(base, delta, *, name=None, order=None) -> SchemePair:
    delta = Fraction(delta)

    def prover(view):
        return _prove_cgf(base, delta, view, order=order)

    def verifier(cfg, own, nbrs):
        return _check_cgf(base, delta.numerator, delta.denominator,
                          cfg, own, nbrs)

    return SchemePair(name or f"compiled-tpls:{base.name}", prover, verifier,
                      kind="tpls", params={"delta": delta})
