"""Spanning-tree sum-comparison certificates.

To certify an inequality sum_a >= sum_b over a connected scope of nodes,
the prover roots a BFS spanning tree of the scope at a designated node and
writes, at every scope node: the root id, the parent port, the tree depth,
and the two subtree sums.  Each node locally cross-checks its parent and
children, and re-derives its subtree sums from its own contribution plus
its children's sums; the root additionally checks the inequality itself.
Because ids are unique and depths strictly decrease toward the root, a
consistent labeling forces one genuine spanning tree, so the root sums are
exact and the inequality cannot be faked.

Callers pre-scale the contributions to integers (rational factors p/q are
multiplied through), and decide per port whether the neighbor belongs to
the same scope.
"""

from collections import deque
from typing import NamedTuple, Optional

from .bits import MAX_SUM_BITS, BitReader, BitWriter


class CmpFields(NamedTuple):
    root: int
    parent: Optional[int]    # local port toward the parent; None at the root
    dist: int
    sum_a: int
    sum_b: int


def cmp_write(w: BitWriter, f: CmpFields):
    w.uint(f.root)
    w.uint(0 if f.parent is None else f.parent + 1)
    w.uint(f.dist)
    w.sint(f.sum_a)
    w.sint(f.sum_b)


def cmp_read(r: BitReader) -> CmpFields:
    root = r.uint()
    p = r.uint()
    parent = None if p == 0 else p - 1
    dist = r.uint()
    sum_a = r.sint()
    sum_b = r.sint()
    return CmpFields(root, parent, dist, sum_a, sum_b)


def cmp_prove(g, scope, root, a, b):
    """BFS-tree certificate for sum(a) >= sum(b) over `scope`.

    scope must be connected in g's induced subgraph and contain root.
    a, b: per-node integer contributions (missing entries count as 0).
    Returns {node: CmpFields}.
    """
    scope = set(scope)
    if root not in scope:
        raise ValueError("root must belong to the scope")
    parent = {root: None}
    dist = {root: 0}
    order = [root]
    q = deque([root])
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if u in scope and u not in dist:
                dist[u] = dist[v] + 1
                parent[u] = v
                order.append(u)
                q.append(u)
    if set(dist) != scope:
        raise ValueError("scope is not connected")
    sum_a = {v: int(a.get(v, 0)) for v in scope}
    sum_b = {v: int(b.get(v, 0)) for v in scope}
    for v in reversed(order):
        if parent[v] is not None:
            sum_a[parent[v]] += sum_a[v]
            sum_b[parent[v]] += sum_b[v]
    for v in scope:
        if max(abs(sum_a[v]), abs(sum_b[v])) >= 1 << MAX_SUM_BITS:
            raise OverflowError("comparison sums exceed 64-bit range")
    out = {}
    for v in scope:
        pport = None if parent[v] is None else g.port_of(v, parent[v])
        out[v] = CmpFields(root, pport, dist[v], sum_a[v], sum_b[v])
    return out


def cmp_check(cfg, f: CmpFields, nbr_fields, a_v, b_v, root_id,
              require=">="):
    """Per-node check of one comparison certificate.

    nbr_fields runs parallel to cfg.ports; an entry is the neighbor's
    CmpFields when that neighbor is in the same scope, else None.
    root_id: the id the tree root must carry (the scope's designated id).
    require: ">=" or "==" -- the relation the root enforces on the sums.
    """
    if f.root != root_id:
        return False
    if f.dist == 0 or f.parent is None or cfg.id == root_id:
        # root checks: only the true designee may sit at depth 0
        if cfg.id != root_id or f.dist != 0 or f.parent is not None:
            return False
    ports = [p for p, _ in cfg.ports]
    sa, sb = int(a_v), int(b_v)
    for (p, info), nf in zip(cfg.ports, nbr_fields):
        if nf is None:
            continue
        if nf.root != root_id:
            return False
        if f.parent == p:
            if nf.dist != f.dist - 1:
                return False
        if nf.parent == info.remote_port:     # neighbor claims v as parent
            if nf.dist != f.dist + 1:
                return False
            sa += nf.sum_a
            sb += nf.sum_b
    if f.parent is not None:
        if f.parent not in ports:
            return False
        if nbr_fields[ports.index(f.parent)] is None:
            return False
    if sa != f.sum_a or sb != f.sum_b:
        return False
    if max(abs(sa), abs(sb)) >= 1 << MAX_SUM_BITS:
        return False
    if f.parent is None:
        if require == "==":
            return f.sum_a == f.sum_b
        return f.sum_a >= f.sum_b
    return True
