"""Independent ground truth for the test harness and the universal scheme.

Nothing here is used by the locally restricted provers themselves (the
universal scheme is the one deliberate exception): these are whole-graph
brute-force computations the schemes are judged against.
"""

import random
from fractions import Fraction
from itertools import combinations

from .graph import inner, n2

BRUTE_CAP = 14
LOCAL_CAP = 20


def _assign_search(problem, g, free, forced, check_at, better, bound_prune):
    """DFS over multiplicity assignments of `free` (ascending id).

    forced: preset values outside `free`.  check_at: nodes whose predicate
    must hold (checked as soon as the node and its neighbors are decided).
    Returns (best objective over free nodes, first lexicographic witness).
    """
    free = sorted(free)
    pos = {v: i for i, v in enumerate(free)}
    check_at = set(check_at)
    # a predicate of u can be checked once u and all its neighbors are set
    ready_at = {}
    for u in check_at:
        deps = [pos[x] for x in [u] + g.neighbors(u) if x in pos]
        ready_at.setdefault(max(deps) if deps else -1, []).append(u)
    o = dict(forced)
    best = [None, None]

    def ok(u):
        return problem.legal_at(g, o, u)

    def rec(i, acc):
        if best[0] is not None and bound_prune(acc, best[0]):
            return
        if i == len(free):
            if best[0] is None or better(acc, best[0]):
                best[0], best[1] = acc, {v: o[v] for v in free}
            return
        v = free[i]
        for val in range(problem.k + 1):
            o[v] = val
            if all(ok(u) for u in ready_at.get(i, [])):
                rec(i + 1, acc + g.weight(v) * val)
            del o[v]

    # nodes whose checks depend on no free node must hold outright
    for u in ready_at.get(-1, []):
        if not problem.legal_at(g, dict(forced), u):
            return None, None
    rec(0, 0)
    return best[0], best[1]


def brute_opt(problem, g, cap=BRUTE_CAP):
    """Exact optimum of the problem on g; lexicographic witness."""
    if g.n > cap:
        raise ValueError(f"brute_opt capped at n <= {cap}")
    minimize = problem.mode == "min"
    better = (lambda a, b: a < b) if minimize else (lambda a, b: a > b)
    if minimize:
        prune = lambda acc, best: acc >= best
    else:
        prune = lambda acc, best: False
    val, o = _assign_search(problem, g, g.nodes, {}, g.nodes, better, prune)
    if val is None:
        raise ValueError("instance has no legal output")
    return val, o


def solve_wmin(problem, g, U, cap=LOCAL_CAP):
    """Cheapest assignment on U legal at every fully-interior node of U."""
    U = sorted(set(U))
    if len(U) > cap:
        raise ValueError(f"local solver capped at |U| <= {cap}")
    val, o = _assign_search(problem, g, U, {}, inner(g, U),
                            lambda a, b: a < b, lambda acc, best: acc >= best)
    if val is None:
        raise ValueError("no legal local assignment")
    return o, val


def solve_wmax(problem, g, U, cap=LOCAL_CAP):
    """Heaviest assignment on U, zero on the 2-neighborhood, legality on
    the interior of the closure."""
    U = sorted(set(U))
    ring = n2(g, U)
    if len(U) > cap:
        raise ValueError(f"local solver capped at |U| <= {cap}")
    closure = sorted(set(U) | set(ring))
    forced = {v: 0 for v in ring}
    val, o = _assign_search(problem, g, U, forced, inner(g, closure),
                            lambda a, b: a > b, lambda acc, best: False)
    if val is None:
        raise ValueError("no legal local assignment")
    full = dict(forced)
    full.update(o)
    return full, val


# --- distance to a graph family (edge removals only) ---

def _components(nodes, edges):
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    c = len(nodes)
    for (u, v) in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            c -= 1
    return c


def family_distance(family, g, cap=12):
    """Minimum number of edge removals to land in the family."""
    name = family.name
    if name == "forest":
        return g.m - (g.n - _components(g.nodes,
                                        [(u, v) for (u, v, _) in g.edges()]))
    if name == "2color":
        return _bipartite_distance(g)
    if name == "dag":
        return _dag_distance(g)
    if name.startswith("arboricity-"):
        c = int(name.split("-")[1])
        return g.m - _max_c_forest(g, c)
    return _generic_distance(family, g, cap)


def _bipartite_distance(g):
    # fewest monochromatic edges over all 2-colorings, per component
    if g.n > 22:
        raise ValueError("bipartite distance capped at n <= 22")
    comps = []
    seen = set()
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
        comps.append(comp)
    total = 0
    for comp in comps:
        idx = {v: i for i, v in enumerate(comp)}
        edges = [(idx[u], idx[v]) for (u, v, _) in g.edges()
                 if u in idx and v in idx]
        best = len(edges)
        for mask in range(1 << (len(comp) - 1)):   # first node's side is wlog
            side = lambda a: (mask >> (a - 1)) & 1 if a else 0
            mono = sum(1 for (a, b) in edges if side(a) == side(b))
            best = min(best, mono)
        total += best
    return total


def _dag_distance(g):
    # minimum feedback arc set by ordering DP
    nodes = list(g.nodes)
    n = len(nodes)
    if n > 18:
        raise ValueError("dag distance capped at n <= 18")
    idx = {v: i for i, v in enumerate(nodes)}
    succ = [0] * n       # bitmask of arc targets
    for v in g.nodes:
        for p, info in g.node_config(v).ports:
            if info.direction == 1:
                succ[idx[v]] |= 1 << idx[g.neighbor_at(v, p)]
    INF = float("inf")
    dp = [INF] * (1 << n)
    dp[0] = 0
    for mask in range(1 << n):
        if dp[mask] is INF:
            continue
        for i in range(n):
            if mask >> i & 1:
                continue
            # place node i next: arcs i -> already-placed become backward
            cost = bin(succ[i] & mask).count("1")
            nm = mask | 1 << i
            if dp[mask] + cost < dp[nm]:
                dp[nm] = dp[mask] + cost
    return dp[(1 << n) - 1]


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


def _max_c_forest(g, c):
    # largest edge subset splitting into c forests; by the rank formula
    # this is min over vertex partitions of (#crossing + c*sum(|P|-1)).
    if g.n > 11:
        raise ValueError("arboricity distance capped at n <= 11")
    edges = [(u, v) for (u, v, _) in g.edges()]
    best = None
    for part in _set_partitions(list(g.nodes)):
        where = {}
        for i, blk in enumerate(part):
            for v in blk:
                where[v] = i
        crossing = sum(1 for (u, v) in edges if where[u] != where[v])
        val = crossing + c * sum(len(blk) - 1 for blk in part)
        if best is None or val < best:
            best = val
    return min(best, len(edges))


def _generic_distance(family, g, cap):
    # iterative-deepening removal search; exact but only for small m
    edges = [(u, v) for (u, v, _) in g.edges()]
    for t in range(len(edges) + 1):
        if t > cap:
            raise ValueError("generic family distance: removal cap exceeded")
        for drop in combinations(range(len(edges)), t):
            dropset = set(drop)
            keep = [e for i, e in enumerate(edges) if i not in dropset]
            h = _with_edges(g, keep)
            if family.member(h):
                return t
    raise RuntimeError("unreachable")


def _with_edges(g, keep):
    from .graph import ConfiguredGraph
    return ConfiguredGraph(
        list(g.nodes), keep, directed=g.directed,
        weight={v: g.weight(v) for v in g.nodes},
        data={v: g.data(v) for v in g.nodes},
        prd={v: g.prd(v) for v in g.nodes},
        output={v: g.output(v) for v in g.nodes},
        node_constrained={v for v in g.nodes if g.node_constrained(v)})


def delta_far(family, g, delta):
    """Classify g against the family at tolerance delta (a Fraction)."""
    delta = Fraction(delta)
    dist = family_distance(family, g)
    if dist == 0:
        return "member", 0
    if dist <= delta * g.m:
        return "close", dist
    return "far", dist


# --- adversarial label search ---

def _verify_plan(g):
    """Precomputed (node, config, neighbor ids) rows for repeated runs."""
    return [(v, g.node_config(v),
             [g.neighbor_at(v, p) for p, _ in g.node_config(v).ports])
            for v in g.nodes]


def _fast_reject(pair, plan, labels):
    """True iff some node rejects; stops at the first one."""
    get = labels.get
    for v, cfg, nbr_ids in plan:
        own = get(v)
        if own is None:
            return True
        nbr = [get(u) for u in nbr_ids]
        if None in nbr:
            return True
        try:
            if not pair.verifier(cfg, own, nbr):
                return True
        except Exception:
            return True
    return False


def _rand_bits(rng, maxw):
    ln = rng.randrange(maxw + 1)
    return format(rng.getrandbits(ln), f"0{ln}b") if ln else ""


def _mutate(labels, rng, nodes):
    out = dict(labels)
    v = rng.choice(nodes)
    b = out.get(v, "")
    op = rng.randrange(4)
    if op == 0 and b:                      # flip a bit
        i = rng.randrange(len(b))
        out[v] = b[:i] + ("1" if b[i] == "0" else "0") + b[i + 1:]
    elif op == 1 and b:                    # truncate
        out[v] = b[:rng.randrange(len(b))]
    elif op == 2:                          # extend with noise
        out[v] = b + "".join(rng.choice("01")
                             for _ in range(rng.randrange(1, 8)))
    else:                                  # clone another node's label
        out[v] = out.get(rng.choice(nodes), "")
    return out


def _all_bitstrings(maxlen, cap=None):
    out = [""]
    for ln in range(1, maxlen + 1):
        out.extend(bin(i)[2:].zfill(ln) for i in range(1 << ln))
        if cap is not None and len(out) > cap:
            break       # the search budget runs out before these are read
    return out


def exhaustive_search(pair, g, maxlen, node_budget=2_000_000):
    """DFS over all labelings with per-node labels up to maxlen bits.

    Prunes through nodes whose closed neighborhood is fully assigned.
    Returns an accepting labeling, or None if all candidates reject, or
    raises if the node budget runs out before the space is covered.
    """
    nodes = list(g.nodes)
    cands = _all_bitstrings(maxlen, cap=node_budget + 1)
    # after assigning nodes[0..i], these nodes become fully checkable
    ready = []
    for i in range(len(nodes)):
        done = set(nodes[:i + 1])
        ready.append([u for u in nodes[:i + 1]
                      if set(g.neighbors(u)) <= done
                      and all(u not in r for r in ready)])
    labels = {}
    spent = [0]

    def check(u):
        cfg = g.node_config(u)
        nbr = [labels[g.neighbor_at(u, p)] for p, _ in cfg.ports]
        try:
            return bool(pair.verifier(cfg, labels[u], nbr))
        except Exception:
            return False

    def rec(i):
        if i == len(nodes):
            return dict(labels)
        for b in cands:
            spent[0] += 1
            if spent[0] > node_budget:
                raise TimeoutError("exhaustive search budget exceeded")
            labels[nodes[i]] = b
            if all(check(u) for u in ready[i]):
                hit = rec(i + 1)
                if hit is not None:
                    return hit
            del labels[nodes[i]]
        return None

    return rec(0)


def adversary_search(pair, g, budget=100_000, seed=0, honest_sources=None,
                     exhaustive_maxlen=None):
    """Search for a labeling the verifier accepts on g.

    Tries, in order: honest labels transplanted from related instances,
    field-wise mutations of those, and random labels at honest widths;
    optionally an exhaustive short-label sweep.  Deterministic per seed.
    Returns an accepting labeling or None.
    """
    rng = random.Random(seed)
    seeds = []
    try:
        honest = pair.prover(g)
        if honest:
            seeds.append(honest)
    except Exception:
        pass
    for src in (honest_sources or []):
        try:
            seeds.append(dict(src))
        except Exception:
            pass
    seeds = [s for s in seeds if set(s) >= set(g.nodes)] or seeds
    plan = _verify_plan(g)
    nodes = list(g.nodes)
    spent = 0
    for s in seeds:
        cand = {v: s.get(v, "") for v in nodes}
        spent += 1
        if not _fast_reject(pair, plan, cand):
            return cand
    widths = sorted({len(b) for s in seeds for b in s.values()} or {8})
    while spent < budget:
        spent += 1
        mode = rng.randrange(3)
        if mode < 2 and seeds:
            cand = rng.choice(seeds)
            for _ in range(rng.randrange(1, 5)):
                cand = _mutate(cand, rng, nodes)
            if len(cand) != len(nodes):
                cand = {v: cand.get(v, "") for v in nodes}
        else:
            w = rng.choice(widths)
            cand = {v: _rand_bits(rng, w) for v in nodes}
        if not _fast_reject(pair, plan, cand):
            return cand
    if exhaustive_maxlen:
        hit = exhaustive_search(pair, g, exhaustive_maxlen)
        if hit is not None:
            return hit
    return None
