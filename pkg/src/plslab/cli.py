"""Command line surface: gen / prove / verify / partition / fuzz /
bench-size.

Reports are line-oriented key=value; label files are one id<TAB>hex line
per node.  Exit codes: 0 accept/pass, 1 reject/fail, 2 usage or format
error.
"""

import argparse
import sys
import time
from fractions import Fraction

from . import generators as gen
from .graph import ConfiguredGraph, LocalityViolation
from .oracles import adversary_search
from .partition import S_set, part_cgf, part_opt
from .problems import maxis_problem, mwds_problem, mwvc_problem
from .registry import SCHEME_NAMES, get_scheme
from .scheme import (default_budget, dump_labels, parse_labels, proof_size,
                     proof_size_fit, run_prover_instrumented, run_verifier)

PROBLEMS = {"mwvc": mwvc_problem, "maxis": maxis_problem,
            "mwds": mwds_problem}


def _frac(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {s}")


def _load_graph(path):
    with open(path) as f:
        return ConfiguredGraph.from_json(f.read())


def _emit(out, **kv):
    for k, v in kv.items():
        print(f"{k}={v}", file=out)


def _order_list(spec, g):
    if spec is None or spec == "id":
        return None
    if spec.startswith("random:"):
        import random
        rng = random.Random(int(spec.split(":")[1]))
        order = list(g.nodes)
        rng.shuffle(order)
        return order
    raise ValueError(f"bad --order: {spec}")


def _scheme_for(args, g):
    return get_scheme(args.scheme, n=g.n, eps=args.epsilon,
                      delta=args.delta,
                      order=_order_list(getattr(args, "order", None), g))


def cmd_gen(args):
    kind, rest = args.kind, args.params
    seed = args.seed
    if kind == "path":
        g = gen.path(int(rest[0]))
    elif kind == "cycle":
        g = gen.cycle(int(rest[0]))
    elif kind == "star":
        g = gen.star(int(rest[0]))
    elif kind == "complete":
        g = gen.complete(int(rest[0]))
    elif kind == "gnp":
        g = gen.gnp(int(rest[0]), float(rest[1]), seed,
                    weighted=args.weighted)
    elif kind == "tree":
        g = gen.random_tree(int(rest[0]), seed, weighted=args.weighted)
    elif kind == "bipartite":
        g = gen.bipartite(int(rest[0]), int(rest[1]), float(rest[2]), seed)
    elif kind == "yes":
        prob = PROBLEMS[rest[0]]()
        g = gen.yes_instance(prob, int(rest[1]), seed,
                             weighted=args.weighted)
    elif kind == "member":
        g = gen.family_member(rest[0], int(rest[1]), seed)
    else:
        raise ValueError(f"unknown generator: {kind}")
    text = g.to_json()
    if args.out:
        with open(args.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_prove(args):
    g = _load_graph(args.graph)
    pair = _scheme_for(args, g)
    budget = args.budget or default_budget(g.n, c=args.locality_exponent)
    t0 = time.monotonic()
    labels = run_prover_instrumented(pair, g, radius_budget=budget)
    dt = time.monotonic() - t0
    if args.labels_out:
        with open(args.labels_out, "w") as f:
            f.write(dump_labels(labels))
    else:
        sys.stdout.write(dump_labels(labels))
    _emit(sys.stderr, scheme=pair.name, n=g.n, m=g.m,
          radius_budget=budget, proof_size_bits=proof_size(labels))
    if args.timings:
        _emit(sys.stderr, prove_seconds=f"{dt:.3f}")
    return 0


def cmd_verify(args):
    g = _load_graph(args.graph)
    pair = _scheme_for(args, g)
    with open(args.labels) as f:
        labels = parse_labels(f.read())
    verdict = run_verifier(pair, g, labels)
    _emit(sys.stdout, scheme=pair.name, n=g.n,
          verdict="accept" if verdict.accept else "reject",
          rejecting=",".join(str(v) for v in verdict.rejecting))
    return 0 if verdict.accept else 1


def cmd_partition(args):
    g = _load_graph(args.graph)
    order = _order_list(args.order, g)
    if args.mode in ("opt-min", "opt-max"):
        o = {v: g.output(v) for v in g.nodes}
        if any(x is None for x in o.values()):
            raise ValueError("opt partition needs outputs on the graph")
        st = part_opt(g, o, args.epsilon, args.mode.split("-")[1],
                      order=order, budget=args.budget)
        p, q = args.epsilon.numerator, args.epsilon.denominator
    else:
        st = part_cgf(g, args.delta, order=order, budget=args.budget,
                      multi_affiliation=True)
        p, q = args.delta.numerator, args.delta.denominator
    _emit(sys.stdout, mode=st.mode, clusters=len(st.by_leader),
          max_radius=st.max_radius())
    print("leader\tsize\tr\tdiameter\tboundary\tslack")
    for leader in sorted(st.by_leader):
        rec = st.by_leader[leader]
        V = list(rec.members)
        dist = g.distances_from(leader)
        diam = max(dist.get(v, 0) for v in V)
        if args.mode == "cgf":
            boundary = sum(1 for v in g.nodes if leader in st.seclist[v])
            e, c = rec.extra.get("E", 0), rec.extra.get("C", 0)
            slack = p * e - q * c
        else:
            S = S_set(g, st, leader)
            boundary = len(S)
            wS = sum(g.weight(v) * g.output(v) for v in S)
            wI = sum(g.weight(v) * g.output(v)
                     for v in V if all(u in set(V) for u in g.ball(v, 2)))
            slack = p * wI - q * wS if args.mode == "opt-min" else ""
        print(f"{leader}\t{len(V)}\t{rec.r}\t{diam}\t{boundary}\t{slack}")
    return 0


def cmd_fuzz(args):
    g = _load_graph(args.graph)
    pair = _scheme_for(args, g)
    found = adversary_search(pair, g, budget=args.search_budget,
                             seed=args.seed,
                             exhaustive_maxlen=args.exhaustive_maxlen)
    if found is None:
        _emit(sys.stdout, scheme=pair.name, n=g.n, result="none-found",
              budget=args.search_budget, seed=args.seed)
        return 0
    _emit(sys.stdout, scheme=pair.name, n=g.n, result="accepting-found",
          budget=args.search_budget, seed=args.seed)
    sys.stdout.write(dump_labels(found))
    return 1


def _bench_instance(scheme, n, seed):
    if scheme.startswith("compiled-min:") or scheme == "mwvc-apls2":
        return gen.yes_instance(mwvc_problem(), n, seed)
    if scheme.startswith("compiled-max:") or scheme == "maxis-apls-delta":
        return gen.yes_instance(maxis_problem(), n, seed)
    if scheme == "mwds-apls-h":
        return gen.yes_instance(mwds_problem(), n, seed)
    if scheme == "mvc-bipartite":
        return gen.yes_instance(mwvc_problem(), n, seed,
                                weighted=False, bipartite_only=True)
    if scheme == "maxis-bipartite":
        return gen.yes_instance(maxis_problem(), n, seed,
                                bipartite_only=True)
    if scheme.startswith("compiled-tpls:"):
        return gen.family_member(scheme.split(":")[1], n, seed)
    if scheme.endswith("-pls"):
        return gen.family_member(scheme.replace("-pls", ""), n, seed)
    if ":" in scheme:                      # kcolor-pls:3 etc.
        head, param = scheme.split(":")
        fam = {"kcolor-pls": f"{param}color",
               "arboricity-pls": f"arboricity-{param}",
               "universal-pls": param}[head]
        return gen.family_member(fam, n, seed)
    raise ValueError(f"no bench generator for scheme {scheme}")


def cmd_bench_size(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    points = []
    print("n\tmax_bits")
    for n in sizes:
        g = _bench_instance(args.scheme, n, args.seed)
        pair = get_scheme(args.scheme, n=g.n, eps=args.epsilon,
                          delta=args.delta)
        labels = run_prover_instrumented(pair, g)
        bits = proof_size(labels)
        points.append((g.n, bits))
        print(f"{g.n}\t{bits}")
    a, b, resid = proof_size_fit(points)
    _emit(sys.stdout, fit_a=f"{a:.3f}", fit_b=f"{b:.3f}",
          fit_max_resid=f"{resid:.3f}")
    return 0


def _add_common(sp, scheme=True):
    if scheme:
        sp.add_argument("--scheme", required=True,
                        help="one of: " + ", ".join(SCHEME_NAMES))
    sp.add_argument("--epsilon", type=_frac, default=Fraction(1, 1))
    sp.add_argument("--delta", type=_frac, default=Fraction(1, 4))
    sp.add_argument("--order", default="id",
                    help="id | random:<seed>")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--locality-exponent", type=int, default=2,
                    dest="locality_exponent")


def main(argv=None):
    ap = argparse.ArgumentParser(prog="plslab")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("kind")
    g.add_argument("params", nargs="*")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--weighted", action="store_true")
    g.add_argument("--out", default=None)
    g.set_defaults(fn=cmd_gen)

    p = sub.add_parser("prove", help="run a prover, dump labels")
    _add_common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--labels-out", default=None)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(fn=cmd_prove)

    v = sub.add_parser("verify", help="run the verifier on a label file")
    _add_common(v)
    v.add_argument("--graph", required=True)
    v.add_argument("--labels", required=True)
    v.set_defaults(fn=cmd_verify)

    pt = sub.add_parser("partition", help="cluster report")
    _add_common(pt, scheme=False)
    pt.add_argument("--graph", required=True)
    pt.add_argument("--mode", choices=["opt-min", "opt-max", "cgf"],
                    required=True)
    pt.set_defaults(fn=cmd_partition)

    f = sub.add_parser("fuzz", help="adversarial label search")
    _add_common(f)
    f.add_argument("--graph", required=True)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--search-budget", type=int, default=100_000,
                   dest="search_budget")
    f.add_argument("--exhaustive-maxlen", type=int, default=None)
    f.set_defaults(fn=cmd_fuzz)

    b = sub.add_parser("bench-size", help="proof size over a size grid")
    _add_common(b)
    b.add_argument("--sizes", required=True,
                   help="comma separated node counts")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(fn=cmd_bench_size)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except LocalityViolation as e:
        print(f"error=locality-violation detail={e}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, IndexError, OSError) as e:
        print(f"error={type(e).__name__} detail={e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
