"""Name -> scheme lookup used by the CLI and the test harness."""

from fractions import Fraction

from . import baseschemes as bs
from .compile_cgf import compile_cgf
from .compile_opt import (compile_max, compile_min, maxis_local_max,
                          mwvc_local_min)
from .problems import (TAUT, arboricity_family, dag_family, forest_family,
                       is_forest, kcolor_family, maxis_problem,
                       mwds_problem, mwvc_problem)
from .scheme import SchemePair


def _opt_pair(bundle, name, kind, **params):
    """Standalone scheme from an optimization bundle: the verifier reads
    the expected output off the node configuration."""
    def verifier(cfg, own, nbrs):
        if cfg.output is None:
            return False
        lab = bundle.parse(own)
        nlabs = [bundle.parse(b) for b in nbrs]
        return bundle.check(cfg, lab, nlabs, cfg.output, cfg.prd != TAUT)

    return SchemePair(name, bundle.prove, verifier, kind=kind,
                      params=params)


def _family_pair(bundle, name, family, **params):
    def verifier(cfg, own, nbrs):
        lab = bundle.parse(own)
        nlabs = [bundle.parse(b) for b in nbrs]
        return bundle.check(cfg, lab, nlabs)

    return SchemePair(name, bundle.prove, verifier, kind="pls",
                      params=params, yes_family=family.member)


def get_scheme(name, *, n=None, eps=Fraction(1, 1), delta=Fraction(1, 4),
               order=None):
    """Build the scheme registered under `name`.

    n: instance size, needed by schemes whose guarantee depends on it
    (the dominating-set factor is H(n)).  eps/delta: compiler parameters.
    """
    eps, delta = Fraction(eps), Fraction(delta)
    if name == "mwvc-apls2":
        return _opt_pair(bs.mwvc_base(), name, "apls", alpha=2)
    if name == "mvc-bipartite":
        return _opt_pair(bs.mvcb_base(), name, "pls", alpha=1)
    if name == "maxis-apls-delta":
        return _opt_pair(bs.maxis_base(), name, "apls", alpha="max-degree")
    if name == "maxis-bipartite":
        return _opt_pair(bs.maxisb_base(), name, "pls", alpha=1)
    if name == "mwds-apls-h":
        if n is None:
            raise ValueError("mwds-apls-h needs the instance size n")
        return _opt_pair(bs.mwds_base(n), name, "apls", alpha=f"H({n})", n=n)
    if name == "forest-pls":
        return _family_pair(bs.forest_base(), name, forest_family())
    if name == "dag-pls":
        return _family_pair(bs.dag_base(), name, dag_family())
    if name.startswith("kcolor-pls:"):
        k = int(name.split(":")[1])
        return _family_pair(bs.kcolor_base(k), name, kcolor_family(k), k=k)
    if name.startswith("arboricity-pls:"):
        c = int(name.split(":")[1])
        return _family_pair(bs.arb_base(c), name, arboricity_family(c), c=c)
    if name == "universal-pls:forest":
        return _family_pair(bs.uni_base(is_forest), name, forest_family())
    if name == "compiled-min:mwvc":
        return compile_min(mwvc_problem(), bs.mwvc_base(), eps,
                           local_min=mwvc_local_min, name=name, order=order)
    if name == "compiled-min:mwds":
        if n is None:
            raise ValueError("compiled-min:mwds needs the instance size n")
        return compile_min(mwds_problem(), bs.mwds_base(n), eps, name=name,
                           order=order)
    if name == "compiled-max:maxis":
        return compile_max(maxis_problem(), bs.maxis_base(), eps,
                           local_max=maxis_local_max, name=name, order=order)
    if name == "compiled-tpls:forest":
        return compile_cgf(bs.forest_base(), delta, name=name, order=order)
    if name == "compiled-tpls:2color":
        return compile_cgf(bs.kcolor_base(2), delta, name=name, order=order)
    if name == "compiled-tpls:dag":
        return compile_cgf(bs.dag_base(), delta, name=name, order=order)
    if name == "compiled-tpls:arboricity-2":
        return compile_cgf(bs.arb_base(2), delta, name=name, order=order)
    raise ValueError(f"unknown scheme: {name}")


SCHEME_NAMES = [
    "mwvc-apls2", "mvc-bipartite", "maxis-apls-delta", "maxis-bipartite",
    "mwds-apls-h", "forest-pls", "dag-pls", "kcolor-pls:2", "kcolor-pls:3",
    "arboricity-pls:2", "universal-pls:forest", "compiled-min:mwvc",
    "compiled-max:maxis", "compiled-tpls:forest", "compiled-tpls:2color",
    "compiled-tpls:dag", "compiled-tpls:arboricity-2",
]
