"""plslab: a laboratory for locally restricted proof labeling schemes."""

from .graph import (ConfiguredGraph, GuardedGraph, LocalityViolation,
                    NodeConfig, PortInfo, inner, inner2, n2, rim)
from .scheme import (SchemePair, Verdict, default_budget, dump_labels,
                     parse_labels, proof_size, proof_size_fit,
                     run_prover_instrumented, run_slocal, run_verifier)

__all__ = [
    "ConfiguredGraph", "GuardedGraph", "LocalityViolation", "NodeConfig",
    "PortInfo", "inner", "inner2", "rim", "n2",
    "SchemePair", "Verdict", "default_budget", "dump_labels", "parse_labels",
    "proof_size", "proof_size_fit", "run_prover_instrumented", "run_slocal",
    "run_verifier",
]
