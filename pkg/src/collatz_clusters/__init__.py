"""Total-stopping-time clusters in the 3x+1 problem.

Library layout:

* :mod:`~collatz_clusters.core` -- the shortcut map T, iterates,
  trajectories, stopping times, 2-adic decompositions.
* :mod:`~collatz_clusters.cfunc` -- the classifier C (recursion + closed
  form).
* :mod:`~collatz_clusters.theorems` -- executable theorem/corollary
  predicates and the parameterized integer families.
* :mod:`~collatz_clusters.scanner` -- sieve, cluster runs, converse
  counterexample search, range verification, cache files.
* :mod:`~collatz_clusters.cli` -- the ``collatz-clusters`` command.

Hot loops run on compiled Cython kernels when available; ``BACKEND`` tells
which implementation is active ("compiled" or "pure").
"""

from ._backend import BACKEND
from .cfunc import c_closed, c_prop1_checks, c_prop2_check, c_recursive
from .core import (
    DEFAULT_MAX_STEPS,
    OddDecomposition,
    Resolution,
    SigmaKind,
    SigmaValue,
    TrajectoryRecord,
    Uint128Overflow,
    collatz_t,
    decompose_odd,
    iterate,
    parity_vector,
    total_stopping_time,
    trajectory,
    v2,
)
from .scanner import (
    ClusterRun,
    ConverseWitness,
    SigmaTable,
    coincidence_index,
    find_clusters,
    find_converse_counterexamples,
    read_cache,
    run_verification_suite,
    sieve_sigma,
    write_cache,
)
from .theorems import (
    CoincidenceResult,
    EquivalenceViolation,
    FamilyMember,
    PreconditionViolation,
    Theorem1Classification,
    VerificationReport,
    corollary2_cluster_predicate,
    corollary8_prefix_check,
    corollary_verify,
    family_generate,
    lemma2_is_exceptional,
    theorem1_classify,
    theorem2_coincides,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_MAX_STEPS",
    "ClusterRun",
    "CoincidenceResult",
    "ConverseWitness",
    "EquivalenceViolation",
    "FamilyMember",
    "OddDecomposition",
    "PreconditionViolation",
    "Resolution",
    "SigmaKind",
    "SigmaTable",
    "SigmaValue",
    "Theorem1Classification",
    "TrajectoryRecord",
    "Uint128Overflow",
    "VerificationReport",
    "c_closed",
    "c_prop1_checks",
    "c_prop2_check",
    "c_recursive",
    "coincidence_index",
    "collatz_t",
    "corollary2_cluster_predicate",
    "corollary8_prefix_check",
    "corollary_verify",
    "decompose_odd",
    "family_generate",
    "find_clusters",
    "find_converse_counterexamples",
    "iterate",
    "lemma2_is_exceptional",
    "parity_vector",
    "read_cache",
    "run_verification_suite",
    "sieve_sigma",
    "theorem1_classify",
    "theorem2_coincides",
    "total_stopping_time",
    "trajectory",
    "v2",
    "write_cache",
]
