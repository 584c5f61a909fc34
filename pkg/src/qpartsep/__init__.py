"""Reduction of N-qubit density matrices to two-qubit states and the
partial-transpose test for separability across a bipartition."""

from .partition import (
    Partition,
    SubSplit,
    enumerate_partitions,
    enumerate_subsplits,
    inverse_reorder,
    parse_label,
    permutation_matrix,
    reorder,
)
from .ppt import Classification, PptVerdict, partial_transpose, ppt_verdict, scan_partitions
from .qstate import (
    DensityMatrix,
    Tolerances,
    conj_transpose,
    hermitian_eigenvalues,
    kron,
    mat_mul,
    pure_density,
    validate_density,
)
from .reduction import PureReductionTerm, ReducedState, reduce, reduce_pure, submatrix
from .statelib import (
    ConstructorSpec,
    construct_inseparable,
    example_dprime,
    example_prime,
    ghz,
    random_mixed,
    random_partition_separable,
    random_pure,
    werner,
)

__all__ = [
    "Classification",
    "ConstructorSpec",
    "DensityMatrix",
    "Partition",
    "PptVerdict",
    "PureReductionTerm",
    "ReducedState",
    "SubSplit",
    "Tolerances",
    "conj_transpose",
    "construct_inseparable",
    "enumerate_partitions",
    "enumerate_subsplits",
    "example_dprime",
    "example_prime",
    "ghz",
    "hermitian_eigenvalues",
    "inverse_reorder",
    "kron",
    "mat_mul",
    "parse_label",
    "partial_transpose",
    "permutation_matrix",
    "ppt_verdict",
    "pure_density",
    "random_mixed",
    "random_partition_separable",
    "random_pure",
    "reduce",
    "reduce_pure",
    "reorder",
    "scan_partitions",
    "submatrix",
    "validate_density",
    "werner",
]

__version__ = "0.1.0"
