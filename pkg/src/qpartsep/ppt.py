"""Partial-transpose test on reduced two-qubit states.

A negative eigenvalue of the partial transpose certifies that the reduced
state is entangled, and therefore that the original N-qubit state is not
separable across the partition. A nonnegative spectrum proves nothing about
the N-qubit state, because the reduction discards information.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .partition import Partition, enumerate_partitions
from .qstate import DEFAULT_TOL, DensityMatrix, DimensionMismatch, Tolerances, as_matrix, hermitian_eigenvalues
from .reduction import ReducedState, reduce


class Classification(str, enum.Enum):
    NPT_INSEPARABLE = "NPT_INSEPARABLE"
    PPT_INCONCLUSIVE = "PPT_INCONCLUSIVE"

    def __str__(self):
        return self.value


def partial_transpose(m) -> np.ndarray:
    """Transpose on the first (r block) qubit: ``out[(i,j),(u,v)] = m[(u,j),(i,v)]``."""
    m = as_matrix(m)
    if m.shape != (4, 4):
        raise DimensionMismatch(f"partial transpose needs a 4x4 matrix, got {m.shape}")
    return m.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4).copy()


@dataclass(frozen=True)
class PptVerdict:
    partition: Partition
    pt_eigenvalues: tuple[float, ...]
    min_eig: float
    classification: Classification
    tolerance_used: float

    @property
    def inseparable(self) -> bool:
        return self.classification is Classification.NPT_INSEPARABLE

    def describe(self) -> str:
        label = self.partition.label
        if self.inseparable:
            return (f"{label}: partial transpose has eigenvalue {self.min_eig:.6g} < 0; "
                    f"the state is {label.replace('|', '-')}-inseparable, hence entangled")
        return (f"{label}: reduced state is PPT (min eigenvalue {self.min_eig:.6g}); "
                f"inconclusive, separability across this cut is not implied")


def ppt_verdict(rs: ReducedState, tol: Tolerances = DEFAULT_TOL) -> PptVerdict:
    eigs = hermitian_eigenvalues(partial_transpose(rs.mat), tol)
    lam = float(eigs[0])
    # boundary cases stay inconclusive: a necessary condition must not over-claim
    cls = Classification.NPT_INSEPARABLE if lam < -tol.psd_tol else Classification.PPT_INCONCLUSIVE
    return PptVerdict(rs.source_partition, tuple(float(e) for e in eigs), lam, cls, tol.psd_tol)


def check_partition(rho: DensityMatrix, p: Partition, tol: Tolerances = DEFAULT_TOL) -> PptVerdict:
    return ppt_verdict(reduce(rho, p, tol), tol)


def scan_partitions(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> list[PptVerdict]:
    """One verdict per unordered bipartition, in enumeration order."""
    return [check_partition(rho, p, tol) for p in enumerate_partitions(rho.n_qubits)]
