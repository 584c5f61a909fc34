"""Reduction of an N-qubit state to a two-qubit state for a bipartition.

For a sub-split ``[(r'),(r'')]||[(s'),(s'')]`` the pair ``(i, j)`` selects
the basis string that carries ``i`` on r', ``1-i`` on r'', ``j`` on s' and
``1-j`` on s''. The four strings index a 4x4 submatrix of the state; the
reduced state is the sum of these submatrices over all canonical sub-splits.
Rows and columns of every 4x4 object here are packed as ``2*i + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .partition import Partition, SubSplit, enumerate_subsplits
from .qstate import (
    DEFAULT_TOL,
    DensityMatrix,
    DimensionMismatch,
    NotNormalized,
    Tolerances,
    qubit_bit,
    validate_density,
)


def basis_strings(ss: SubSplit) -> np.ndarray:
    """The four basis indices ``x(i, j)`` in row order (00, 01, 10, 11)."""
    n = ss.parent.n
    mask = lambda ks: sum(qubit_bit(n, k) for k in ks)
    rp, rd = mask(ss.r_prime), mask(ss.r_dprime)
    sp, sd = mask(ss.s_prime), mask(ss.s_dprime)
    out = np.empty(4, dtype=np.int64)
    for i in (0, 1):
        for j in (0, 1):
            out[2 * i + j] = (rp if i else rd) | (sp if j else sd)
    return out


@lru_cache(maxsize=None)
def _string_table(p: Partition) -> np.ndarray:
    table = np.stack([basis_strings(ss) for ss in enumerate_subsplits(p)])
    table.flags.writeable = False
    return table


def string_table(p: Partition) -> np.ndarray:
    """``(2^(N-2), 4)`` array: row m holds :func:`basis_strings` of sub-split m."""
    return _string_table(p)


def _check_dims(rho: DensityMatrix, n: int):
    if rho.n_qubits != n:
        raise DimensionMismatch(f"{rho.n_qubits}-qubit state, {n}-qubit partition")


def submatrix(rho: DensityMatrix, ss: SubSplit) -> np.ndarray:
    _check_dims(rho, ss.parent.n)
    x = basis_strings(ss)
    return rho.mat[np.ix_(x, x)].copy()


@dataclass(frozen=True)
class ReducedState:
    source_partition: Partition
    state: DensityMatrix = field(repr=False)

    @property
    def mat(self) -> np.ndarray:
        return self.state.mat


def reduce_matrix(mat: np.ndarray, p: Partition) -> np.ndarray:
    """Unvalidated sum of sub-split blocks of any ``2^N x 2^N`` array."""
    table = _string_table(p)
    blocks = mat[table[:, :, None], table[:, None, :]]
    out = np.zeros((4, 4), dtype=np.complex128)
    for block in blocks:
        out += block
    return out


def reduce(rho: DensityMatrix, p: Partition, tol: Tolerances = DEFAULT_TOL) -> ReducedState:
    _check_dims(rho, p.n)
    return ReducedState(p, validate_density(reduce_matrix(rho.mat, p), 2, tol))


@dataclass(frozen=True)
class PureReductionTerm:
    """One sub-split's share of a pure state: ``weight * |state><state|``.

    ``is_zero`` marks a component with no amplitude; its ``state`` is the
    zero vector and its weight 0.
    """

    subsplit: SubSplit
    weight: float
    state: np.ndarray = field(repr=False)
    is_zero: bool = False

    def projector(self) -> np.ndarray:
        return self.weight * np.outer(self.state, self.state.conj())


def reduce_pure(amplitudes, p: Partition, norm_tol: float = 1e-10) -> list[PureReductionTerm]:
    psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if psi.size != 1 << p.n:
        raise DimensionMismatch(f"{psi.size} amplitudes for a {p.n}-qubit partition")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > norm_tol:
        raise NotNormalized(f"state has squared norm {norm!r}")
    terms = []
    for ss, strings in zip(enumerate_subsplits(p), _string_table(p)):
        phi = psi[strings]
        weight = float(np.vdot(phi, phi).real)
        if weight == 0.0:
            terms.append(PureReductionTerm(ss, 0.0, np.zeros(4, dtype=np.complex128), True))
        else:
            terms.append(PureReductionTerm(ss, weight, phi / np.sqrt(weight)))
    return terms


def mixture_of_terms(terms) -> np.ndarray:
    out = np.zeros((4, 4), dtype=np.complex128)
    for t in terms:
        out += t.projector()
    return out
