"""Dense density matrices for N qubits and the small amount of linear algebra
the rest of the package needs.

Matrices are plain ``numpy`` complex128 arrays. Basis index ``b`` of an
N-qubit space encodes the local states ``i_1 ... i_N`` with qubit 1 in the
most significant bit, so ``|i_1 i_2 ... i_N>`` reads left to right as a
binary number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class QStateError(ValueError):
    """Base class for invalid matrices and states."""


class DimensionMismatch(QStateError):
    pass


class NotHermitian(QStateError):
    pass


class TraceNotOne(QStateError):
    pass


class NotPositive(QStateError):
    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NotNormalized(QStateError):
    pass


class NoConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class Tolerances:
    herm_tol: float = 1e-10
    trace_tol: float = 1e-10
    psd_tol: float = 1e-9
    eig_tol: float = 1e-12

    def __post_init__(self):
        for name in ("herm_tol", "trace_tol", "psd_tol", "eig_tol"):
            value = getattr(self, name)
            if not value >= 0:
                raise ValueError(f"{name} must be nonnegative, got {value!r}")


DEFAULT_TOL = Tolerances()

MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.complex128, copy=True)
    m.flags.writeable = False
    return m


# -- basis indices ---------------------------------------------------------

def index_bits(value: int, n: int) -> tuple[int, ...]:
    """Local states ``(i_1, ..., i_N)`` of basis index ``value``."""
    if not 0 <= value < 1 << n:
        raise ValueError(f"basis index {value} out of range for {n} qubits")
    return tuple((value >> (n - 1 - k)) & 1 for k in range(n))


def bits_index(bits) -> int:
    """Inverse of :func:`index_bits`."""
    value = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        value = (value << 1) | b
    return value


def qubit_bit(n: int, qubit: int) -> int:
    """Bit weight of 1-based ``qubit`` within an ``n``-qubit basis index."""
    return 1 << (n - qubit)


# -- elementary algebra ----------------------------------------------------

def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def conj_transpose(a) -> np.ndarray:
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    # numpy's block layout (row of a major) matches the qubit-1-MSB ordering
    return np.kron(as_matrix(a), as_matrix(b))


def is_hermitian(a: np.ndarray, tol: float) -> bool:
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pair schedule covering every (p, q), p < q, once per sweep.

    Circle-method tournament: each round is a set of disjoint pairs, so
    its rotations commute and can be applied together.
    """
    players = list(range(n + (n % 2)))
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [tuple(sorted((players[k], players[m - 1 - k]))) for k in range(m // 2)]
        pairs = [pq for pq in pairs if pq[1] < n]
        if pairs:
            rounds.append((np.array([a for a, _ in pairs]), np.array([b for _, b in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def hermitian_eigenvalues(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in ascending order.

    Cyclic complex Jacobi with a round-robin pivot order. Each rotation
    strips the phase of ``a[p, q]`` and then applies the real rotation that
    zeroes it. Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol.eig_tol``; ``MAX_SWEEPS`` sweeps without that raise NoConvergence.
    """
    m = as_matrix(a)
    if not is_hermitian(m, tol.herm_tol):
        raise NotHermitian("matrix is not Hermitian")
    n = m.shape[0]
    # symmetrize so roundoff in the input cannot bias the diagonal
    m = 0.5 * (m + m.conj().T)
    off_diag = ~np.eye(n, dtype=bool)
    schedule = _round_robin(n)
    sweeps = 0
    while np.linalg.norm(m[off_diag]) >= tol.eig_tol:
        if sweeps == MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        sweeps += 1
        for p, q in schedule:
            apq = m[p, q]
            mag = np.abs(apq)
            live = mag > 0.0
            if not live.any():
                continue
            safe = np.where(live, mag, 1.0)
            phase = np.where(live, apq / safe, 1.0)
            tau = (m[q, q].real - m[p, p].real) / (2.0 * safe)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(live, t, 0.0)
            c = 1.0 / np.hypot(1.0, t)
            s = t * c
            col_p, col_q = m[:, p], m[:, q]
            m[:, p] = c * col_p - (s * phase.conj()) * col_q
            m[:, q] = s * col_p + (c * phase.conj()) * col_q
            row_p, row_q = m[p, :], m[q, :]
            m[p, :] = c[:, None] * row_p - (s * phase)[:, None] * row_q
            m[q, :] = s[:, None] * row_p + (c * phase)[:, None] * row_q
            m[p, q] = 0.0
            m[q, p] = 0.0
            m[p, p] = m[p, p].real
            m[q, q] = m[q, q].real
    return np.sort(np.diag(m).real)


# -- density matrices ------------------------------------------------------

@dataclass(frozen=True)
class DensityMatrix:
    """Validated N-qubit state. Construct through :func:`validate_density`."""

    n_qubits: int
    mat: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def eigenvalues(self, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
        return hermitian_eigenvalues(self.mat, tol)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.n_qubits == other.n_qubits and np.array_equal(self.mat, other.mat)

    __hash__ = None


def _min_eigenvalue(m: np.ndarray, tol: Tolerances) -> float:
    try:
        return float(hermitian_eigenvalues(m, tol)[0])
    except NoConvergence:
        return float(np.linalg.eigvalsh(m)[0])


def check_positive(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> None:
    """Raise :class:`NotPositive` unless the smallest eigenvalue is >= -psd_tol.

    A Cholesky factorization of ``m + psd_tol * I`` decides the common
    (positive) case; the eigenvalue is only computed to report a failure.
    """
    shifted = m + tol.psd_tol * np.eye(m.shape[0])
    try:
        np.linalg.cholesky(shifted)
        return
    except np.linalg.LinAlgError:
        pass
    lam = _min_eigenvalue(m, tol)
    if lam < -tol.psd_tol:
        raise NotPositive(f"matrix is not positive semidefinite (min eigenvalue {lam:.3e})", lam)


def validate_density(mat, n_qubits: int, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    m = as_matrix(mat)
    if n_qubits < 1 or m.shape[0] != 1 << n_qubits:
        raise DimensionMismatch(f"{m.shape[0]}x{m.shape[0]} matrix is not a {n_qubits}-qubit operator")
    if not np.all(np.isfinite(m)):
        raise QStateError("matrix has non-finite entries")
    if not is_hermitian(m, tol.herm_tol):
        dev = float(np.max(np.abs(m - m.conj().T)))
        raise NotHermitian(f"matrix is not Hermitian (max deviation {dev:.3e})")
    tr = np.trace(m)
    if abs(tr - 1.0) > tol.trace_tol:
        raise TraceNotOne(f"trace is {tr.real:.17g}{tr.imag:+.3g}j, expected 1")
    check_positive(m, tol)
    return DensityMatrix(n_qubits, _frozen(m))


def pure_density(amplitudes, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """``|psi><psi|`` for a normalized amplitude vector."""
    psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
    n = psi.size.bit_length() - 1
    if psi.size != 1 << n or n < 1:
        raise DimensionMismatch(f"{psi.size} amplitudes is not a qubit register")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > 1e-10:
        raise NotNormalized(f"state has squared norm {norm!r}")
    return validate_density(np.outer(psi, psi.conj()), n, tol)


def maximally_mixed(n: int) -> DensityMatrix:
    dim = 1 << n
    return validate_density(np.eye(dim) / dim, n)
