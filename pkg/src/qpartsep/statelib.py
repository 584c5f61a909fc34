"""Example states, seeded random states, and assembly of N-qubit states
with a prescribed reduction.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``. A seed may
be any integer (reduced mod 2^64) or an existing ``Generator``, which is then
advanced in place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .partition import Partition, enumerate_subsplits, inverse_reorder
from .qstate import (
    DEFAULT_TOL,
    DensityMatrix,
    QStateError,
    Tolerances,
    validate_density,
)
from .reduction import string_table


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(int(seed) % 2**64))


def _check_x(x: float):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"singlet fraction must lie in [0, 1], got {x!r}")


def werner(x: float) -> DensityMatrix:
    """Singlet fraction ``x`` mixed with the maximally mixed two-qubit state."""
    _check_x(x)
    singlet = np.zeros((4, 4))
    singlet[1, 1] = singlet[2, 2] = 0.5
    singlet[1, 2] = singlet[2, 1] = -0.5
    return validate_density(x * singlet + (1 - x) / 4 * np.eye(4), 2)


def example_prime(x: float) -> DensityMatrix:
    """Three-qubit state whose A|BC reduction is ``werner(x)``."""
    _check_x(x)
    m = np.zeros((8, 8))
    for k in (1, 2, 5, 6):
        m[k, k] = (1 - x) / 4
    m[3, 3] = m[4, 4] = x / 2
    m[3, 4] = m[4, 3] = -x / 2
    return validate_density(m, 3)


def example_dprime(x: float) -> DensityMatrix:
    """Three-qubit state whose B|AC reduction is ``werner(x)``."""
    _check_x(x)
    m = np.zeros((8, 8))
    for k in (1, 3, 4, 6):
        m[k, k] = (1 - x) / 4
    m[2, 2] = m[5, 5] = x / 2
    m[2, 5] = m[5, 2] = -x / 2
    return validate_density(m, 3)


def ghz(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one qubit")
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[0] = psi[-1] = 2 ** -0.5
    return psi


def basis_product(bits) -> np.ndarray:
    """Amplitudes of the product basis state ``|b_1 b_2 ... b_N>``."""
    bits = list(bits)
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError(f"expected a nonempty bit string, got {bits!r}")
    psi = np.zeros(1 << len(bits), dtype=np.complex128)
    psi[int("".join(map(str, bits)), 2)] = 1.0
    return psi


def _check_n(n: int, cap: int = 12):
    if not 1 <= n <= cap:
        raise ValueError(f"qubit count must be in 1..{cap}, got {n}")


def random_pure(n: int, seed) -> np.ndarray:
    """Normalized complex Gaussian amplitudes (unitarily invariant)."""
    _check_n(n)
    rng = rng_from(seed)
    dim = 1 << n
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


def _random_mixed_matrix(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    dim = 1 << n
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must be in 1..{dim}, got {rank}")
    vecs = np.stack([random_pure(n, rng) for _ in range(rank)], axis=1)
    w = rng.standard_exponential(rank)
    w /= w.sum()
    m = (vecs * w) @ vecs.conj().T
    return 0.5 * (m + m.conj().T)


def random_mixed(n: int, rank: int, seed, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Convex mixture of ``rank`` random pure states with flat Dirichlet weights."""
    _check_n(n)
    return validate_density(_random_mixed_matrix(n, rank, rng_from(seed)), n, tol)


def random_partition_separable(p: Partition, terms: int, seed, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """A random state that is separable across ``p`` by construction.

    Each term is ``rho_r (x) rho_s`` in the block-ordered basis, with factors
    of random rank; the mixture is mapped back to the natural qubit order.
    """
    _check_n(p.n)
    if terms < 1:
        raise ValueError("need at least one term")
    rng = rng_from(seed)
    pr, ps = len(p.r_block), len(p.s_block)
    w = rng.standard_exponential(terms)
    w /= w.sum()
    acc = np.zeros((1 << p.n, 1 << p.n), dtype=np.complex128)
    for weight in w:
        a = _random_mixed_matrix(pr, int(rng.integers(1, (1 << pr) + 1)), rng)
        b = _random_mixed_matrix(ps, int(rng.integers(1, (1 << ps) + 1)), rng)
        acc += weight * np.kron(a, b)
    ordered = validate_density(acc, p.n, tol)
    return inverse_reorder(ordered, p, tol)


# -- construction from two-qubit blocks ------------------------------------

class ConstructorError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructorSpec:
    """Weighted two-qubit blocks, one per sub-split of ``partition``,
    listed in :func:`enumerate_subsplits` order."""

    partition: Partition
    blocks: tuple[tuple[float, np.ndarray], ...]

    def __post_init__(self):
        blocks = tuple((float(w), np.asarray(s, dtype=np.complex128)) for w, s in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        expected = 1 << (self.partition.n - 2)
        if len(blocks) != expected:
            raise ConstructorError(f"{self.partition.label} needs {expected} blocks, got {len(blocks)}")
        for k, (w, sigma) in enumerate(blocks):
            if not 0.0 < w <= 1.0:
                raise ConstructorError(f"block {k}: weight {w!r} outside (0, 1]")
            try:
                validate_density(sigma, 2)
            except QStateError as exc:
                raise ConstructorError(f"block {k}: {exc}") from exc
        total = sum(w for w, _ in blocks)
        if abs(total - 1.0) > 1e-12:
            raise ConstructorError(f"weights sum to {total!r}, expected 1")

    def target(self) -> np.ndarray:
        """The reduction the constructed state will have: sum of p_m sigma_m."""
        out = np.zeros((4, 4), dtype=np.complex128)
        for w, sigma in self.blocks:
            out += w * sigma
        return out


def construct_inseparable(spec: ConstructorSpec, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Place ``p_m sigma_m`` on the rows/columns of sub-split m, zero elsewhere.

    The sub-split string sets tile the basis, so the result is a direct sum
    of the weighted blocks up to a basis permutation. When the summed target
    is NPT, the state is inseparable across ``spec.partition``.
    """
    p = spec.partition
    dim = 1 << p.n
    m = np.zeros((dim, dim), dtype=np.complex128)
    for strings, (w, sigma) in zip(string_table(p), spec.blocks):
        m[np.ix_(strings, strings)] = w * sigma
    return validate_density(m, p.n, tol)


def random_constructor_spec(p: Partition, seed) -> ConstructorSpec:
    """Random blocks of random rank (1 to 4) with exponential-draw weights."""
    rng = rng_from(seed)
    k = len(enumerate_subsplits(p))
    w = rng.standard_exponential(k)
    w /= w.sum()
    # guard against float drift in the validated sum
    w[-1] = 1.0 - w[:-1].sum()
    blocks = tuple((float(wi), _random_mixed_matrix(2, int(rng.integers(1, 5)), rng)) for wi in w)
    return ConstructorSpec(p, blocks)
