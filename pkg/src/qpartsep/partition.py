"""Bipartitions of the qubit labels {1..N}, their sub-splits, and the basis
relabeling that brings a partition's qubits into block order."""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qstate import DensityMatrix, DimensionMismatch, DEFAULT_TOL, Tolerances, validate_density

LETTERS = string.ascii_uppercase


class PartitionError(ValueError):
    """Malformed partition or partition label."""


def _check_block(block, name):
    if not block:
        raise PartitionError(f"{name} is empty")
    if any(b >= a for b, a in zip(block, block[1:])):
        raise PartitionError(f"{name} {list(block)} is not strictly ascending")


@dataclass(frozen=True)
class Partition:
    n: int
    r_block: tuple[int, ...]
    s_block: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r_block", tuple(int(k) for k in self.r_block))
        object.__setattr__(self, "s_block", tuple(int(k) for k in self.s_block))
        if self.n < 2:
            raise PartitionError(f"a bipartition needs at least 2 qubits, got {self.n}")
        _check_block(self.r_block, "r_block")
        _check_block(self.s_block, "s_block")
        if set(self.r_block) & set(self.s_block):
            raise PartitionError("blocks overlap")
        if set(self.r_block) | set(self.s_block) != set(range(1, self.n + 1)):
            raise PartitionError(f"blocks do not cover qubits 1..{self.n}")

    @classmethod
    def from_r_block(cls, n: int, r_block) -> "Partition":
        r = tuple(sorted(r_block))
        return cls(n, r, tuple(k for k in range(1, n + 1) if k not in r))

    @property
    def p(self) -> int:
        return len(self.r_block)

    @property
    def r_mask(self) -> int:
        """Bitmask of the r block with qubit k at bit ``k - 1``."""
        return sum(1 << (k - 1) for k in self.r_block)

    def swapped(self) -> "Partition":
        return Partition(self.n, self.s_block, self.r_block)

    def normalized(self) -> "Partition":
        """The orientation with qubit 1 in the r block."""
        return self if 1 in self.r_block else self.swapped()

    def is_natural_order(self) -> bool:
        return self.r_block + self.s_block == tuple(range(1, self.n + 1))

    @property
    def label(self) -> str:
        return format_label(self)

    def __str__(self):
        return self.label


def enumerate_partitions(n: int) -> list[Partition]:
    """All 2^(n-1) - 1 unordered bipartitions, qubit 1 always in the r block."""
    if n < 2:
        raise PartitionError(f"need n >= 2, got {n}")
    out = []
    for mask in range(1, 1 << n, 2):
        if mask == (1 << n) - 1:
            continue
        out.append(Partition.from_r_block(n, [k + 1 for k in range(n) if mask >> k & 1]))
    return out


# -- sub-splits ------------------------------------------------------------

@dataclass(frozen=True)
class SubSplit:
    """A partition refined into ``[(r'), (r'')] || [(s'), (s'')]``.

    Canonical form keeps the first qubit of each block in the primed part,
    which picks one representative out of the four relabelings that give
    the same 4x4 submatrix up to a simultaneous row/column flip.
    """

    parent: Partition
    r_prime: tuple[int, ...]
    r_dprime: tuple[int, ...]
    s_prime: tuple[int, ...]
    s_dprime: tuple[int, ...]

    def __post_init__(self):
        for name in ("r_prime", "r_dprime", "s_prime", "s_dprime"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))
        par = self.parent
        if set(self.r_prime) | set(self.r_dprime) != set(par.r_block) or set(self.r_prime) & set(self.r_dprime):
            raise PartitionError("r_prime/r_dprime do not split r_block")
        if set(self.s_prime) | set(self.s_dprime) != set(par.s_block) or set(self.s_prime) & set(self.s_dprime):
            raise PartitionError("s_prime/s_dprime do not split s_block")
        if par.r_block[0] not in self.r_prime or par.s_block[0] not in self.s_prime:
            raise PartitionError("sub-split is not in canonical form")

    @property
    def label(self) -> str:
        def part(ks):
            return f"({_block_text(ks, self.parent.n)})" if ks else "∅"

        return (f"[{part(self.r_prime)},{part(self.r_dprime)}]"
                f"||[{part(self.s_prime)},{part(self.s_dprime)}]")


def _block_splits(block):
    """(primed, double-primed) pairs of a block, first element pinned primed.

    Ordered by the double-primed subset read as a binary number with the
    block's first element most significant.
    """
    rest = block[1:]
    m = len(rest)
    out = []
    for mask in range(1 << m):
        dprime = tuple(rest[t] for t in range(m) if mask >> (m - 1 - t) & 1)
        prime = tuple(k for k in block if k not in dprime)
        out.append((prime, dprime))
    return out


@lru_cache(maxsize=None)
def _subsplits(p: Partition) -> tuple[SubSplit, ...]:
    return tuple(
        SubSplit(p, rp, rd, sp, sd)
        for rp, rd in _block_splits(p.r_block)
        for sp, sd in _block_splits(p.s_block)
    )


def enumerate_subsplits(p: Partition) -> list[SubSplit]:
    """The 2^(N-2) canonical sub-splits of ``p`` in deterministic order."""
    return list(_subsplits(p))


# -- reordering ------------------------------------------------------------

@lru_cache(maxsize=None)
def _permutation(p: Partition) -> np.ndarray:
    # perm[new] = old: slot t of the new index holds qubit order[t]
    n = p.n
    order = p.r_block + p.s_block
    old = np.zeros(1 << n, dtype=np.int64)
    new = np.arange(1 << n)
    for t, q in enumerate(order):
        bit = (new >> (n - 1 - t)) & 1
        old |= bit << (n - q)
    old.flags.writeable = False
    return old


def basis_permutation(p: Partition) -> np.ndarray:
    """Index map ``perm`` with ``S|perm[b]> = |b>``."""
    return _permutation(p)


def permutation_matrix(p: Partition) -> np.ndarray:
    """The 0/1 unitary ``S`` with ``S|i_1..i_N> = |i_r1..i_rP i_s1..i_s(N-P)>``."""
    perm = _permutation(p)
    dim = perm.size
    s = np.zeros((dim, dim), dtype=np.complex128)
    s[np.arange(dim), perm] = 1.0
    return s


def reorder(rho: DensityMatrix, p: Partition, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """``S rho S^dagger``: the state written in the basis ordered by ``p``."""
    if rho.n_qubits != p.n:
        raise DimensionMismatch(f"{rho.n_qubits}-qubit state, {p.n}-qubit partition")
    perm = _permutation(p)
    return validate_density(rho.mat[np.ix_(perm, perm)], p.n, tol)


def inverse_reorder(rho: DensityMatrix, p: Partition, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Undo :func:`reorder`: ``S^dagger rho S``."""
    if rho.n_qubits != p.n:
        raise DimensionMismatch(f"{rho.n_qubits}-qubit state, {p.n}-qubit partition")
    inv = np.argsort(_permutation(p))
    return validate_density(rho.mat[np.ix_(inv, inv)], p.n, tol)


# -- labels ----------------------------------------------------------------

def _block_text(block, n):
    if n <= len(LETTERS):
        return "".join(LETTERS[k - 1] for k in block)
    return ",".join(str(k) for k in block)


def format_label(p: Partition) -> str:
    """``"AC|BD"`` for up to 26 qubits, ``"1,3|2,4"`` beyond."""
    return f"{_block_text(p.r_block, p.n)}|{_block_text(p.s_block, p.n)}"


_TOKEN = re.compile(r"[A-Z]+|[0-9]+|\S")


def _parse_block(text: str, where: str) -> list[int]:
    out = []
    for tok in _TOKEN.findall(text.replace(",", " ")):
        if tok.isdigit():
            out.append(int(tok))
        elif tok.isascii() and tok.isupper():
            out.extend(LETTERS.index(ch) + 1 for ch in tok)
        else:
            raise PartitionError(f"unexpected character {tok!r} in {where} block")
    if not out:
        raise PartitionError(f"{where} block is empty")
    if len(set(out)) != len(out):
        raise PartitionError(f"{where} block repeats a qubit")
    return sorted(out)


def parse_label(text: str, n: int | None = None) -> Partition:
    """Parse ``"A|BC"``, ``"A C | B D"`` or ``"1,3|2,4"``.

    Without ``n`` the qubit count is the largest index mentioned.
    """
    parts = text.split("|")
    if len(parts) != 2:
        raise PartitionError(f"expected exactly one '|' in {text!r}")
    r = _parse_block(parts[0], "left")
    s = _parse_block(parts[1], "right")
    if min(r + s) < 1:
        raise PartitionError("qubit indices start at 1")
    if n is None:
        n = max(r + s)
    if max(r + s) > n:
        raise PartitionError(f"partition {text!r} names qubit {max(r + s)} but the state has {n} qubits")
    try:
        return Partition(n, tuple(r), tuple(s))
    except PartitionError as exc:
        raise PartitionError(f"{text!r}: {exc}") from None

