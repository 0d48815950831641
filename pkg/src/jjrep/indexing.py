"""Basis labels for the five representations and the maps between them.

Representations
---------------
FOCK    (alpha, beta) in N x N, pair occupation of the two superconductors.
ZN      (n, m) in Z x N, n = alpha - beta, m = min(alpha, beta).
BRANCH  (branch, p, m): even n = 2p or odd n = 2p + 1, m as in ZN.
ZZ      (p, r) in Z x Z, odd branch folded onto r <= -1 via r = -m - 1.
CIRCLE  (p, r) Fourier modes e^{i p theta1} e^{i r theta2}; same labels as ZZ.

Every representation enumerates the same physical states, so a sector of
total pair number <= K has the same size everywhere and the canonical
ordering is shared: ascending total number, then the fiber order
p = k, k-1, ... inside each fiber.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterator, NamedTuple

K_MAX = 200


class Rep(enum.Enum):
    FOCK = "fock"
    ZN = "zn"
    BRANCH = "branch"
    ZZ = "zz"
    CIRCLE = "circle"


class Branch(enum.IntEnum):
    EVEN = 0
    ODD = 1


class FockIndex(NamedTuple):
    alpha: int
    beta: int


class LatticeIndex(NamedTuple):
    n: int
    m: int


class BranchIndex(NamedTuple):
    branch: Branch
    p: int
    m: int


class ZZIndex(NamedTuple):
    p: int
    r: int


# Fock <-> ZN ---------------------------------------------------------------

def fock_to_lattice(idx: tuple[int, int]) -> LatticeIndex:
    a, b = idx
    if a < 0 or b < 0:
        raise ValueError(f"Fock occupations must be non-negative, got {idx}")
    if a >= b:
        return LatticeIndex(a - b, b)
    return LatticeIndex(a - b, a)


def lattice_to_fock(idx: tuple[int, int]) -> FockIndex:
    n, m = idx
    if m < 0:
        raise ValueError(f"lattice index needs m >= 0, got {idx}")
    if n >= 0:
        return FockIndex(m + n, m)
    return FockIndex(m, m - n)


# ZN <-> Branch <-> ZZ ----------------------------------------------------

def lattice_to_branch(idx: tuple[int, int]) -> BranchIndex:
    n, m = idx
    if m < 0:
        raise ValueError(f"lattice index needs m >= 0, got {idx}")
    if n % 2 == 0:
        return BranchIndex(Branch.EVEN, n // 2, m)
    return BranchIndex(Branch.ODD, (n - 1) // 2, m)


def branch_to_lattice(idx: BranchIndex) -> LatticeIndex:
    br, p, m = idx
    if m < 0:
        raise ValueError(f"branch index needs m >= 0, got {idx}")
    return LatticeIndex(2 * p if br == Branch.EVEN else 2 * p + 1, m)


def branch_to_zz(idx: BranchIndex) -> ZZIndex:
    br, p, m = idx
    if m < 0:
        raise ValueError(f"branch index needs m >= 0, got {idx}")
    return ZZIndex(p, m if br == Branch.EVEN else -m - 1)


def zz_to_branch(idx: tuple[int, int]) -> BranchIndex:
    p, r = idx
    if r >= 0:
        return BranchIndex(Branch.EVEN, p, r)
    return BranchIndex(Branch.ODD, p, -r - 1)


def fock_to_zz(idx: tuple[int, int]) -> ZZIndex:
    """Composite map Fock -> ZN -> Branch -> ZZ on labels."""
    return branch_to_zz(lattice_to_branch(fock_to_lattice(idx)))


def zz_to_fock(idx: tuple[int, int]) -> FockIndex:
    return lattice_to_fock(branch_to_lattice(zz_to_branch(idx)))


# Total number -------------------------------------------------------------

def total_number_fock(idx: tuple[int, int]) -> int:
    return idx[0] + idx[1]


def total_number_lattice(idx: tuple[int, int]) -> int:
    return abs(idx[0]) + 2 * idx[1]


def total_number_branch(idx: BranchIndex) -> int:
    br, p, m = idx
    return abs(2 * p + int(br)) + 2 * m


def total_number_zz(idx: tuple[int, int]) -> int:
    """Total pair number on Z x Z, piecewise in the signs of p and r."""
    p, r = idx
    if r >= 0:
        return 2 * (p + r) if p >= 0 else 2 * (-p + r)
    if p >= 0:
        return 2 * (p - r) - 1
    return -2 * (p + r + 1) - 1


_TO_FOCK = {
    Rep.FOCK: lambda i: FockIndex(*i),
    Rep.ZN: lattice_to_fock,
    Rep.BRANCH: lambda i: lattice_to_fock(branch_to_lattice(BranchIndex(*i))),
    Rep.ZZ: zz_to_fock,
    Rep.CIRCLE: zz_to_fock,
}

_FROM_FOCK = {
    Rep.FOCK: lambda i: FockIndex(*i),
    Rep.ZN: fock_to_lattice,
    Rep.BRANCH: lambda i: lattice_to_branch(fock_to_lattice(i)),
    Rep.ZZ: fock_to_zz,
    Rep.CIRCLE: fock_to_zz,
}

_TOTAL = {
    Rep.FOCK: total_number_fock,
    Rep.ZN: total_number_lattice,
    Rep.BRANCH: lambda i: total_number_branch(BranchIndex(*i)),
    Rep.ZZ: total_number_zz,
    Rep.CIRCLE: total_number_zz,
}


def to_fock(rep: Rep, idx) -> FockIndex:
    return _TO_FOCK[rep](idx)


def from_fock(rep: Rep, idx) -> tuple:
    return _FROM_FOCK[rep](idx)


def convert(idx, src: Rep, dst: Rep) -> tuple:
    return from_fock(dst, to_fock(src, idx))


def total_number(rep: Rep, idx) -> int:
    return _TOTAL[rep](idx)


# Fibers and sectors -------------------------------------------------------

def fiber_indices(k_total: int) -> tuple[ZZIndex, ...]:
    """ZZ labels of the fixed-total-number fiber, in fiber order.

    Even total 2k: (k, 0), (k-1, 1), ..., (0, k), (-1, k-1), ..., (-k, 0).
    Odd total 2k-1: (k-1, -1), ..., (0, -k), (-1, -k), ..., (-k, -1).
    """
    if k_total < 0:
        raise ValueError(f"k_total must be >= 0, got {k_total}")
    if k_total % 2 == 0:
        k = k_total // 2
        return tuple(ZZIndex(p, k - abs(p)) for p in range(k, -k - 1, -1))
    k = (k_total + 1) // 2
    plus = [ZZIndex(n, -(k - n)) for n in range(k - 1, -1, -1)]
    minus = [ZZIndex(-(n + 1), -(k - n)) for n in range(0, k)]
    return tuple(plus + minus)


@dataclass(frozen=True)
class SectorBasis:
    """Ordered list of basis labels of one representation, total number <= K."""

    representation: Rep
    K: int
    indices: tuple = field(repr=False)
    _lookup: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        lookup = {idx: i for i, idx in enumerate(self.indices)}
        if len(lookup) != len(self.indices):
            raise ValueError("duplicate labels in sector basis")
        object.__setattr__(self, "_lookup", lookup)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator:
        return iter(self.indices)

    def __contains__(self, idx: Hashable) -> bool:
        return idx in self._lookup

    def ordinal(self, idx) -> int:
        try:
            return self._lookup[idx]
        except KeyError:
            raise KeyError(f"{idx} is not in the {self.representation.value} sector K={self.K}") from None

    def get(self, idx, default=None):
        return self._lookup.get(idx, default)

    def total_numbers(self) -> list[int]:
        return [total_number(self.representation, i) for i in self.indices]

    def reordered(self, order) -> "SectorBasis":
        """Same labels in a different order (used to test ordering independence)."""
        new = tuple(self.indices[i] for i in order)
        if sorted(map(self.ordinal, new)) != list(range(len(self))):
            raise ValueError("order must be a permutation of the basis")
        return SectorBasis(self.representation, self.K, new)


def _check_K(K: int) -> None:
    if not isinstance(K, int) or K < 0:
        raise ValueError(f"sector bound K must be a non-negative int, got {K!r}")
    if K > K_MAX:
        raise ValueError(f"sector bound K={K} exceeds the cap {K_MAX}")


@lru_cache(maxsize=None)
def enumerate_sector(rep: Rep, K: int) -> SectorBasis:
    """Canonical basis of total pair number <= K; size (K+1)(K+2)/2."""
    _check_K(K)
    out = []
    for k in range(K + 1):
        for zz in fiber_indices(k):
            out.append(from_fock(rep, zz_to_fock(zz)))
    return SectorBasis(rep, K, tuple(out))


def sector_size(K: int) -> int:
    return (K + 1) * (K + 2) // 2
