"""Number operators and the primitive shift/projection matrices on a sector."""
from __future__ import annotations

import enum
from typing import Callable

import numpy as np

from ..indexing import Rep, SectorBasis, total_number
from .lattice import A, A_STAR, IDENTITY, L, L_STAR, proj, tensor, direct_sum
from .sparse import SparseOp


class NumberKind(enum.Enum):
    RELATIVE = "Relative"   # N_- = alpha - beta
    TOTAL = "Total"         # N_+ = alpha + beta
    NPM = "Npm"             # N_pm = 2 min(alpha, beta)


def _relative(rep: Rep, idx) -> int:
    if rep == Rep.FOCK:
        return idx[0] - idx[1]
    if rep == Rep.ZN:
        return idx[0]
    if rep == Rep.BRANCH:
        br, p, _ = idx
        return 2 * p + int(br)
    p, r = idx
    return 2 * p if r >= 0 else 2 * p + 1


def _npm(rep: Rep, idx) -> int:
    if rep == Rep.FOCK:
        return 2 * min(idx)
    if rep in (Rep.ZN, Rep.BRANCH):
        return 2 * idx[-1]
    r = idx[1]
    return 2 * r if r >= 0 else -2 * (r + 1)


def number_values(kind: NumberKind, basis: SectorBasis) -> np.ndarray:
    kind = NumberKind(kind)
    rep = basis.representation
    if kind == NumberKind.TOTAL:
        f = lambda i: total_number(rep, i)
    elif kind == NumberKind.RELATIVE:
        f = lambda i: _relative(rep, i)
    else:
        f = lambda i: _npm(rep, i)
    return np.array([f(i) for i in basis.indices], dtype=float)


def build_number(kind: NumberKind, basis: SectorBasis) -> SparseOp:
    """Diagonal number operator in the basis' own representation."""
    return SparseOp.diagonal(basis, number_values(kind, basis))


# coordinates: name -> (position in label, is the coordinate Z (True) or N (False))
_COORDS = {
    Rep.FOCK: {"alpha": (0, False), "beta": (1, False)},
    Rep.ZN: {"n": (0, True), "m": (1, False)},
    Rep.BRANCH: {"p": (0, True), "m": (1, False)},
    Rep.ZZ: {"p": (0, True), "r": (1, True)},
    Rep.CIRCLE: {"p": (0, True), "r": (1, True)},
}


class ShiftOps:
    """Shifts and projections acting on one coordinate of a sector basis.

    ``L``/``L*`` exist on half-line coordinates, ``A``/``A*`` on integer
    coordinates.  Operators are compressed to the sector, so a raising shift
    loses whatever leaves it.
    """

    def __init__(self, basis: SectorBasis):
        self.basis = basis
        self.coords = _COORDS[basis.representation]

    def _lift(self, coord: str, op):
        try:
            pos, _ = self.coords[coord]
        except KeyError:
            raise ValueError(
                f"{self.basis.representation.value} has coordinates {sorted(self.coords)}, not {coord!r}"
            ) from None
        full = tensor(op, IDENTITY) if pos == 0 else tensor(IDENTITY, op)
        if self.basis.representation == Rep.BRANCH:
            full = direct_sum(full, full)
        return full.restrict(self.basis)

    def _need(self, coord: str, integer: bool) -> None:
        if coord not in self.coords:
            self._lift(coord, IDENTITY)
        if self.coords[coord][1] != integer:
            kind = "integer" if integer else "half-line"
            raise ValueError(f"coordinate {coord!r} is not a {kind} coordinate")

    def L(self, coord: str) -> SparseOp:
        self._need(coord, False)
        return self._lift(coord, L)

    def L_star(self, coord: str) -> SparseOp:
        self._need(coord, False)
        return self._lift(coord, L_STAR)

    def A(self, coord: str) -> SparseOp:
        self._need(coord, True)
        return self._lift(coord, A)

    def A_star(self, coord: str) -> SparseOp:
        self._need(coord, True)
        return self._lift(coord, A_STAR)

    def P(self, coord: str, pred: Callable[[int], bool]) -> SparseOp:
        """Projection onto labels whose integer coordinate satisfies ``pred``."""
        self._need(coord, True)
        return self._lift(coord, proj(pred))

    def Q(self, coord: str, pred: Callable[[int], bool]) -> SparseOp:
        """Projection onto labels whose half-line coordinate satisfies ``pred``."""
        self._need(coord, False)
        return self._lift(coord, proj(pred))


def shift_ops(basis: SectorBasis) -> ShiftOps:
    return ShiftOps(basis)
