"""The junction Hamiltonian written independently in each representation.

Every constructor returns three label operators

    H(Phi) = kinetic - alpha * (e^{i Phi} forward + e^{-i Phi} backward)

where ``forward`` moves one pair from superconductor A to B (alpha - beta
drops by 2) and ``backward`` is its adjoint.  The six constructors share no
code beyond the primitive shifts and projections, so agreement between them
after relabelling is a genuine check.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from ..indexing import Rep, SectorBasis, enumerate_sector
from ..params import ModelParams
from .lattice import (
    A,
    A_STAR,
    IDENTITY,
    L,
    L_STAR,
    LabelOp,
    P,
    diag,
    direct_sum,
    multiplication,
    tensor,
)
from .sparse import SparseOp


class RepKind(enum.Enum):
    FOCK_D1 = "FockD1"
    ZN_TRANSITIONS = "ZNTransitions"
    ZN_FACTORED = "ZNFactored"
    BRANCH_D5 = "BranchD5"
    ZZ_D6 = "ZZD6"
    CIRCLE_D4 = "CircleD4"

    @property
    def representation(self) -> Rep:
        return _REP_OF[self]


_REP_OF = {
    RepKind.FOCK_D1: Rep.FOCK,
    RepKind.ZN_TRANSITIONS: Rep.ZN,
    RepKind.ZN_FACTORED: Rep.ZN,
    RepKind.BRANCH_D5: Rep.BRANCH,
    RepKind.ZZ_D6: Rep.ZZ,
    RepKind.CIRCLE_D4: Rep.CIRCLE,
}

# Chain order used for adjacent-pair comparisons.
CHAIN = (
    RepKind.FOCK_D1,
    RepKind.ZN_TRANSITIONS,
    RepKind.ZN_FACTORED,
    RepKind.BRANCH_D5,
    RepKind.ZZ_D6,
    RepKind.CIRCLE_D4,
)


@dataclass(frozen=True)
class Parts:
    kinetic: LabelOp
    forward: LabelOp
    backward: LabelOp


Q_ALL = P(0, None)  # identity on N, written as Q_[0,inf)


def _charging(C: float, q: float, scale: int = 1, offset: int = 0):
    """n -> (scale*n + offset + q)^2 / 2C."""
    return lambda n: (scale * n + offset + q) ** 2 / (2.0 * C)


# Fock ---------------------------------------------------------------------

def _fock(C: float, q: float) -> Parts:
    kin = LabelOp(lambda ab: {ab: (ab[0] - ab[1] + q) ** 2 / (2.0 * C)}, "Hc")
    return Parts(kin, tensor(L, L_STAR), tensor(L_STAR, L))


# Z x N, transition rules ----------------------------------------------------

def _zn_forward(nm):
    n, m = nm
    if n >= 2:
        return {(n - 2, m + 1): 1.0}
    if n == 1:
        return {(n - 2, m): 1.0}
    if m >= 1:
        return {(n - 2, m - 1): 1.0}
    return {}


def _zn_backward(nm):
    n, m = nm
    if n >= 0:
        return {(n + 2, m - 1): 1.0} if m >= 1 else {}
    if n == -1:
        return {(n + 2, m): 1.0}
    return {(n + 2, m + 1): 1.0}


def _zn_transitions(C: float, q: float) -> Parts:
    kin = LabelOp(lambda nm: {nm: (nm[0] + q) ** 2 / (2.0 * C)}, "Hc")
    return Parts(kin, LabelOp(_zn_forward, "T->"), LabelOp(_zn_backward, "T<-"))


# Z x N, factored into shifts and projections --------------------------------

def _zn_factored(C: float, q: float) -> Parts:
    A2, A2s = A @ A, A_STAR @ A_STAR
    fwd = (
        tensor(A2 @ P(2, None), L_STAR @ Q_ALL)
        + tensor(A2 @ P(1, 1), Q_ALL)
        + tensor(A2 @ P(None, 0), L @ P(1, None))
    )
    bwd = (
        tensor(A2s @ P(0, None), L @ P(1, None))
        + tensor(A2s @ P(-1, -1), Q_ALL)
        + tensor(A2s @ P(None, -2), L_STAR @ Q_ALL)
    )
    kin = tensor(diag(_charging(C, q), "Hc"), IDENTITY)
    return Parts(kin, fwd, bwd)


# even/odd branches ----------------------------------------------------------

def _branch(C: float, q: float) -> Parts:
    fwd_even = tensor(A @ P(1, None), L_STAR @ Q_ALL) + tensor(A @ P(None, 0), L @ P(1, None))
    bwd_even = tensor(A_STAR @ P(0, None), L @ P(1, None)) + tensor(A_STAR @ P(None, -1), L_STAR @ Q_ALL)
    fwd_odd = (
        tensor(A @ P(1, None), L_STAR @ Q_ALL)
        + tensor(A @ P(0, 0), Q_ALL)
        + tensor(A @ P(None, -1), L @ P(1, None))
    )
    bwd_odd = (
        tensor(A_STAR @ P(0, None), L @ P(1, None))
        + tensor(A_STAR @ P(-1, -1), Q_ALL)
        + tensor(A_STAR @ P(None, -2), L_STAR @ Q_ALL)
    )
    kin = direct_sum(
        tensor(diag(_charging(C, q, 2, 0), "H+"), IDENTITY),
        tensor(diag(_charging(C, q, 2, 1), "H-"), IDENTITY),
    )
    return Parts(kin, direct_sum(fwd_even, fwd_odd), direct_sum(bwd_even, bwd_odd))


# Z x Z ----------------------------------------------------------------------

def _zz(C: float, q: float) -> Parts:
    plus_f = tensor(A @ P(1, None), A_STAR @ P(0, None)) + tensor(A @ P(None, 0), A @ P(1, None))
    plus_b = tensor(A_STAR @ P(0, None), A @ P(1, None)) + tensor(A_STAR @ P(None, -1), A_STAR @ P(0, None))
    minus_f = (
        tensor(A @ P(1, None), A @ P(None, -1))
        + tensor(A @ P(0, 0), P(None, -1))
        + tensor(A @ P(None, -1), A_STAR @ P(None, -2))
    )
    minus_b = (
        tensor(A_STAR @ P(0, None), A_STAR @ P(None, -2))
        + tensor(A_STAR @ P(-1, -1), P(None, -1))
        + tensor(A_STAR @ P(None, -2), A @ P(None, -1))
    )
    kin = tensor(diag(_charging(C, q, 2, 0), "H+"), P(0, None)) + tensor(
        diag(_charging(C, q, 2, 1), "H-"), P(None, -1)
    )
    return Parts(kin, plus_f + minus_f, plus_b + minus_b)


# two-torus Fourier modes ----------------------------------------------------

# (a, b, theta1 interval, theta2 interval, typo) stands for the term
# exp(i(a theta1 + b theta2)) e^{-i a Phi} P_I1 (x) P_I2.  ``typo`` marks the
# four terms whose phase can also be read as e^{+-i theta1 - Phi} (Phi outside
# the bracket); the constructor uses e^{+-i(theta1 - Phi)}, the only reading
# equivalent to the Fock Hamiltonian.  build_circle_literal keeps the other.
_NEG, _NEG2 = (None, -1), (None, -2)
_POS, _POS1 = (0, None), (1, None)
CIRCLE_TERMS = (
    # theta2 = 0
    (+1, +1, _NEG, (0, 0), False),
    (-1, +1, _POS1, (0, 0), False),
    # theta2 >= 1
    (-1, -1, (None, 0), _POS1, False),
    (-1, +1, _POS1, _POS1, False),
    (+1, +1, _NEG, _POS1, False),
    (+1, -1, _POS, _POS1, False),
    # theta2 = -1
    (+1, -1, _NEG2, (-1, -1), False),
    (+1, 0, (-1, -1), (-1, -1), True),
    (-1, 0, (0, 0), (-1, -1), True),
    (-1, -1, _POS1, (-1, -1), False),
    # theta2 <= -2
    (-1, +1, _NEG, _NEG2, False),
    (-1, 0, (0, 0), _NEG2, True),
    (-1, -1, _POS1, _NEG2, False),
    (+1, -1, _NEG2, _NEG2, False),
    (+1, 0, (-1, -1), _NEG2, True),
    (+1, +1, _POS, _NEG2, False),
)


def _circle_term(a: int, b: int, i1, i2) -> LabelOp:
    return multiplication(a, b) @ tensor(P(*i1), P(*i2))


def _circle_kinetic(C: float, q: float) -> LabelOp:
    def f(pr):
        p, r = pr
        return {pr: (2 * p + (0 if r >= 0 else 1) + q) ** 2 / (2.0 * C)}

    return LabelOp(f, "Hc")


def _circle(C: float, q: float) -> Parts:
    fwd = bwd = None
    for a, b, i1, i2, _ in CIRCLE_TERMS:
        t = _circle_term(a, b, i1, i2)
        if a < 0:  # e^{-i theta1} carries e^{+i Phi}
            fwd = t if fwd is None else fwd + t
        else:
            bwd = t if bwd is None else bwd + t
    return Parts(_circle_kinetic(C, q), fwd, bwd)


_BUILDERS = {
    RepKind.FOCK_D1: _fock,
    RepKind.ZN_TRANSITIONS: _zn_transitions,
    RepKind.ZN_FACTORED: _zn_factored,
    RepKind.BRANCH_D5: _branch,
    RepKind.ZZ_D6: _zz,
    RepKind.CIRCLE_D4: _circle,
}


def label_parts(kind: RepKind, C: float = 1.0, q: float = 0.0) -> Parts:
    """Unrestricted kinetic/forward/backward label operators of one constructor."""
    return _BUILDERS[RepKind(kind)](C, q)


@lru_cache(maxsize=256)
def _restricted(kind: RepKind, C: float, q: float, basis: SectorBasis):
    parts = label_parts(kind, C, q)
    return (
        parts.kinetic.restrict(basis, strict=True),
        parts.forward.restrict(basis, strict=True),
        parts.backward.restrict(basis, strict=True),
    )


def _resolve_basis(kind: RepKind, basis: SectorBasis | int) -> SectorBasis:
    rep = kind.representation
    if isinstance(basis, int):
        return enumerate_sector(rep, basis)
    if basis.representation != rep:
        raise ValueError(f"{kind.value} lives on the {rep.value} basis, got {basis.representation.value}")
    return basis


def hamiltonian_parts(kind: RepKind, params: ModelParams, basis: SectorBasis | int):
    """(kinetic, forward, backward) restricted to the sector."""
    kind = RepKind(kind)
    basis = _resolve_basis(kind, basis)
    return _restricted(kind, params.C, params.q, basis)


def build_hamiltonian(kind: RepKind, params: ModelParams, basis: SectorBasis | int) -> SparseOp:
    """H(Phi) compressed to the sector of total number <= K.

    The Hamiltonian commutes with the total number, so the compression is
    exact; any weight leaving the sector raises while building.
    """
    kin, fwd, bwd = hamiltonian_parts(kind, params, basis)
    e = cmath.exp(1j * params.phi)
    return kin - params.alpha * (e * fwd + e.conjugate() * bwd)


def build_circle_literal(params: ModelParams, basis: SectorBasis | int) -> SparseOp:
    """Circle Hamiltonian with the four ambiguous phases read as e^{+-i theta1} e^{-Phi}.

    Only used to record that this reading disagrees with every other form.
    """
    basis = _resolve_basis(RepKind.CIRCLE_D4, basis)
    e = cmath.exp(1j * params.phi)
    op = SparseOp.zeros(basis)
    for a, b, i1, i2, typo in CIRCLE_TERMS:
        if typo:
            w = math.exp(-params.phi)
        else:
            w = e if a < 0 else e.conjugate()
        op = op + w * _circle_term(a, b, i1, i2).restrict(basis, strict=True)
    kin = _circle_kinetic(params.C, params.q).restrict(basis, strict=True)
    return kin - params.alpha * op


# symmetric Hamiltonian ------------------------------------------------------

SYMMETRIC_KINDS = (RepKind.FOCK_D1, RepKind.ZZ_D6, RepKind.CIRCLE_D4)


def build_symmetric_hamiltonian(kind: RepKind, params: ModelParams, basis: SectorBasis | int) -> SparseOp:
    """(1/2C) N_-^2 + (1/2C) N_pm^2 - alpha H_T(Phi), defined only for q = 0."""
    kind = RepKind(kind)
    if kind not in SYMMETRIC_KINDS:
        raise ValueError(f"symmetric Hamiltonian is available for {[k.value for k in SYMMETRIC_KINDS]}")
    if params.q != 0:
        raise ValueError("symmetric Hamiltonian is defined only for q = 0")
    basis = _resolve_basis(kind, basis)
    C = params.C
    if kind == RepKind.FOCK_D1:
        def d(ab):
            a, b = ab
            return {ab: ((a - b) ** 2 + (2 * min(a, b)) ** 2) / (2.0 * C)}
    else:
        def d(pr):
            p, r = pr
            if r >= 0:
                return {pr: 2.0 / C * (p * p + r * r)}
            return {pr: 2.0 / C * ((p + 0.5) ** 2 + (r + 1) ** 2)}
    diag_op = LabelOp(d, "Hsym").restrict(basis, strict=True)
    _, fwd, bwd = hamiltonian_parts(kind, params, basis)
    e = cmath.exp(1j * params.phi)
    return diag_op - params.alpha * (e * fwd + e.conjugate() * bwd)
