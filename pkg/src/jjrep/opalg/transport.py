"""Relabelling between representations and the gauge rotation."""
from __future__ import annotations

import cmath

import numpy as np
import scipy.sparse as sp

from ..indexing import (
    Rep,
    SectorBasis,
    branch_to_zz,
    convert,
    enumerate_sector,
    fock_to_lattice,
    lattice_to_branch,
)
from .numbers import NumberKind, number_values
from .sparse import SparseOp

# The chain Fock -> ZN -> ZN -> Branch -> ZZ -> Circle as label maps.  The
# operator u between the two ZN forms and the Fourier transform between ZZ
# and the circle keep labels unchanged.
CHAIN_STEPS = (
    ("S_f", Rep.FOCK, Rep.ZN, fock_to_lattice),
    ("u", Rep.ZN, Rep.ZN, lambda i: tuple(i)),
    ("rho", Rep.ZN, Rep.BRANCH, lattice_to_branch),
    ("U", Rep.BRANCH, Rep.ZZ, branch_to_zz),
    ("F", Rep.ZZ, Rep.CIRCLE, lambda i: tuple(i)),
)


def compose_chain(idx):
    for _, _, _, f in CHAIN_STEPS:
        idx = f(idx)
    return tuple(idx)


def permutation_between(src: SectorBasis, dst: SectorBasis) -> sp.csr_matrix:
    """Matrix W with (W v)[dst ordinal of x] = v[src ordinal of x].

    Labels are identified through the Fock labels, so the two bases may be
    in different representations and in any order.
    """
    if len(src) != len(dst) or src.K != dst.K:
        raise ValueError("bases cover different sectors")
    n = len(src)
    rows = np.empty(n, dtype=np.int64)
    for j, lab in enumerate(src.indices):
        rows[j] = dst.ordinal(convert(lab, src.representation, dst.representation))
    return sp.csr_matrix((np.ones(n, dtype=np.complex128), (rows, np.arange(n))), shape=(n, n))


def representation_permutation(rep_a: Rep, rep_b: Rep, K: int) -> sp.csr_matrix:
    """Permutation between the canonical sector bases of two representations."""
    return permutation_between(enumerate_sector(Rep(rep_a), K), enumerate_sector(Rep(rep_b), K))


def transport(op: SparseOp, dst: SectorBasis) -> SparseOp:
    """W O W^T: the same operator written on the labels of ``dst``."""
    if op.basis == dst:
        return op
    W = permutation_between(op.basis, dst)
    return SparseOp(dst, W @ op.matrix @ W.T)


def transport_vector(vec, src: SectorBasis, dst: SectorBasis) -> np.ndarray:
    return permutation_between(src, dst) @ np.asarray(vec)


def gauge_rotation(phi: float, basis: SectorBasis) -> SparseOp:
    """G(phi) = exp(i (phi/2) N_-), diagonal in every representation."""
    nm = number_values(NumberKind.RELATIVE, basis)
    return SparseOp.diagonal(basis, np.exp(0.5j * phi * nm))


def ab_phase(phi: float, basis: SectorBasis) -> SparseOp:
    """Multiplication by e^{i p phi} on (p, r) labels (translation theta1 -> theta1 + phi)."""
    if basis.representation not in (Rep.ZZ, Rep.CIRCLE):
        raise ValueError("the translation in theta1 acts on ZZ or circle labels")
    return SparseOp.diagonal(basis, [cmath.exp(1j * phi * p) for p, _ in basis.indices])
