"""Sparse complex operator tied to a sector basis."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..indexing import SectorBasis


class BasisMismatch(ValueError):
    pass


class SparseOp:
    """A complex CSR matrix together with the basis that labels its rows and columns.

    Arithmetic between two operators requires the same basis; comparing
    operators written in different representations goes through
    :func:`jjrep.opalg.transport.transport` first.
    """

    __slots__ = ("basis", "matrix")

    def __init__(self, basis: SectorBasis, matrix):
        m = sp.csr_matrix(matrix, dtype=np.complex128)
        n = len(basis)
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match basis size {n}")
        m.eliminate_zeros()
        m.sort_indices()
        self.basis = basis
        self.matrix = m

    # construction helpers
    @classmethod
    def zeros(cls, basis: SectorBasis) -> "SparseOp":
        n = len(basis)
        return cls(basis, sp.csr_matrix((n, n), dtype=np.complex128))

    @classmethod
    def identity(cls, basis: SectorBasis) -> "SparseOp":
        return cls(basis, sp.identity(len(basis), dtype=np.complex128, format="csr"))

    @classmethod
    def diagonal(cls, basis: SectorBasis, values) -> "SparseOp":
        return cls(basis, sp.diags(np.asarray(values, dtype=np.complex128), format="csr"))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def _check(self, other: "SparseOp") -> None:
        if not isinstance(other, SparseOp):
            raise TypeError(f"expected SparseOp, got {type(other).__name__}")
        if other.basis != self.basis:
            raise BasisMismatch(
                f"bases differ: {self.basis.representation.value} K={self.basis.K} vs "
                f"{other.basis.representation.value} K={other.basis.K}"
            )

    def __add__(self, other: "SparseOp") -> "SparseOp":
        self._check(other)
        return SparseOp(self.basis, self.matrix + other.matrix)

    def __sub__(self, other: "SparseOp") -> "SparseOp":
        self._check(other)
        return SparseOp(self.basis, self.matrix - other.matrix)

    def __neg__(self) -> "SparseOp":
        return SparseOp(self.basis, -self.matrix)

    def __mul__(self, c) -> "SparseOp":
        if isinstance(c, SparseOp):
            raise TypeError("use @ for operator products")
        return SparseOp(self.basis, self.matrix * complex(c))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, SparseOp):
            self._check(other)
            return SparseOp(self.basis, self.matrix @ other.matrix)
        return self.matrix @ np.asarray(other)

    def apply(self, vec) -> np.ndarray:
        vec = np.asarray(vec)
        if vec.shape[0] != self.dim:
            raise ValueError(f"vector length {vec.shape[0]} != basis size {self.dim}")
        return self.matrix @ vec

    def adjoint(self) -> "SparseOp":
        return SparseOp(self.basis, self.matrix.conj().T)

    @property
    def H(self) -> "SparseOp":
        return self.adjoint()

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def max_abs_diff(self, other: "SparseOp") -> float:
        self._check(other)
        d = (self.matrix - other.matrix).tocoo()
        return float(np.max(np.abs(d.data))) if d.nnz else 0.0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix.data))) if self.matrix.nnz else 0.0

    def structurally_equal(self, other: "SparseOp") -> bool:
        """Same sparsity pattern, with explicit zeros already removed."""
        self._check(other)
        a, b = self.matrix, other.matrix
        return a.nnz == b.nnz and np.array_equal(a.indptr, b.indptr) and np.array_equal(a.indices, b.indices)

    def hermiticity_defect(self) -> float:
        return self.max_abs_diff(self.adjoint())

    def row_sum_bound(self) -> float:
        """max_i sum_j |O_ij|, an upper bound on the spectral norm of a Hermitian O."""
        if self.nnz == 0:
            return 0.0
        return float(np.max(np.asarray(abs(self.matrix).sum(axis=1)).ravel()))

    def entries(self) -> list[tuple[int, int, complex]]:
        coo = self.matrix.tocoo()
        return sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))

    def __repr__(self) -> str:
        b = self.basis
        return f"SparseOp({b.representation.value}, K={b.K}, dim={self.dim}, nnz={self.nnz})"


def commutator(a: SparseOp, b: SparseOp) -> SparseOp:
    return a @ b - b @ a
