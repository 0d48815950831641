"""Galindo-type phase operator T_G on a truncated number basis f_0 .. f_{N-1}.

T_G has kernel i/(n - m) off the diagonal.  Writing L f_m = f_{m-1},
the kernel is the shift-logarithm series

    i (log(1 - L) - log(1 - L*)) = -i sum_j (L^j - L*^j) / j,

which is Hermitian.  The variant with a plus sign between the logarithms,
-i sum_j (L^j + L*^j) / j, is anti-Hermitian and reproduces the kernel
only above the diagonal; it is available as ``form="plus"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class PhaseMatrix:
    N: int
    matrix: np.ndarray

    def is_hermitian(self) -> bool:
        return bool(np.array_equal(self.matrix, self.matrix.conj().T))


def _check_N(N: int) -> None:
    if N < 2:
        raise ValueError(f"truncation N must be >= 2, got {N}")


def galindo_matrix(N: int) -> PhaseMatrix:
    _check_N(N)
    n = np.arange(N)
    diff = n[:, None] - n[None, :]
    T = np.zeros((N, N), dtype=complex)
    off = diff != 0
    T[off] = 1j / diff[off]
    return PhaseMatrix(N, T)


def shift_matrix(N: int) -> np.ndarray:
    """L on the truncated basis: L f_m = f_{m-1}, L f_0 = 0."""
    return np.eye(N, k=1)


def galindo_log_series(N: int, terms: int, form: str = "minus") -> PhaseMatrix:
    """Partial sum of the shift-logarithm series up to power ``terms``.

    ``form="minus"``: i(log(1-L) - log(1-L*)) (Hermitian, equals T_G once
    terms >= N - 1).  ``form="plus"``: i(log(1-L) + log(1-L*)).
    """
    _check_N(N)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    if form not in ("minus", "plus"):
        raise ValueError("form must be 'minus' or 'plus'")
    L = shift_matrix(N)
    Ls = L.T
    sign = -1.0 if form == "minus" else 1.0
    S = np.zeros((N, N), dtype=complex)
    Lj = np.eye(N)
    Lsj = np.eye(N)
    for j in range(1, terms + 1):
        Lj = Lj @ L
        Lsj = Lsj @ Ls
        S += (Lj + sign * Lsj) / j
    return PhaseMatrix(N, -1j * S)


def number_matrix(N: int) -> np.ndarray:
    return np.diag(np.arange(N, dtype=float)).astype(complex)


def phase_commutator(N: int) -> np.ndarray:
    """[T_G, M] with M = diag(0, 1, ..., N-1)."""
    T = galindo_matrix(N).matrix
    M = number_matrix(N)
    return T @ M - M @ T


def _commutator_column(j: int, N: int) -> list[Fraction]:
    """Column j of [R, M] with T_G = i R, in exact rational arithmetic."""
    return [Fraction(0) if k == j else Fraction(1, k - j) * (j - k) for k in range(N)]


def commutator_scaling(n: int, m: int, N: int) -> complex:
    """c with [T_G, M](f_n - f_m) = c i (f_n - f_m), computed exactly.

    Raises if the image is not proportional to the difference vector.
    """
    if not 0 <= n < m < N:
        raise ValueError(f"need 0 <= n < m < N, got n={n}, m={m}, N={N}")
    cn, cm = _commutator_column(n, N), _commutator_column(m, N)
    w = [a - b for a, b in zip(cn, cm)]  # [T_G, M] v = i w for v = f_n - f_m
    c = w[n]
    v = [Fraction(0)] * N
    v[n], v[m] = Fraction(1), Fraction(-1)
    if any(wk != c * vk for wk, vk in zip(w, v)):
        raise ValueError("image of f_n - f_m is not proportional to it")
    return complex(c)


def realized_sign(N: int = 32) -> complex:
    """The common c over all pairs n < m < N; raises if pairs disagree."""
    cs = {commutator_scaling(n, m, N) for n in range(N) for m in range(n + 1, N)}
    if len(cs) != 1:
        raise ValueError(f"pairs give different scalings: {sorted(cs, key=abs)}")
    return cs.pop()
