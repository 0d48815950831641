"""Truncated Mathieu (transmon) matrix and its relation to the even fibers.

At q = 0 the even fiber of total number 2k is the charge-basis Mathieu
problem truncated to |n| <= k: diagonal (2/C) n^2, off-diagonal -alpha.
"""
from __future__ import annotations

import numpy as np

from . import tridiag
from .fibers import TridiagMatrix, fiber_eigs, fiber_matrix
from .params import ModelParams
from .report import VerifyReport


def mathieu_matrix(C: float, alpha: float, n_cut: int) -> TridiagMatrix:
    """Rows n = n_cut, n_cut - 1, ..., -n_cut."""
    if n_cut < 0:
        raise ValueError("n_cut must be >= 0")
    if not C > 0:
        raise ValueError("C must be positive")
    n = np.arange(n_cut, -n_cut - 1, -1, dtype=float)
    # one rounding, so the entries coincide bit for bit with (2n)^2 / (2C)
    return TridiagMatrix(2.0 * n**2 / C, np.full(2 * n_cut, -float(alpha)))


def mathieu_low_eigs(C: float, alpha: float, n_cut: int, count: int) -> np.ndarray:
    """Lowest ``count`` eigenvalues, QL followed by bisection polish."""
    t = mathieu_matrix(C, alpha, n_cut)
    if count > t.dim:
        raise ValueError(f"asked for {count} eigenvalues of a {t.dim}x{t.dim} matrix")
    ev = tridiag.tridiag_eigvals(t.diag, t.off)
    return np.array([tridiag.polish_eigenvalue(t.diag, t.off, j, ev[j]) for j in range(count)])


def verify_fiber_limit(C: float, alpha: float, k: int, n_eigs: int = 3, tol: float = 1e-12) -> VerifyReport:
    """Fiber 2k at q = 0 against the Mathieu truncation, and cutoff convergence.

    The two matrices are identical at n_cut = k.  The convergence gaps
    lambda_j(n_cut) - lambda_j(2 n_cut) for n_cut = k, k + 4, k + 8 (k >= 1)
    must be non-negative and shrinking.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    report = VerifyReport(f"Mathieu limit C={C} alpha={alpha} k={k}")
    fm = fiber_matrix(2 * k, ModelParams(C=C, q=0.0, alpha=alpha))
    mm = mathieu_matrix(C, alpha, k)
    struct = max(float(np.max(np.abs(fm.diag - mm.diag))), float(np.max(np.abs(fm.off - mm.off), initial=0.0)))
    report.add("matrix identity", struct, 0.0)
    n_eigs = min(n_eigs, mm.dim)
    exact = np.max(np.abs(fiber_eigs(fm)[:n_eigs] - fiber_eigs(mm)[:n_eigs]))
    report.add("eigenvalue match", exact, tol)

    gaps = []
    k0 = max(k, 1)
    for kk in (k0, k0 + 4, k0 + 8):
        g = mathieu_low_eigs(C, alpha, kk, n_eigs) - mathieu_low_eigs(C, alpha, 2 * kk, n_eigs)
        gaps.append(g)
        report.note(f"gap n_cut={kk}", float(np.max(g)))
    negative = max(0.0, -float(np.min(gaps)))
    report.add("gaps non-negative", negative, 0.0)
    growth = max(0.0, float(np.max(gaps[1] - gaps[0])), float(np.max(gaps[2] - gaps[1])))
    report.add("gaps shrinking", growth, 0.0)
    return report
