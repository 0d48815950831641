"""Backend selection for the tridiagonal eigenvalue kernel.

The compiled extension is used when it was built; otherwise the pure-Python
implementation.  :func:`use_backend` switches explicitly (benchmarks, tests).
"""
from __future__ import annotations

import numpy as np

from . import _tridiag_py
from ._tridiag_py import ConvergenceError

try:
    from . import _tridiag as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _tridiag_py}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def use_backend(name: str) -> None:
    global BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    BACKEND = name


def tridiag_eigvals(diag, off, max_iter: int = 60, backend: str | None = None):
    return _BACKENDS[backend or BACKEND].tridiag_eigvals(diag, off, max_iter)


def sturm_count(diag, off, x: float, backend: str | None = None) -> int:
    return _BACKENDS[backend or BACKEND].sturm_count(diag, off, x)


def polish_eigenvalue(diag, off, j: int, guess: float, backend: str | None = None) -> float:
    """Refine the j-th smallest eigenvalue by Sturm-count bisection.

    The bracket [lo, hi) around ``guess`` is bisected until lo and hi are
    adjacent doubles; since the count is of eigenvalues strictly below x,
    the eigenvalue lies in [lo, hi) and lo is returned.
    """
    count = _BACKENDS[backend or BACKEND].sturm_count
    scale = max((abs(float(x)) for x in diag), default=0.0) + 2.0 * max((abs(float(x)) for x in off), default=0.0) + 1.0
    width = 1e-12 * scale
    lo, hi = guess - width, guess + width
    while count(diag, off, lo) > j:
        lo -= width
        width *= 2
    while count(diag, off, hi) <= j:
        hi += width
        width *= 2
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return lo
        if count(diag, off, mid) > j:
            hi = mid
        else:
            lo = mid


def eigvals(diag, off, max_iter: int = 60, polish: bool = True, backend: str | None = None):
    """QL eigenvalues, optionally polished one by one with bisection."""
    ev = tridiag_eigvals(diag, off, max_iter, backend)
    if polish:
        ev = np.array([polish_eigenvalue(diag, off, j, v, backend) for j, v in enumerate(ev)])
    return ev


__all__ = ["BACKEND", "ConvergenceError", "available_backends", "eigvals", "polish_eigenvalue", "sturm_count", "tridiag_eigvals", "use_backend"]
