"""Pure-Python implicit QL eigenvalue solver for real symmetric tridiagonal matrices.

Same algorithm, line for line, as the compiled kernel in ``_tridiag.pyx``;
used when the extension is not built.
"""
from __future__ import annotations

import math

import numpy as np

EPS = 2.220446049250313e-16
SAFEMIN = 2.2250738585072014e-308


class ConvergenceError(RuntimeError):
    pass


def tridiag_eigvals(diag, off, max_iter: int = 60) -> np.ndarray:
    """Eigenvalues (ascending) of the symmetric tridiagonal matrix (diag, off).

    Implicit QL sweeps with a Wilkinson-type shift.  Raises
    :class:`ConvergenceError` if an eigenvalue needs more than ``max_iter``
    sweeps.
    """
    d = [float(x) for x in diag]
    n = len(d)
    if len(off) != max(n - 1, 0):
        raise ValueError(f"off-diagonal must have length {max(n - 1, 0)}, got {len(off)}")
    e = [float(x) for x in off] + [0.0]
    # off-diagonals below eps^2 |T| are negligible even between zero diagonals
    floor = EPS * EPS * max((abs(a) + 2.0 * abs(b) for a, b in zip(d, e)), default=0.0)
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise ConvergenceError(f"no convergence for eigenvalue {l} after {max_iter} sweeps")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d, dtype=float))


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues strictly below ``x`` (LDL^T inertia count).

    An exactly zero pivot means x is itself an eigenvalue; it is nudged to
    the positive side so that eigenvalue is not counted as below x.  Tiny
    pivots are clamped away from zero so the recurrence cannot overflow.
    """
    pivmin = SAFEMIN * max([1.0] + [float(v) ** 2 for v in off])
    count = 0
    q = 1.0
    prev_off2 = 0.0
    for i in range(len(diag)):
        q = float(diag[i]) - x - (prev_off2 / q if i else 0.0)
        if q == 0.0:
            q = EPS * (abs(float(diag[i])) + abs(x) + 1.0)
        elif abs(q) < pivmin:
            q = math.copysign(pivmin, q)
        if q < 0.0:
            count += 1
        if i < len(diag) - 1:
            prev_off2 = float(off[i]) ** 2
    return count
