# cython: language_level=3
"""Compiled implicit QL eigenvalue solver; mirrors ``_tridiag_py``."""
import numpy as np

from libc.math cimport fabs, hypot, copysign

from ._tridiag_py import ConvergenceError

cdef double EPS = 2.220446049250313e-16
cdef double SAFEMIN = 2.2250738585072014e-308


def tridiag_eigvals(diag, off, int max_iter=60):
    cdef double[::1] d = np.array(diag, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    if len(off) != max(n - 1, 0):
        raise ValueError(f"off-diagonal must have length {max(n - 1, 0)}, got {len(off)}")
    cdef double[::1] e = np.zeros(n + 1, dtype=np.float64)
    cdef Py_ssize_t j
    for j in range(n - 1):
        e[j] = off[j]
    cdef Py_ssize_t l, m, i
    cdef int it
    cdef double dd, g, r, s, c, p, f, b
    cdef bint underflow
    cdef double floor = 0.0
    for j in range(n):
        floor = max(floor, fabs(d[j]) + 2.0 * fabs(e[j]))
    floor *= EPS * EPS
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= EPS * dd or fabs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise ConvergenceError(f"no convergence for eigenvalue {l} after {max_iter} sweeps")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
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
    return np.sort(np.asarray(d))


def sturm_count(diag, off, double x):
    cdef double[::1] dv = np.asarray(diag, dtype=np.float64)
    cdef double[::1] ov = np.asarray(off, dtype=np.float64)
    cdef Py_ssize_t n = dv.shape[0], i
    cdef int count = 0
    cdef double q = 1.0, prev = 0.0, pivmin = 1.0
    for i in range(n - 1):
        pivmin = max(pivmin, ov[i] * ov[i])
    pivmin *= SAFEMIN
    for i in range(n):
        if i:
            q = dv[i] - x - prev / q
        else:
            q = dv[i] - x
        if q == 0.0:
            q = EPS * (fabs(dv[i]) + fabs(x) + 1.0)
        elif fabs(q) < pivmin:
            q = copysign(pivmin, q)
        if q < 0.0:
            count += 1
        if i < n - 1:
            prev = ov[i] * ov[i]
    return count
