"""Operators on the infinite label sets, restricted to a sector only at the end.

A :class:`LabelOp` is the action of an operator on basis labels,
``label -> {label': coeff}``.  Products and sums are formed lazily, so an
intermediate factor may move a label out of any finite sector and back in
again without truncation error.  Tensor products act coordinate-wise on
pairs, direct sums on (branch, p, m) triples.
"""
from __future__ import annotations

from typing import Callable

import numpy as np
import scipy.sparse as sp

from ..indexing import Branch, SectorBasis
from .sparse import SparseOp


class LeakError(RuntimeError):
    """A sector-preserving operator produced a label outside the sector."""


def _add_into(out: dict, key, c) -> None:
    out[key] = out.get(key, 0) + c


class LabelOp:
    __slots__ = ("_f", "name")

    def __init__(self, f: Callable[[object], dict], name: str = "op"):
        self._f = f
        self.name = name

    def __call__(self, x) -> dict:
        return self._f(x)

    def __matmul__(self, other: "LabelOp") -> "LabelOp":
        def f(x):
            out: dict = {}
            for y, c in other(x).items():
                for z, d in self(y).items():
                    _add_into(out, z, c * d)
            return out

        return LabelOp(f, f"({self.name} {other.name})")

    def __add__(self, other: "LabelOp") -> "LabelOp":
        def f(x):
            out = dict(self(x))
            for z, d in other(x).items():
                _add_into(out, z, d)
            return out

        return LabelOp(f, f"{self.name} + {other.name}")

    def __mul__(self, c) -> "LabelOp":
        c = complex(c)

        def f(x):
            return {z: c * d for z, d in self(x).items()}

        return LabelOp(f, f"{c}*{self.name}")

    __rmul__ = __mul__

    def __neg__(self) -> "LabelOp":
        return self * -1

    def __sub__(self, other: "LabelOp") -> "LabelOp":
        return self + (-other)

    def restrict(self, basis: SectorBasis, strict: bool = False) -> SparseOp:
        """Matrix of the compressed operator P_K O P_K on ``basis``.

        With ``strict`` any weight leaving the sector raises :class:`LeakError`,
        which is how sector-preserving operators are checked as they are built.
        """
        rows, cols, vals = [], [], []
        for j, lab in enumerate(basis.indices):
            for z, c in self(tuple(lab)).items():
                if c == 0:
                    continue
                i = basis.get(z)
                if i is None:
                    if strict:
                        raise LeakError(f"{self.name}: {lab} -> {z} leaves the sector K={basis.K}")
                    continue
                rows.append(i)
                cols.append(j)
                vals.append(c)
        n = len(basis)
        m = sp.coo_matrix((np.asarray(vals, dtype=np.complex128), (rows, cols)), shape=(n, n))
        return SparseOp(basis, m.tocsr())


ZERO = LabelOp(lambda x: {}, "0")
IDENTITY = LabelOp(lambda x: {x: 1.0}, "1")


# single-coordinate primitives -----------------------------------------------

def shift(k: int, name: str | None = None) -> LabelOp:
    return LabelOp(lambda n: {n + k: 1.0}, name or f"S{k:+d}")


A = shift(-1, "A")          # bilateral shift on Z, phi_n -> phi_{n-1}
A_STAR = shift(+1, "A*")


def _L(m):
    return {m - 1: 1.0} if m >= 1 else {}


L = LabelOp(_L, "L")        # unilateral shift on N, phi_0 -> 0
L_STAR = shift(+1, "L*")


class Interval:
    """Integer interval [lo, hi] with None for an infinite end."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: int | None, hi: int | None):
        self.lo, self.hi = lo, hi

    def __call__(self, n: int) -> bool:
        return (self.lo is None or n >= self.lo) and (self.hi is None or n <= self.hi)

    def __repr__(self):
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{lo},{hi}]"


def proj(pred: Callable[[int], bool], name: str | None = None) -> LabelOp:
    return LabelOp(lambda n: {n: 1.0} if pred(n) else {}, name or f"P{pred!r}")


def P(lo: int | None, hi: int | None) -> LabelOp:
    """Spectral projection of the position operator onto [lo, hi]."""
    iv = Interval(lo, hi)
    return proj(iv, f"P{iv!r}")


def diag(fn: Callable[[int], complex], name: str = "D") -> LabelOp:
    def f(n):
        v = fn(n)
        return {n: v} if v != 0 else {}

    return LabelOp(f, name)


NUMBER = diag(lambda n: n, "N")


# combinators ----------------------------------------------------------------

def tensor(x: LabelOp, y: LabelOp) -> LabelOp:
    """x acts on the first coordinate of a pair, y on the second."""

    def f(ab):
        a, b = ab
        ya = y(b)
        out: dict = {}
        for a2, c in x(a).items():
            for b2, d in ya.items():
                _add_into(out, (a2, b2), c * d)
        return out

    return LabelOp(f, f"{x.name}⊗{y.name}")


def direct_sum(even: LabelOp, odd: LabelOp) -> LabelOp:
    """Block-diagonal operator on (branch, p, m) labels."""

    def f(lab):
        br, p, m = lab
        op, tag = (even, Branch.EVEN) if br == Branch.EVEN else (odd, Branch.ODD)
        return {(tag, p2, m2): c for (p2, m2), c in op((p, m)).items()}

    return LabelOp(f, f"({even.name})⊕({odd.name})")


def multiplication(a: int, b: int) -> LabelOp:
    """Multiplication by exp(i(a theta1 + b theta2)) on Fourier coefficients."""
    return LabelOp(lambda pr: {(pr[0] + a, pr[1] + b): 1.0}, f"e[{a},{b}]")
