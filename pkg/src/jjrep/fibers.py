"""Fixed-total-number fibers: tridiagonal matrices and the assembled spectrum.

The total pair number commutes with H, so H splits into finite blocks, one
per total number k_total.  On the two-torus labels a block is a chain of
2k+1 (even k_total = 2k) or 2k (odd k_total = 2k-1) Fourier modes; the
charging term is diagonal and tunneling couples chain neighbours with
weight -alpha.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tridiag
from .indexing import Rep, SectorBasis, ZZIndex, enumerate_sector, fiber_indices
from .opalg import RepKind, build_hamiltonian, hamiltonian_parts, transport
from .opalg.sparse import SparseOp
from .params import ModelParams
from .report import VerifyReport


@dataclass(frozen=True)
class FiberBasis:
    k_total: int
    indices: tuple[ZZIndex, ...]

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def is_even(self) -> bool:
        return self.k_total % 2 == 0

    @property
    def k(self) -> int:
        """Half-index: k_total = 2k (even) or 2k - 1 (odd)."""
        return self.k_total // 2 if self.is_even else (self.k_total + 1) // 2


@dataclass(frozen=True)
class TridiagMatrix:
    diag: np.ndarray
    off: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.diag)

    def toarray(self) -> np.ndarray:
        n = self.dim
        M = np.diag(np.asarray(self.diag, dtype=float))
        if n > 1:
            M += np.diag(self.off, 1) + np.diag(self.off, -1)
        return M


def fiber_basis(k_total: int) -> FiberBasis:
    return FiberBasis(k_total, fiber_indices(k_total))


def _kinetic(idx: ZZIndex, params: ModelParams, q_sign: float = 1.0) -> float:
    p, r = idx
    n = 2 * p if r >= 0 else 2 * p + 1
    return (n + q_sign * params.q) ** 2 / (2.0 * params.C)


def fiber_matrix(k_total: int, params: ModelParams, q_sign: float = 1.0) -> TridiagMatrix:
    """H restricted to the fiber, in fiber order.

    ``q_sign=-1`` gives the opposite charge-offset sign (. - q)^2, which
    differs from the Hamiltonian convention (N_- + q)^2 used everywhere else;
    it exists only so the two conventions can be compared.
    """
    if params.phi != 0:
        raise ValueError("fiber matrices are the Phi = 0 restriction (real symmetric)")
    fb = fiber_basis(k_total)
    d = np.array([_kinetic(i, params, q_sign) for i in fb.indices], dtype=float)
    off = np.full(max(len(fb) - 1, 0), -params.alpha, dtype=float)
    return TridiagMatrix(d, off)


def fiber_eigs(t: TridiagMatrix, max_iter: int = 60, polish: bool = True) -> np.ndarray:
    """Ascending eigenvalues; raises ``ConvergenceError`` if QL stalls.

    QL gives each eigenvalue to a few ulps of the matrix norm; the bisection
    polish then pins it down to the last bit of its Sturm-count bracket.
    """
    return tridiag.eigvals(t.diag, t.off, max_iter, polish)


def assemble_spectrum(params: ModelParams, K_max: int) -> list[tuple[int, float]]:
    """(k_total, eigenvalue) for every fiber up to K_max, each fiber ascending.

    The spectrum does not depend on Phi (gauge equivalence), so params.phi is ignored.
    """
    params = params.with_phi(0.0)
    out: list[tuple[int, float]] = []
    for k in range(K_max + 1):
        out.extend((k, float(v)) for v in fiber_eigs(fiber_matrix(k, params)))
    return out


def fiber_slice(basis: SectorBasis, k_total: int) -> list[int]:
    """Ordinals of the fiber's labels inside a ZZ or circle sector basis, in fiber order."""
    return [basis.ordinal(i) for i in fiber_indices(k_total)]


# Closed-form tunneling action on a fiber --------------------------------------
#
# The action of the tunneling part H_T (forward + backward at Phi = 0) on a
# fiber vector, written mode by mode: each labelled coefficient a_n^{+/-}
# (or a_0) is sent to the modes obtained by multiplying with
# e^{+-i theta1} e^{i b theta2}.  Hops that lower p carry e^{i Phi}.

def fiber_slots(k_total: int) -> list[tuple[int, str]]:
    """Slot labels (n, sign) in fiber order; sign is '+', '-' or '0'."""
    fb = fiber_basis(k_total)
    k = fb.k
    if fb.is_even:
        return [(n, "+") for n in range(k, 0, -1)] + [(0, "0")] + [(n, "-") for n in range(1, k + 1)]
    return [(n, "+") for n in range(k - 1, -1, -1)] + [(n, "-") for n in range(0, k)]


def slot_index(k_total: int, n: int, sign: str) -> ZZIndex:
    """Two-torus label of a_n^{sign} in fiber k_total."""
    fb = fiber_basis(k_total)
    k = fb.k
    if fb.is_even:
        if sign == "0" and n == 0:
            return ZZIndex(0, k)
        if sign in "+-" and 1 <= n <= k:
            return ZZIndex(n if sign == "+" else -n, k - n)
    else:
        if sign in "+-" and 0 <= n <= k - 1:
            return ZZIndex(n if sign == "+" else -(n + 1), -(k - n))
    raise ValueError(f"no slot a_{n}^{sign} in fiber k_total={k_total}")


def _hops_even(k: int, idx: ZZIndex) -> list[tuple[int, int]]:
    """(a, b) hops of the even-fiber mode idx = (p, k - |p|)."""
    p = idx.p
    if k == 0:
        return []
    if p == k:
        return [(-1, +1)]
    if p == -k:
        return [(+1, +1)]
    if p == 0:
        return [(+1, -1), (-1, -1)]                 # 2 cos(theta1) e^{-i theta2}
    if p < 0:
        return [(+1, +1), (-1, -1)]                 # 2 cos(theta1 + theta2)
    return [(+1, -1), (-1, +1)]                     # 2 cos(theta1 - theta2)


def _hops_odd(k: int, idx: ZZIndex, literal_center: bool) -> list[tuple[int, int]]:
    """(a, b) hops of the odd-fiber mode idx; r <= -1."""
    p, _ = idx
    top, bottom = k - 1, -k
    hops: list[tuple[int, int]] = []
    if p >= 0:                                      # a_n^+ with n = p
        n = p
        if n == 0 and not literal_center:
            hops.append((-1, 0))                    # e^{-i theta1}: to a_0^-
        else:
            hops.append((-1, -1))
        if n < top:
            hops.append((+1, +1))                   # e^{i(theta1 + theta2)}
        elif n == 0 and literal_center:
            hops.append((+1, +1))
    else:                                           # a_n^- with n = -p - 1
        n = -p - 1
        if n == 0 and not literal_center:
            hops.append((+1, 0))                    # e^{i theta1}: to a_0^+
        else:
            hops.append((+1, -1))
        if p > bottom:
            hops.append((-1, +1))                   # e^{-i(theta1 - theta2)}
        elif n == 0 and literal_center:
            hops.append((-1, +1))
    return hops


def fiber_hops(k_total: int, idx: ZZIndex, literal_center: bool = False) -> list[tuple[int, int]]:
    """Multiplier exponents (a, b): the mode idx is sent to idx + (a, b).

    With ``literal_center`` the two central odd-fiber modes a_0^+/- are given
    the same 2 cos(theta1 +- theta2) action as the interior modes.  That
    symmetric reading is wrong (it leaves the fiber) and is kept so tests can
    demonstrate it.
    """
    fb = fiber_basis(k_total)
    if fb.is_even:
        return _hops_even(fb.k, idx)
    return _hops_odd(fb.k, idx, literal_center)


def tunneling_closed_form(k_total: int, coeffs, phi: float = 0.0, literal_center: bool = False) -> dict:
    """Image of a fiber vector under forward e^{i Phi} + backward e^{-i Phi}.

    Returned as {ZZIndex: coefficient}; modes outside the fiber are kept so
    a wrong action is visible rather than silently truncated.
    """
    fb = fiber_basis(k_total)
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (len(fb),):
        raise ValueError(f"need {len(fb)} coefficients for fiber {k_total}")
    out: dict = {}
    for idx, c in zip(fb.indices, coeffs):
        if c == 0:
            continue
        for a, b in fiber_hops(k_total, idx, literal_center):
            tgt = ZZIndex(idx.p + a, idx.r + b)
            w = np.exp(-1j * a * phi)
            out[tgt] = out.get(tgt, 0) + w * c
    return out


def verify_fiber_actions(params: ModelParams, k_total: int, tol: float = 1e-13, rng=None) -> VerifyReport:
    """Fiber matrix vs. restriction of H, closed-form action vs. matrix, edge rule.

    The comparisons run on the circle sector of bound k_total + 2 so that a
    closed form that leaks out of the fiber shows up as a residual.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    rng = np.random.default_rng(rng)
    report = VerifyReport(f"fiber actions k_total={k_total}")
    p0 = params.with_phi(0.0)
    K = k_total + 2
    basis = enumerate_sector(Rep.CIRCLE, K)
    sl = fiber_slice(basis, k_total)
    H = build_hamiltonian(RepKind.CIRCLE_D4, p0, basis).toarray()
    block = H[np.ix_(sl, sl)]

    t = fiber_matrix(k_total, p0)
    report.add("restriction", float(np.max(np.abs(block - t.toarray()))), tol)
    if params.q != 0:
        td = fiber_matrix(k_total, p0, q_sign=-1.0)
        report.note(
            "restriction, opposite q sign",
            float(np.max(np.abs(block - td.toarray()))),
            "(. - q)^2 instead of the Hamiltonian's (N_- + q)^2",
        )

    _, fwd, bwd = hamiltonian_parts(RepKind.CIRCLE_D4, params, basis)
    e = np.exp(1j * params.phi)
    HT = (e * fwd + np.conj(e) * bwd).toarray()
    n = len(sl)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    full = np.zeros(len(basis), dtype=complex)
    full[sl] = v
    want = HT @ full

    def dense(image: dict) -> tuple[np.ndarray, float]:
        out = np.zeros(len(basis), dtype=complex)
        lost = 0.0
        for idx, c in image.items():
            j = basis.get(idx)
            if j is None:
                lost += abs(c)
            else:
                out[j] += c
        return out, lost

    got, lost = dense(tunneling_closed_form(k_total, v, params.phi))
    report.add("closed-form tunneling action", float(np.max(np.abs(got - want))) + lost, tol)
    if k_total % 2 == 1:
        got_lit, lost_lit = dense(tunneling_closed_form(k_total, v, params.phi, literal_center=True))
        report.note(
            "closed form with symmetric a_0 action",
            float(np.max(np.abs(got_lit - want))) + lost_lit,
            "2cos(theta1 +- theta2) on a_0^+/- maps out of the fiber",
        )

    # edge rule: chain ends have one tunneling neighbour, interior modes two
    T = HT[np.ix_(sl, sl)]
    bad = 0
    for i in range(n):
        nz = [j for j in range(n) if j != i and abs(T[i, j]) > 0]
        expected = 0 if n == 1 else (1 if i in (0, n - 1) else 2)
        if len(nz) != expected or any(abs(abs(T[i, j]) - 1.0) > tol for j in nz):
            bad += 1
    report.add("edge rule violations", bad, 0)
    return report


def sector_block(H: SparseOp, k_total: int) -> np.ndarray:
    """Dense fiber block of an operator on a ZZ/circle (or any) sector basis."""
    if H.basis.representation not in (Rep.ZZ, Rep.CIRCLE):
        H = transport(H, enumerate_sector(Rep.CIRCLE, H.basis.K))
    sl = fiber_slice(H.basis, k_total)
    return H.toarray()[np.ix_(sl, sl)]
