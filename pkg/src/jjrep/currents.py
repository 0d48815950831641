"""Josephson current: three constructions, fiber closed forms, Fraunhofer integral.

The current is I(Phi) = (i/2)[N_-, H(Phi)].  It is built three ways:

FockClosedForm      i alpha (e^{i Phi} L (x) L* - e^{-i Phi} L* (x) L) on Fock labels
CircleCommutator    [i p, H_circle(Phi)], i.e. -alpha [d/dtheta1, H_T]
CircleBlockTable    -alpha sum_ij K_ij p_i (x) p_j, the 4 x 4 table of
                    theta1/theta2 blocks p1 = (-inf,-2], p2 = {-1}, p3 = {0},
                    p4 = [1, inf)
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fibers import fiber_basis, fiber_hops, fiber_slots, slot_index
from .indexing import Rep, SectorBasis, enumerate_sector, total_number
from .opalg import RepKind, build_hamiltonian, commutator, transport
from .opalg.lattice import LabelOp, P, multiplication, tensor
from .opalg.sparse import SparseOp
from .opalg.hamiltonians import label_parts
from .params import ModelParams

HERMITICITY_TOL = 1e-12


class CurrentKind(enum.Enum):
    FOCK_CLOSED_FORM = "FockClosedForm"
    CIRCLE_COMMUTATOR = "CircleCommutator"
    CIRCLE_BLOCK_TABLE = "CircleBlockTable"


class HermiticityError(ValueError):
    pass


# theta1 / theta2 blocks of the table
BLOCKS = {1: (None, -2), 2: (-1, -1), 3: (0, 0), 4: (1, None)}

_S = lambda a, b: [(1j, a, b), (-1j, -a, -b)]  # -2 sin(a theta1 + b theta2 - a Phi)

# K_ij as lists of (c, a, b): c e^{i(a theta1 + b theta2)} e^{-i a Phi}.
K_TABLE = {
    (1, 1): _S(1, -1),
    (1, 2): [(1j, 1, -1)],
    (1, 3): [(1j, 1, 1)],
    (1, 4): _S(1, 1),
    (2, 1): [(-1j, -1, 1), (1j, 1, 0)],
    (2, 2): [(1j, 1, 0)],
    (2, 3): [(1j, 1, 1)],
    (2, 4): _S(1, 1),
    (3, 1): [(-1j, -1, 0), (1j, 1, 1)],
    (3, 2): [(-1j, -1, 0)],
    (3, 3): [],
    (3, 4): [(-1j, -1, -1), (1j, 1, -1)],
    (4, 1): _S(1, 1),
    (4, 2): [(-1j, -1, -1)],
    (4, 3): [(-1j, -1, 1)],
    (4, 4): _S(1, -1),
}

# The (3, 2) entry with the opposite sign.  It is not the theta1-derivative
# of the corresponding Hamiltonian block; kept so tests can show the mismatch.
K32_FLIPPED = [(1j, -1, 0)]


def block_projection(i: int, j: int) -> LabelOp:
    return tensor(P(*BLOCKS[i]), P(*BLOCKS[j]))


def _table_parts(table: dict) -> tuple[LabelOp, LabelOp]:
    """Split the table into the e^{+i Phi} (p lowering) and e^{-i Phi} parts."""
    lower = raise_ = None
    for (i, j), terms in table.items():
        pij = block_projection(i, j)
        for c, a, b in terms:
            t = c * (multiplication(a, b) @ pij)
            if a < 0:
                lower = t if lower is None else lower + t
            else:
                raise_ = t if raise_ is None else raise_ + t
    return lower, raise_


@lru_cache(maxsize=64)
def _block_table_restricted(basis: SectorBasis, flipped_k32: bool):
    table = dict(K_TABLE)
    if flipped_k32:
        table[(3, 2)] = K32_FLIPPED
    lower, raise_ = _table_parts(table)
    return lower.restrict(basis, strict=True), raise_.restrict(basis, strict=True)


@lru_cache(maxsize=64)
def _fock_restricted(basis: SectorBasis):
    parts = label_parts(RepKind.FOCK_D1)
    return parts.forward.restrict(basis, strict=True), parts.backward.restrict(basis, strict=True)


_NATIVE = {
    CurrentKind.FOCK_CLOSED_FORM: Rep.FOCK,
    CurrentKind.CIRCLE_COMMUTATOR: Rep.CIRCLE,
    CurrentKind.CIRCLE_BLOCK_TABLE: Rep.CIRCLE,
}


def build_current(
    kind: CurrentKind, params: ModelParams, basis: SectorBasis | int, flipped_k32: bool = False
) -> SparseOp:
    """Current operator I(Phi) on a sector.

    ``basis`` may be a sector bound K (native basis of the construction) or
    any SectorBasis, onto which the result is relabelled.
    """
    kind = CurrentKind(kind)
    target = basis if isinstance(basis, SectorBasis) else None
    K = basis.K if target is not None else basis
    native = enumerate_sector(_NATIVE[kind], K)
    e = cmath.exp(1j * params.phi)
    a = params.alpha
    if kind == CurrentKind.FOCK_CLOSED_FORM:
        fwd, bwd = _fock_restricted(native)
        op = 1j * a * (e * fwd - e.conjugate() * bwd)
    elif kind == CurrentKind.CIRCLE_COMMUTATOR:
        H = build_hamiltonian(RepKind.CIRCLE_D4, params, native)
        D = SparseOp.diagonal(native, [1j * p for p, _ in native.indices])
        op = commutator(D, H)
    else:
        lower, raise_ = _block_table_restricted(native, flipped_k32)
        op = -a * (e * lower + e.conjugate() * raise_)
    return op if target is None else transport(op, target)


def relative_number_commutator(params: ModelParams, basis: SectorBasis | int) -> SparseOp:
    """(i/2)[N_-, H(Phi)] computed from the Fock Hamiltonian (definition of the current)."""
    from .opalg import NumberKind, build_number

    H = build_hamiltonian(RepKind.FOCK_D1, params, basis if isinstance(basis, int) else basis.K)
    N = build_number(NumberKind.RELATIVE, H.basis)
    op = 0.5j * commutator(N, H)
    return op if isinstance(basis, int) else transport(op, basis)


def expectation(state, op: SparseOp) -> float:
    """<psi, O psi> for Hermitian O; rejects a non-negligible imaginary part."""
    psi = np.asarray(state, dtype=complex)
    val = np.vdot(psi, op.apply(psi))
    scale = float(np.vdot(psi, psi).real) * max(op.row_sum_bound(), 1.0)
    if abs(val.imag) > HERMITICITY_TOL * scale:
        raise HermiticityError(f"imaginary part {val.imag:.3e} of expectation exceeds tolerance")
    return float(val.real)


# fiber states ----------------------------------------------------------------

@dataclass(frozen=True)
class FiberState:
    """Coefficients of a vector in one fiber, in fiber order."""

    k_total: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).copy()
        n = len(fiber_basis(self.k_total))
        if c.shape != (n,):
            raise ValueError(f"fiber {self.k_total} has {n} modes, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_slots(cls, k_total: int, slots: dict) -> "FiberState":
        """Build from {(n, sign): coefficient} with sign in '+', '-', '0'."""
        fb = fiber_basis(k_total)
        pos = {idx: i for i, idx in enumerate(fb.indices)}
        c = np.zeros(len(fb), dtype=complex)
        for (n, sign), v in slots.items():
            c[pos[slot_index(k_total, n, sign)]] += v
        return cls(k_total, c)

    def slot(self, n: int, sign: str) -> complex:
        fb = fiber_basis(self.k_total)
        return complex(self.coeffs[fb.indices.index(slot_index(self.k_total, n, sign))])

    def embed(self, basis: SectorBasis | int) -> np.ndarray:
        """Vector on a sector basis (any representation); K defaults to k_total."""
        if isinstance(basis, int):
            basis = enumerate_sector(Rep.CIRCLE, basis)
        if basis.K < self.k_total:
            raise ValueError(f"sector K={basis.K} does not contain fiber {self.k_total}")
        from .indexing import from_fock, zz_to_fock

        v = np.zeros(len(basis), dtype=complex)
        for idx, c in zip(fiber_basis(self.k_total).indices, self.coeffs):
            v[basis.ordinal(from_fock(basis.representation, zz_to_fock(idx)))] = c
        return v


def fiber_current_image(fs: FiberState, params: ModelParams, literal_center: bool = False) -> dict:
    """Closed-form I(Phi) psi for a fiber state, as {ZZIndex: coefficient}.

    Each hop e^{i(a theta1 + b theta2)} of the tunneling action becomes
    -alpha (i a) e^{-i a Phi} after differentiating in theta1; pairs of hops
    combine into the 2 alpha sin(theta1 - Phi +- theta2) terms.
    """
    out: dict = {}
    for idx, c in zip(fiber_basis(fs.k_total).indices, fs.coeffs):
        if c == 0:
            continue
        for a, b in fiber_hops(fs.k_total, idx, literal_center):
            tgt = type(idx)(idx.p + a, idx.r + b)
            w = -params.alpha * 1j * a * cmath.exp(-1j * a * params.phi)
            out[tgt] = out.get(tgt, 0) + w * c
    return out


def fiber_current_expectation(fs: FiberState, params: ModelParams, literal_center: bool = False) -> float:
    """<psi, I(Phi) psi> from the closed-form fiber action (no matrices)."""
    image = fiber_current_image(fs, params, literal_center)
    own = dict(zip(fiber_basis(fs.k_total).indices, fs.coeffs))
    val = sum(np.conj(own.get(idx, 0)) * c for idx, c in image.items())
    return float(np.real(val))


def standing_wave_state(k_total: int, coeffs) -> FiberState:
    """Fiber state with a_n^+ = a_n^-.

    Even k_total = 2k takes (a_0, a_1, ..., a_{k-1}); odd k_total = 2k - 1
    takes (a_0, ..., a_{k-2}) and is the one-mode shifted standing wave.
    The edge modes are left empty.
    """
    coeffs = list(coeffs)
    fb = fiber_basis(k_total)
    k = fb.k
    if fb.is_even:
        need = k
        if k < 1 or len(coeffs) != need:
            raise ValueError(f"fiber {k_total} takes {need} standing-wave coefficients, got {len(coeffs)}")
        slots = {(0, "0"): coeffs[0]}
        for n in range(1, k):
            slots[(n, "+")] = slots[(n, "-")] = coeffs[n]
    else:
        need = k - 1
        if need < 1 or len(coeffs) != need:
            raise ValueError(f"fiber {k_total} takes {max(need, 0)} standing-wave coefficients, got {len(coeffs)}")
        slots = {}
        for n in range(k - 1):
            slots[(n, "+")] = slots[(n, "-")] = coeffs[n]
    return FiberState.from_slots(k_total, slots)


# Aharonov-Bohm transport and the Fraunhofer pattern ---------------------------

def ab_transport(state, phi: float, basis: SectorBasis) -> np.ndarray:
    """Translate theta1 by phi: the coefficient at (p, r) gains e^{i p phi}."""
    if basis.representation not in (Rep.ZZ, Rep.CIRCLE):
        raise ValueError("ab_transport acts on ZZ or circle labels")
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (len(basis),):
        raise ValueError("state length does not match the basis")
    phases = np.exp(1j * phi * np.array([p for p, _ in basis.indices], dtype=float))
    return phases * psi


def _as_vector(state, K: int | None):
    if isinstance(state, FiberState):
        basis = enumerate_sector(Rep.CIRCLE, state.k_total if K is None else K)
        return state.embed(basis), basis
    if isinstance(state, tuple) and len(state) == 2 and isinstance(state[1], SectorBasis):
        vec, basis = state
        return np.asarray(vec, dtype=complex), basis
    raise TypeError("state must be a FiberState or a (vector, SectorBasis) pair")


@lru_cache(maxsize=8)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * x, 0.5 * w  # mapped to [-1/2, 1/2]


def fraunhofer_total(
    state,
    Psi: float,
    params: ModelParams,
    n_nodes: int = 64,
    kind: CurrentKind = CurrentKind.CIRCLE_BLOCK_TABLE,
) -> float:
    """Integral over x in [-1/2, 1/2] of <psi, I(Psi x) psi>, by Gauss-Legendre."""
    if n_nodes < 1:
        raise ValueError("n_nodes must be positive")
    psi, basis = _as_vector(state, None)
    x, w = _gauss_legendre(n_nodes)
    total = 0.0
    for xi, wi in zip(x, w):
        total += wi * expectation(psi, build_current(kind, params.with_phi(Psi * xi), basis))
    return float(total)


def sinc_half(Psi: float) -> float:
    """sin(Psi/2) / (Psi/2), equal to the integral of e^{i Psi x} over [-1/2, 1/2]."""
    return float(np.sinc(Psi / (2.0 * np.pi)))


@dataclass(frozen=True)
class FraunhoferSample:
    psi: float
    quadrature: float
    analytic: float

    @property
    def abs_dev(self) -> float:
        return abs(self.quadrature - self.analytic)


def fraunhofer_curve(state, psi_grid, params: ModelParams, n_nodes: int = 64) -> list[FraunhoferSample]:
    """Quadrature total next to sinc(Psi/2) times the zero-phase current.

    Every matrix element of I(Phi) carries exactly one factor e^{+-i Phi},
    so <I(Phi)> = A cos Phi + B sin Phi for any state and the integral over
    Phi = Psi x is sinc(Psi/2) <I(0)>.
    """
    psi, basis = _as_vector(state, None)
    i0 = expectation(psi, build_current(CurrentKind.CIRCLE_BLOCK_TABLE, params.with_phi(0.0), basis))
    out = []
    for Psi in psi_grid:
        Psi = float(Psi)
        quad = fraunhofer_total((psi, basis), Psi, params, n_nodes)
        out.append(FraunhoferSample(Psi, quad, sinc_half(Psi) * i0))
    return out


def fiber_of(basis: SectorBasis, vec) -> int | None:
    """The single total number carrying the weight of ``vec``, or None if mixed/zero."""
    ks = {total_number(basis.representation, basis.indices[i]) for i in np.flatnonzero(np.asarray(vec))}
    return ks.pop() if len(ks) == 1 else None


__all__ = [
    "BLOCKS",
    "CurrentKind",
    "FiberState",
    "FraunhoferSample",
    "HermiticityError",
    "K_TABLE",
    "ab_transport",
    "block_projection",
    "build_current",
    "expectation",
    "fiber_current_expectation",
    "fiber_current_image",
    "fiber_of",
    "fiber_slots",
    "fraunhofer_curve",
    "fraunhofer_total",
    "relative_number_commutator",
    "sinc_half",
    "standing_wave_state",
]
