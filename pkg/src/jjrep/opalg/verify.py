"""Cross-checks between the six constructors."""
from __future__ import annotations

from ..indexing import Rep, enumerate_sector
from ..params import ModelParams
from ..report import VerifyReport
from .hamiltonians import (
    CHAIN,
    SYMMETRIC_KINDS,
    RepKind,
    build_circle_literal,
    build_hamiltonian,
    build_symmetric_hamiltonian,
)
from .numbers import NumberKind, build_number
from .sparse import commutator
from .transport import gauge_rotation, transport


def verify_equivalences(params: ModelParams, K: int, tol: float = 1e-13) -> VerifyReport:
    """Compare every constructor pairwise along the chain, and end to end.

    All operators are moved onto the canonical Fock labels before comparing.
    Also recorded: Hermiticity, [N_+, H] = 0 (exactly), the gauge identity
    G(-Phi) H(0) G(Phi) = H(Phi), and, for information, how far the literal
    reading of the ambiguous circle phases is from the Fock form.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    fock = enumerate_sector(Rep.FOCK, K)
    rep = VerifyReport(f"representation equivalence K={K} {params}")
    p0 = params.with_phi(0.0)
    H = {k: transport(build_hamiltonian(k, params, K), fock) for k in CHAIN}
    H0 = {k: build_hamiltonian(k, p0, K) for k in CHAIN}

    for a, b in zip(CHAIN, CHAIN[1:]):
        rep.add(f"adjacent {a.value}~{b.value}", H[a].max_abs_diff(H[b]), tol)
    rep.add(f"end-to-end {CHAIN[0].value}~{CHAIN[-1].value}", H[CHAIN[0]].max_abs_diff(H[CHAIN[-1]]), tol)

    for k in CHAIN:
        h = build_hamiltonian(k, params, K)
        basis = h.basis
        rep.add(f"hermitian {k.value}", h.hermiticity_defect(), tol)
        n_plus = build_number(NumberKind.TOTAL, basis)
        rep.add(f"[N+,H]=0 {k.value}", commutator(n_plus, h).max_abs(), 0.0)
        g = gauge_rotation(params.phi, basis)
        gauged = g.adjoint() @ H0[k] @ g
        rep.add(f"gauge {k.value}", gauged.max_abs_diff(h), tol)

    literal = transport(build_circle_literal(params, K), fock)
    rep.note(
        "circle literal-phase reading vs Fock",
        literal.max_abs_diff(H[RepKind.FOCK_D1]),
        "nonzero whenever Phi != 0: the parenthesized reading is the consistent one",
    )

    if params.q == 0:
        sym = {k: transport(build_symmetric_hamiltonian(k, params, K), fock) for k in SYMMETRIC_KINDS}
        ref = sym[SYMMETRIC_KINDS[0]]
        for k in SYMMETRIC_KINDS[1:]:
            rep.add(f"symmetric {SYMMETRIC_KINDS[0].value}~{k.value}", ref.max_abs_diff(sym[k]), tol)
    return rep
