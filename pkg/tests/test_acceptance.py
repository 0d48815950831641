"""Acceptance criteria at their stated tolerances, one PASS/FAIL line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
import functools
import itertools
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402

from jjrep.currents import (  # noqa: E402
    CurrentKind,
    FiberState,
    ab_transport,
    build_current,
    expectation,
    fraunhofer_total,
    standing_wave_state,
)
from jjrep.fibers import assemble_spectrum, fiber_basis, fiber_eigs, fiber_matrix, sector_block, verify_fiber_actions  # noqa: E402
from jjrep.indexing import Rep, enumerate_sector  # noqa: E402
from jjrep.mathieu import mathieu_low_eigs, mathieu_matrix, verify_fiber_limit  # noqa: E402
from jjrep.opalg import CHAIN, NumberKind, RepKind, build_hamiltonian, build_number, commutator, gauge_rotation, transport  # noqa: E402
from jjrep.opalg import hamiltonians  # noqa: E402
from jjrep.params import ModelParams  # noqa: E402
from jjrep.phase_ops import commutator_scaling, galindo_log_series, galindo_matrix  # noqa: E402

SEED = 20240611


def random_sweep(n=20, seed=SEED):
    rng = np.random.default_rng(seed)
    return [
        ModelParams(C=rng.uniform(0.1, 10), q=rng.uniform(-2, 2), alpha=rng.uniform(-3, 3), phi=rng.uniform(-math.pi, math.pi))
        for _ in range(n)
    ]


def line(tag, ok, detail):
    return f"criterion {tag}: {'PASS' if ok else 'FAIL'}  {detail}"


# criteria: each returns (ok, detail) -------------------------------------------------

def criterion_1():
    hamiltonians._restricted.cache_clear()
    t0 = time.perf_counter()
    fock = enumerate_sector(Rep.FOCK, 10)
    worst = 0.0
    for p in random_sweep():
        mats = [transport(build_hamiltonian(kind, p, 10), fock) for kind in CHAIN]
        for a, b in itertools.combinations(mats, 2):
            worst = max(worst, a.max_abs_diff(b))
    dt = time.perf_counter() - t0
    return worst <= 1e-13 and dt < 5.0, f"max pairwise residual {worst:.2e} (<= 1e-13), {dt:.2f} s (< 5 s)"


def criterion_2():
    worst_comm = 0.0
    worst_gauge = 0.0
    for p in random_sweep():
        for kind in CHAIN:
            H = build_hamiltonian(kind, p, 10)
            N = build_number(NumberKind.TOTAL, H.basis)
            worst_comm = max(worst_comm, commutator(N, H).max_abs())
            G = gauge_rotation(p.phi, H.basis)
            H0 = build_hamiltonian(kind, p.with_phi(0.0), H.basis)
            worst_gauge = max(worst_gauge, (G.adjoint() @ H0 @ G).max_abs_diff(H))
    ok = worst_comm == 0.0 and worst_gauge <= 1e-13
    return ok, f"max |[N+, H]| = {worst_comm:.1e} (exactly 0), gauge residual {worst_gauge:.2e} (<= 1e-13)"


def criterion_3():
    t0 = time.perf_counter()
    K = 12
    worst_ev = 0.0
    worst_restrict = 0.0
    count = 0
    for p in (ModelParams(), ModelParams(C=0.45, q=0.7, alpha=-1.8), ModelParams(C=3.1, q=-1.3, alpha=2.4)):
        H = build_hamiltonian(RepKind.CIRCLE_D4, p, K)
        dense = oracles.jacobi_eigvalsh(H.toarray().real)
        fib = np.sort([v for _, v in assemble_spectrum(p, K)])
        count = len(fib)
        worst_ev = max(worst_ev, float(np.max(np.abs(dense - fib))))
        for k in range(K + 1):
            worst_restrict = max(worst_restrict, float(np.max(np.abs(sector_block(H, k) - fiber_matrix(k, p).toarray()))))
    dt = time.perf_counter() - t0
    ok = count == 91 and worst_ev <= 1e-10 and worst_restrict == 0.0 and dt < 5.0
    return ok, (f"{count} eigenvalues, max deviation {worst_ev:.2e} (<= 1e-10), "
                f"restriction residual {worst_restrict:.1e} (0), {dt:.2f} s (< 5 s)")


def criterion_4():
    ev2 = fiber_eigs(fiber_matrix(2, ModelParams(C=0.5, q=0.0, alpha=1.0)))
    r2 = float(np.max(np.abs(ev2 - [2 - math.sqrt(6), 4.0, 2 + math.sqrt(6)])))
    ev1 = fiber_eigs(fiber_matrix(1, ModelParams(C=1.0, q=0.0, alpha=1.0)))
    r1 = float(np.max(np.abs(ev1 - [-0.5, 1.5])))
    labels, H = oracles.fock_hamiltonian(1, 1.0, 0.0, 1.0, 0.0)
    block = oracles.relabel(H, labels, [(1, 0), (0, 1)]).real
    rb = float(np.max(np.abs(oracles.jacobi_eigvalsh(block) - ev1)))
    ok = r2 <= 1e-12 and r1 <= 1e-14 and rb <= 1e-14
    return ok, f"k_total=2 residual {r2:.1e} (<= 1e-12), k_total=1 residual {r1:.1e} (<= 1e-14), Fock block {rb:.1e}"


def criterion_5a():
    worst = 0.0
    for K in (1, 4, 7, 10):
        fock = enumerate_sector(Rep.FOCK, K)
        for p in random_sweep():
            ops = [build_current(kind, p, fock) for kind in CurrentKind]
            for a, b in itertools.combinations(ops, 2):
                worst = max(worst, a.max_abs_diff(b))
    return worst <= 1e-13, f"three current constructions, max residual {worst:.2e} (<= 1e-13)"


@functools.lru_cache(maxsize=None)
def current_norms(K=10):
    """(||I||_2, |alpha|) over the sweep; the norm from the dense oracle."""
    out = []
    for p in random_sweep():
        I = build_current(CurrentKind.FOCK_CLOSED_FORM, p, K).toarray()
        out.append((float(np.max(np.abs(oracles.jacobi_eigvalsh(I)))), abs(p.alpha)))
    return out


def criterion_5b():
    norms = current_norms()
    excess = max(n - a for n, a in norms)
    worst_ratio = max(n / a for n, a in norms)
    return excess <= 1e-12, f"||I||_2 - |alpha| up to {excess:.3f} (<= 1e-12); ||I||_2/|alpha| up to {worst_ratio:.4f}"


def criterion_5_sharp():
    K = 10
    sharp = 2 * math.cos(math.pi / (K + 2))
    dev = max(abs(n - sharp * a) for n, a in current_norms(K))
    return dev <= 1e-12, f"||I||_2 = 2|alpha| cos(pi/(K+2)) at K={K}, max deviation {dev:.1e} (<= 1e-12)"


def criterion_6():
    fs = FiberState.from_slots(2, {(0, "0"): 1.0, (1, "+"): 1j})
    p = ModelParams(alpha=1.3)
    worst = 0.0
    for Psi in np.linspace(-25, 25, 101):
        worst = max(worst, abs(fraunhofer_total(fs, Psi, p) + 2 * p.alpha * np.sinc(Psi / (2 * math.pi))))
    zeros = max(abs(fraunhofer_total(fs, 2 * math.pi * n, p)) for n in (-3, -2, -1, 1, 2, 3))
    ok = worst <= 1e-12 and zeros <= 1e-12
    return ok, f"101-point grid max deviation {worst:.2e} (<= 1e-12), |total| at 2 pi n {zeros:.2e} (<= 1e-12)"


def criterion_7():
    rng = np.random.default_rng(SEED)
    p = ModelParams(C=0.8, q=0.3, alpha=1.6)
    psis = np.linspace(-25, 25, 41)
    phis = np.linspace(-math.pi, math.pi, 25)
    worst_total = 0.0
    worst_fit = 0.0
    for k in (2, 3, 4):
        for k_total, n in ((2 * k, k), (2 * k - 1, k - 1)):
            for _ in range(3):
                fs = standing_wave_state(k_total, rng.normal(size=n))
                psi = fs.embed(k_total)
                basis = enumerate_sector(Rep.CIRCLE, k_total)
                for Psi in psis:
                    worst_total = max(worst_total, abs(fraunhofer_total(fs, Psi, p)))
                vals = np.array([expectation(psi, build_current(CurrentKind.CIRCLE_BLOCK_TABLE, p.with_phi(f), basis)) for f in phis])
                s = np.sin(phis)
                amp = float(vals @ s / (s @ s))
                worst_fit = max(worst_fit, float(np.max(np.abs(vals - amp * s))))
    ok = worst_total <= 1e-12 and worst_fit <= 1e-11
    return ok, f"max |I_total| {worst_total:.2e} (<= 1e-12), non-sine residual {worst_fit:.2e} (<= 1e-11)"


def criterion_8():
    rng = np.random.default_rng(SEED)
    basis = enumerate_sector(Rep.CIRCLE, 8)
    worst = 0.0
    for p in random_sweep(32, SEED + 1):
        psi = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
        psi /= np.linalg.norm(psi)
        lhs = expectation(psi, build_current(CurrentKind.CIRCLE_COMMUTATOR, p, basis))
        u = ab_transport(psi, p.phi, basis)
        rhs = expectation(u, build_current(CurrentKind.CIRCLE_COMMUTATOR, p.with_phi(0.0), basis))
        worst = max(worst, abs(lhs - rhs))
    return worst <= 1e-12, f"32 states, max residual {worst:.2e} (<= 1e-12)"


def criterion_9():
    struct = 0.0
    for C, alpha in ((1.0, 1.0), (0.3, -2.2), (7.5, 0.4)):
        for k in range(0, 21):
            m = mathieu_matrix(C, alpha, k)
            f = fiber_matrix(2 * k, ModelParams(C=C, q=0.0, alpha=alpha))
            struct = max(struct, float(np.max(np.abs(m.diag - f.diag))), float(np.max(np.abs(m.off - f.off), initial=0.0)))
    # at (1, 1) the gaps are already below one ulp; (100, 5) keeps them visible
    reports = [verify_fiber_limit(C, alpha, 8) for C, alpha in ((1.0, 1.0), (100.0, 5.0))]
    gaps = [[r[f"gap n_cut={k}"].residual for k in (8, 12, 16)] for r in reports]
    mono = all(
        np.all(mathieu_low_eigs(C, alpha, n, 3) >= mathieu_low_eigs(C, alpha, n + 1, 3))
        for C, alpha in ((1.0, 1.0), (100.0, 5.0))
        for n in range(8, 32)
    )
    ok = struct == 0.0 and all(r.passed for r in reports) and mono
    shown = "; ".join(", ".join(f"{g:.2e}" for g in gs) for gs in gaps)
    return ok, f"entrywise residual {struct:.1e} (0), monotone in cutoff: {mono}, gaps at 8/12/16 for (C, alpha) = (1, 1); (100, 5): {shown}"


def criterion_10():
    bad = 0
    for k_total in range(0, 21):
        rep = verify_fiber_actions(ModelParams(C=0.9, q=0.2, alpha=-1.3, phi=0.0), k_total, 1e-13, rng=k_total)
        bad += int(rep["edge rule violations"].residual)
        t = fiber_matrix(k_total, ModelParams(alpha=-1.3))
        T = t.toarray() - np.diag(t.diag)
        counts = np.count_nonzero(T, axis=1)
        if len(counts) > 1:
            bad += int(counts[0] != 1) + int(counts[-1] != 1) + int(np.sum(counts[1:-1] != 2))
            bad += int(np.sum(np.abs(T[T != 0]) != 1.3))
    return bad == 0, f"edge/interior rule violations over k_total <= 20: {bad} (0)"


def criterion_11():
    N = 32
    cs = {commutator_scaling(n, m, N) for n in range(N) for m in range(n + 1, N)}
    c = next(iter(cs))
    single = len(cs) == 1 and abs(c) == 1
    S = galindo_log_series(N, N - 1).matrix
    T = galindo_matrix(N).matrix
    kernel = float(np.max(np.abs(S - T)))
    return single and kernel <= 1e-15, (f"single global factor c = {c.real:+g} (|c| = 1) over all n < m < {N}, "
                                        f"log-series vs kernel {kernel:.1e}")


CRITERIA = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "5a": criterion_5a,
    "5b": criterion_5b,
    "6": criterion_6,
    "7": criterion_7,
    "8": criterion_8,
    "9": criterion_9,
    "10": criterion_10,
    "11": criterion_11,
}

NORM_CLAUSE = (
    "||I||_2 <= |alpha| is false: on each fiber I is |alpha| times the adjacency matrix of a path, "
    "so its norm is 2|alpha| cos(pi/(K+2)) on the K-sector, above |alpha| for every K >= 1"
)


# pytest entry points ------------------------------------------------------------------

@pytest.fixture
def emit(capsys):
    def _emit(text):
        with capsys.disabled():
            print("\n" + text)
    return _emit


@pytest.mark.parametrize("tag", [t for t in CRITERIA if t != "5b"])
def test_criterion(tag, emit):
    ok, detail = CRITERIA[tag]()
    emit(line(tag, ok, detail))
    assert ok, detail


@pytest.mark.xfail(strict=True, reason=NORM_CLAUSE)
def test_criterion_5b_norm_bound(emit):
    ok, detail = criterion_5b()
    emit(line("5b", ok, detail))
    assert ok, detail


def test_criterion_5_sharp_norm(emit):
    ok, detail = criterion_5_sharp()
    emit(line("5 (sharp norm)", ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for tag, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(line(tag, ok, detail))
    ok, detail = criterion_5_sharp()
    print(line("5 (sharp norm)", ok, detail))
    print(f"{failed} criterion line(s) failed; 5b: {NORM_CLAUSE}")
    sys.exit(1 if failed else 0)
