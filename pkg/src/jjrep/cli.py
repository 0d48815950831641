"""Command-line front end: verification suite and CSV/JSON data products.

Exit codes: 0 success, 1 a verification check failed, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import currents, fibers, mathieu, phase_ops
from .indexing import K_MAX, Rep, enumerate_sector, total_number_zz
from .opalg import RepKind, build_hamiltonian, verify_equivalences
from .params import ModelParams
from .report import VerifyReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """17 significant digits: round-trip exact for doubles."""
    return format(float(x) + 0.0, ".17g")


def _header(params: ModelParams, what: str, with_phi: bool = False) -> list[str]:
    p = f"C={fmt(params.C)} q={fmt(params.q)} alpha={fmt(params.alpha)}"
    if with_phi:
        p += f" phi={fmt(params.phi)}"
    return [
        f"# jjrep {what}: {p}",
        "# charging term (N_- + q)^2/(2C); with 2C = 1 the matrices are the bare (n + q)^2 tables",
    ]


# state files ------------------------------------------------------------------

class StateSpecError(UsageError):
    pass


def _num(entry: dict, key: str, where: str, required: bool = True, integer: bool = False):
    if key not in entry:
        if required:
            raise StateSpecError(f"{where}.{key}: missing")
        return 0
    v = entry[key]
    if integer:
        if isinstance(v, bool) or not isinstance(v, int):
            raise StateSpecError(f"{where}.{key}: expected an integer, got {v!r}")
        return v
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise StateSpecError(f"{where}.{key}: expected a finite number, got {v!r}")
    return float(v)


def parse_state(doc, K: int | None = None):
    """StateSpecFile document -> (vector, circle SectorBasis, FiberState or None)."""
    if not isinstance(doc, dict):
        raise StateSpecError("top level: expected a JSON object")
    kind = doc.get("kind")
    coeffs = doc.get("coefficients")
    if kind not in ("fiber", "lattice"):
        raise StateSpecError(f"kind: expected 'fiber' or 'lattice', got {kind!r}")
    if not isinstance(coeffs, list):
        raise StateSpecError("coefficients: expected a list")
    if kind == "fiber":
        k_total = _num(doc, "k_total", "top level", integer=True)
        if k_total < 0:
            raise StateSpecError(f"k_total: must be >= 0, got {k_total}")
        slots = {}
        for i, e in enumerate(coeffs):
            where = f"coefficients[{i}]"
            if not isinstance(e, dict):
                raise StateSpecError(f"{where}: expected an object")
            n = _num(e, "n", where, integer=True)
            sign = e.get("sign")
            if sign not in ("+", "-", "0"):
                raise StateSpecError(f"{where}.sign: expected '+', '-' or '0', got {sign!r}")
            try:
                fibers.slot_index(k_total, n, sign)
            except ValueError as exc:
                raise StateSpecError(f"{where}: {exc}") from None
            if (n, sign) in slots:
                raise StateSpecError(f"{where}: slot a_{n}^{sign} given twice")
            slots[(n, sign)] = complex(_num(e, "re", where), _num(e, "im", where, required=False))
        fs = currents.FiberState.from_slots(k_total, slots)
        if K is not None and K < k_total:
            raise StateSpecError(f"k_total={k_total} exceeds the sector bound K={K}")
        basis = enumerate_sector(Rep.CIRCLE, k_total if K is None else K)
        return fs.embed(basis), basis, fs
    entries = {}
    for i, e in enumerate(coeffs):
        where = f"coefficients[{i}]"
        if not isinstance(e, dict):
            raise StateSpecError(f"{where}: expected an object")
        p = _num(e, "p", where, integer=True)
        r = _num(e, "r", where, integer=True)
        if (p, r) in entries:
            raise StateSpecError(f"{where}: mode (p={p}, r={r}) given twice")
        entries[(p, r)] = (complex(_num(e, "re", where), _num(e, "im", where, required=False)), where)
    top = max((total_number_zz(pr) for pr in entries), default=0)
    if K is None:
        K = top
    if top > K:
        raise StateSpecError(f"a mode has total number {top} > K={K}")
    if K > K_MAX:
        raise StateSpecError(f"sector bound {K} exceeds the cap {K_MAX}")
    basis = enumerate_sector(Rep.CIRCLE, K)
    vec = np.zeros(len(basis), dtype=complex)
    for pr, (c, _) in entries.items():
        vec[basis.ordinal(pr)] = c
    return vec, basis, None


def load_state(path: str, K: int | None = None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read state file {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateSpecError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return parse_state(doc, K)
    except StateSpecError as exc:
        raise StateSpecError(f"{path}: {exc}") from None


# output -------------------------------------------------------------------------

def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from None


def _csv(header_lines: list[str], columns: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    for h in header_lines:
        buf.write(h + "\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(r) + "\n")
    return buf.getvalue()


def _params(args, phi: bool = True) -> ModelParams:
    try:
        return ModelParams(C=args.C, q=args.q, alpha=args.alpha, phi=args.phi if phi else 0.0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# commands -------------------------------------------------------------------------

def run_verification(params: ModelParams, K: int, tol: float) -> VerifyReport:
    """Every verification suite at one parameter point."""
    rng = np.random.default_rng(20240611)
    report = VerifyReport(f"jjrep verify K={K} tol={tol:g}")
    report.extend(verify_equivalences(params, K, tol), "chain: ")

    for k in range(K + 1):
        report.extend(fibers.verify_fiber_actions(params, k, tol, rng), f"fiber {k}: ")

    H = build_hamiltonian(RepKind.CIRCLE_D4, params, K)
    dense = np.linalg.eigvalsh(H.toarray())
    assembled = np.sort([v for _, v in fibers.assemble_spectrum(params, K)])
    scale = max(1.0, float(np.max(np.abs(dense))))
    report.add(
        "spectrum: dense vs fibers (relative)", float(np.max(np.abs(dense - assembled))) / scale, tol,
        "H(Phi) is gauge equivalent to H(0), so the fibers give its spectrum at every Phi",
    )

    basis = enumerate_sector(Rep.CIRCLE, K)
    ref = currents.relative_number_commutator(params, basis)
    for kind in currents.CurrentKind:
        report.add(f"current: {kind.value} vs (i/2)[N_-,H]",
                   currents.build_current(kind, params, basis).max_abs_diff(ref), tol)
    psi = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    I_phi = currents.build_current(currents.CurrentKind.CIRCLE_BLOCK_TABLE, params, basis)
    I_0 = currents.build_current(currents.CurrentKind.CIRCLE_BLOCK_TABLE, params.with_phi(0.0), basis)
    moved = currents.ab_transport(psi, params.phi, basis)
    report.add("current: Aharonov-Bohm transport",
               abs(currents.expectation(psi, I_phi) - currents.expectation(moved, I_0)), tol * max(1.0, float(np.vdot(psi, psi).real)))

    for k in range(1, max(1, K // 2) + 1):
        report.extend(mathieu.verify_fiber_limit(params.C, params.alpha, k, 3, tol), f"mathieu k={k}: ")

    N = 32
    c = phase_ops.realized_sign(N)
    report.add("phase: |c| = 1 for [T_G, M](f_n - f_m) = c i (f_n - f_m)", abs(abs(c) - 1.0), 0.0)
    report.note("phase: realized c", c.real, "sign of [T_G, M] on difference vectors")
    G = phase_ops.galindo_matrix(N).matrix
    report.add("phase: log series (minus form) vs kernel",
               float(np.max(np.abs(phase_ops.galindo_log_series(N, N - 1).matrix - G))), tol)
    return report


def cmd_verify(args) -> int:
    if args.K < 0 or args.K > K_MAX:
        raise UsageError(f"--K must be in [0, {K_MAX}]")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    report = run_verification(_params(args), args.K, args.tol)
    sys.stdout.write((report.to_json() if args.json else report.format_text()) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_spectrum(args) -> int:
    if args.kmax < 0 or args.kmax > K_MAX:
        raise UsageError(f"--kmax must be in [0, {K_MAX}]")
    params = _params(args, phi=False)
    rows = []
    for k in range(args.kmax + 1):
        ev = fibers.fiber_eigs(fibers.fiber_matrix(k, params))
        rows.extend((k, i, float(v)) for i, v in enumerate(ev))
    if args.format == "json":
        doc = {
            "params": {"C": params.C, "q": params.q, "alpha": params.alpha},
            "rows": [{"k_total": k, "index": i, "eigenvalue": v} for k, i, v in rows],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = _csv(_header(params, "spectrum"), ["k_total", "index", "eigenvalue"],
                    [[str(k), str(i), fmt(v)] for k, i, v in rows])
    _emit(text, args.out)
    return EXIT_OK


def cmd_fiber(args) -> int:
    if args.k < 0 or args.k > K_MAX:
        raise UsageError(f"--k must be in [0, {K_MAX}]")
    params = _params(args, phi=False)
    t = fibers.fiber_matrix(args.k, params)
    ev = fibers.fiber_eigs(t)
    labels = [[int(p), int(r)] for p, r in fibers.fiber_basis(args.k).indices]
    if args.format == "csv":
        rows = [[str(i), str(p), str(r), fmt(d), fmt(t.off[i]) if i < len(t.off) else "", fmt(ev[i])]
                for i, ((p, r), d) in enumerate(zip(labels, t.diag))]
        text = _csv(_header(params, f"fiber k_total={args.k}"),
                    ["index", "p", "r", "diagonal", "off_diagonal", "eigenvalue"], rows)
    else:
        doc = {
            "k_total": args.k,
            "params": {"C": params.C, "q": params.q, "alpha": params.alpha},
            "modes": labels,
            "diag": [float(x) for x in t.diag],
            "off": [float(x) for x in t.off],
            "eigenvalues": [float(x) for x in ev],
        }
        text = json.dumps(doc, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_fraunhofer(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    if args.nodes < 1:
        raise UsageError("--nodes must be >= 1")
    if not (math.isfinite(args.psi_min) and math.isfinite(args.psi_max)):
        raise UsageError("--psi-min/--psi-max must be finite")
    params = _params(args, phi=False)
    vec, basis, _ = load_state(args.state, args.K)
    grid = np.linspace(args.psi_min, args.psi_max, args.samples)
    samples = currents.fraunhofer_curve((vec, basis), grid, params, args.nodes)
    rows = [[fmt(s.psi), fmt(s.quadrature), fmt(s.analytic), fmt(s.abs_dev)] for s in samples]
    head = _header(params, "fraunhofer") + [f"# Gauss-Legendre nodes={args.nodes}; analytic = sinc(psi/2) <I(0)>"]
    _emit(_csv(head, ["psi", "total_quadrature", "total_analytic", "abs_dev"], rows), args.out)
    return EXIT_OK


def _phi_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if len(parts) != 3:
            raise ValueError
    except (ValueError, IndexError):
        raise UsageError(f"--phi-grid must be min:max:n, got {spec!r}") from None
    if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError(f"--phi-grid needs finite bounds and n >= 1, got {spec!r}")
    return np.linspace(lo, hi, n)


def cmd_current(args) -> int:
    grid = _phi_grid(args.phi_grid)
    params = _params(args, phi=False)
    vec, basis, fs = load_state(args.state, args.K)
    rows = []
    for phi in grid:
        p = params.with_phi(float(phi))
        val = currents.expectation(vec, currents.build_current(currents.CurrentKind.FOCK_CLOSED_FORM, p, basis))
        if fs is not None:
            cf = currents.fiber_current_expectation(fs, p)
            rows.append([fmt(phi), fmt(val), fmt(cf), fmt(abs(val - cf))])
        else:
            rows.append([fmt(phi), fmt(val), "", ""])
    _emit(_csv(_header(params, "current"), ["phi", "expectation", "closed_form", "abs_dev"], rows), args.out)
    return EXIT_OK


# parser -------------------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser, phi: bool = True) -> None:
    p.add_argument("--C", type=float, default=1.0, help="capacitance (> 0), default 1")
    p.add_argument("--q", type=float, default=0.0, help="offset charge, default 0")
    p.add_argument("--alpha", type=float, default=1.0, help="Josephson coupling, default 1")
    if phi:
        p.add_argument("--phi", type=float, default=0.0, help="junction phase, default 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jjrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run every verification suite")
    p.add_argument("--K", type=int, default=6, help="sector bound on the total pair number")
    _add_params(p)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="eigenvalues of every fiber up to kmax")
    p.add_argument("--kmax", type=int, required=True)
    _add_params(p, phi=False)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("fiber", help="tridiagonal matrix and eigenvalues of one fiber")
    p.add_argument("--k", type=int, required=True, help="total pair number of the fiber")
    _add_params(p, phi=False)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("fraunhofer", help="total current over a linearly varying phase")
    p.add_argument("--state", required=True, help="state JSON file")
    p.add_argument("--psi-min", type=float, default=-25.0)
    p.add_argument("--psi-max", type=float, default=25.0)
    p.add_argument("--samples", type=int, default=101)
    _add_params(p, phi=False)
    p.add_argument("--nodes", type=int, default=64, help="Gauss-Legendre nodes")
    p.add_argument("--K", type=int, default=None, help="sector bound (default: smallest containing the state)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fraunhofer)

    p = sub.add_parser("current", help="current expectation on a phase grid")
    p.add_argument("--state", required=True, help="state JSON file")
    p.add_argument("--phi-grid", required=True, help="min:max:n")
    _add_params(p, phi=False)
    p.add_argument("--K", type=int, default=None, help="sector bound (default: smallest containing the state)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_current)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"jjrep {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
