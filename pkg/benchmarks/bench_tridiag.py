"""Compiled vs pure-Python tridiagonal kernel on truncated Mathieu matrices.

    python3 benchmarks/bench_tridiag.py [--sizes 101 401 1601] [--repeat 3]

Times QL eigenvalues alone and with the bisection polish (the path used by
fiber_eigs) and prints one row per (size, stage).  The last column is the
largest difference between backends in units of eps |T|: QL values can
differ by a few units (libc hypot and math.hypot round differently), the
polished values agree bit for bit.
"""
import argparse
import timeit

import numpy as np

from jjrep import tridiag
from jjrep.mathieu import mathieu_matrix


def best_of(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[101, 401, 1601], help="matrix dimensions (odd)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--polish-max", type=int, default=401, help="largest size timed with the bisection polish")
    ap.add_argument("--C", type=float, default=1.0)
    ap.add_argument("--alpha", type=float, default=1.0)
    args = ap.parse_args(argv)

    backends = tridiag.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the pure-Python backend only")
    print(f"{'dim':>6} {'stage':>8} " + " ".join(f"{b + ' [s]':>12}" for b in backends) + f" {'speedup':>9} {'diff/eps|T|':>12}")
    for dim in args.sizes:
        t = mathieu_matrix(args.C, args.alpha, dim // 2)
        stages = [("ql", False)] + ([("polished", True)] if dim <= args.polish_max else [])
        for stage, polish in stages:
            times = {}
            results = {}
            for b in backends:
                results[b] = tridiag.eigvals(t.diag, t.off, polish=polish, backend=b)
                times[b] = best_of(lambda b=b: tridiag.eigvals(t.diag, t.off, polish=polish, backend=b), args.repeat)
            norm = float(np.max(np.abs(t.diag))) + 2 * abs(args.alpha)
            diff = max(float(np.max(np.abs(results[b] - results[backends[0]]))) for b in backends)
            ulps = diff / (np.finfo(float).eps * norm)
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            cols = " ".join(f"{times[b]:12.5f}" for b in backends)
            print(f"{t.dim:6d} {stage:>8} {cols} {speed:8.1f}x {ulps:12.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
