"""Time the hive-counting and vertex-scan kernels on both backends.

Runs each workload through the numba-compiled kernel and the pure-numpy
fallback, checks they agree, and prints a small table.  The numba column
is skipped when the library is unavailable or HIVECOMB_NO_NUMBA is set.

Usage: python3 benchmarks/bench_enumeration.py [--repeat N]
"""

import argparse
import itertools
import time

import numpy as np

from hivecomb import _kernels
from hivecomb.hive import (_integral_boundary_array, _kernel_plan,
                           boundary_from_weights)
from hivecomb.lift import _boundary_grid, _vertex_plan
from hivecomb.weights import BoundaryTriple

COUNT_CASES = [
    ("count n=3 adjoint^2", BoundaryTriple((2, 1, 0), (2, 1, 0),
                                           (-1, -2, -3))),
    ("count n=3 stretched", BoundaryTriple((8, 4, 0), (8, 4, 0),
                                           (-4, -8, -12))),
    ("count n=4", BoundaryTriple((6, 4, 2, 0), (6, 4, 2, 0),
                                 (-2, -5, -7, -10))),
    ("count n=5", BoundaryTriple((4, 3, 2, 1, 0), (4, 3, 2, 1, 0),
                                 (-2, -3, -4, -5, -6))),
    ("count n=5 heavy", BoundaryTriple((12, 9, 6, 3, 0), (12, 9, 6, 3, 0),
                                       (-8, -10, -12, -14, -16))),
]

WITNESS = BoundaryTriple((2, 2, 1, 0, -1), (2, 1, 0, -1, -2),
                         (1, 0, -1, -2, -2))


def timed(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return out, best


def bench_counting(repeat):
    rows = []
    for label, t in COUNT_CASES:
        entries, _ = _integral_boundary_array(t)
        plan = _kernel_plan(t.n)
        got_np, t_np = timed(
            lambda: _kernels.count_numpy(entries.copy(), *plan), repeat)
        if _kernels.HAVE_NUMBA:
            _kernels.count_numba(entries.copy(), *plan)  # warm the JIT
            got_nb, t_nb = timed(
                lambda: _kernels.count_numba(entries.copy(), *plan), repeat)
            assert got_nb == got_np, (label, got_nb, got_np)
        else:
            t_nb = None
        rows.append((f"{label} (count={got_np})", t_nb, t_np))
    return rows


def scan_consts(t, bpts, bmat):
    bvals = boundary_from_weights(t)
    return bmat @ np.array([int(bvals[p]) for p in bpts], np.int64)


def bench_vertex_scan(repeat):
    rows = []
    for label, n, triples in [
        ("vertex-scan n=4, 40 boundaries", 4,
         list(itertools.islice(_boundary_grid(4, 2), 40))),
        ("vertex-scan n=5, 5 boundaries", 5,
         list(itertools.islice(_boundary_grid(5, 1), 4)) + [WITNESS]),
    ]:
        _, bpts, coefs, bmat, sub_rows, sub_adj, sub_det = _vertex_plan(n)
        consts = [scan_consts(t, bpts, bmat) for t in triples]

        def run_all(scan):
            return [scan(coefs, c, sub_rows, sub_adj, sub_det)
                    for c in consts]

        got_np, t_np = timed(lambda: run_all(_kernels.vertex_scan_numpy),
                             repeat)
        if _kernels.HAVE_NUMBA:
            run_all(_kernels.vertex_scan_numba)  # warm the JIT
            got_nb, t_nb = timed(
                lambda: run_all(_kernels.vertex_scan_numba), repeat)
            hit = [s >= 0 for s in got_nb] == [s >= 0 for s in got_np]
            assert hit, (label, got_nb, got_np)
        else:
            t_nb = None
        hits = sum(1 for s in got_np if s >= 0)
        rows.append((f"{label} (hits={hits})", t_nb, t_np))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="timing repetitions; the best run is reported")
    args = ap.parse_args()

    rows = bench_counting(args.repeat) + bench_vertex_scan(args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'numba':>10}  {'numpy':>10}  ratio")
    for label, t_nb, t_np in rows:
        nb = f"{t_nb * 1e3:8.2f}ms" if t_nb is not None else "       off"
        ratio = f"{t_np / t_nb:5.1f}x" if t_nb else "     -"
        print(f"{label:<{width}}  {nb}  {t_np * 1e3:8.2f}ms  {ratio}")
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; numpy fallback only")


if __name__ == "__main__":
    main()
