"""Compare the numba kernels with their numpy/Python fallbacks.

    python benchmarks/bench_kernels.py [--repeat R]

Each kernel is warmed up once (numba compiles on first call), then timed as
the best of R runs. Results of both paths are checked against each other.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from factorcrit import _kernels
from factorcrit.extremal import ExtremalParams, build_H
from factorcrit.spectral import POWER_MAX_ITER, POWER_RES_TOL, POWER_TOL, signless_laplacian


def best_of(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_power(repeat):
    rows = []
    for n in (24, 48, 96):
        m = signless_laplacian(build_H(ExtremalParams(n, 3, 1 if n % 2 else 0)))
        m = np.ascontiguousarray(m)
        shift = 1.0 + float(np.max(np.diag(m)))
        args = (m, shift, POWER_TOL, POWER_RES_TOL, POWER_MAX_ITER)
        t_np, a = best_of(lambda: _kernels.power_iteration_numpy(*args), repeat)
        t_nb, b = best_of(lambda: _kernels.power_iteration_numba(*args), repeat)
        assert abs(a[0] - b[0]) < 1e-9
        rows.append((f"power iteration Q(H), n={n}", t_np, t_nb))
    return rows


def bench_jacobi(repeat):
    rows = []
    rng = np.random.default_rng(0)
    for n in (10, 30, 60):
        a = rng.standard_normal((n, n))
        a = np.ascontiguousarray((a + a.T) / 2)
        t_np, x = best_of(lambda: _kernels.jacobi_eigen_numpy(a, 1e-15, 100), repeat)
        t_nb, y = best_of(lambda: _kernels.jacobi_eigen_numba(a, 1e-15, 100), repeat)
        assert np.allclose(np.sort(x[0]), np.sort(y[0]), atol=1e-9)
        rows.append((f"jacobi, n={n}", t_np, t_nb))
    return rows


def bench_tutte(repeat):
    rows = []
    for n, d, k in ((12, 2, 0), (16, 3, 0), (18, 2, 0)):
        g = build_H(ExtremalParams(n, d, k))
        # full scan on K_n: no violator, so every subset is visited
        full = [((1 << n) - 1) & ~(1 << v) for v in range(n)]
        arr = np.asarray(full, dtype=np.int64)
        t_np, a = best_of(lambda: _kernels.tutte_scan_python(full, n, 0, n - 2), repeat)
        t_nb, b = best_of(lambda: int(_kernels.tutte_scan_numba(arr, n, 0, n - 2)), repeat)
        assert a == b == -1
        rows.append((f"odd-component scan K_{n}, {2 ** n} subsets", t_np, t_nb))
        hrows = list(g.rows)
        harr = np.asarray(hrows, dtype=np.int64)
        t_np, a = best_of(lambda: _kernels.tutte_scan_python(hrows, n, k, n - 2), repeat)
        t_nb, b = best_of(lambda: int(_kernels.tutte_scan_numba(harr, n, k, n - 2)), repeat)
        assert a == b
        rows.append((f"odd-component scan H({n},{d},{k}), early exit", t_np, t_nb))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rows = bench_power(args.repeat) + bench_jacobi(args.repeat) + bench_tutte(args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy (s)':>10}  {'numba (s)':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        print(f"{name:<{width}}  {t_np:10.5f}  {t_nb:10.5f}  {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
