"""Hot numeric kernels with a numba path and a pure numpy/Python fallback.

The numba versions are used when numba imports cleanly and the environment
variable ``FACTORCRIT_DISABLE_NUMBA`` is not set to a truthy value. Both
paths implement the same algorithms and are kept importable side by side so
tests and the benchmark can compare them directly.
"""

from __future__ import annotations

import os
from itertools import combinations

import numpy as np

_DISABLED = os.environ.get("FACTORCRIT_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED

# Bitmask kernels pack a vertex set into one signed 64-bit word.
MAX_MASK_ORDER = 62


# ---------------------------------------------------------------------------
# numpy / Python reference path
# ---------------------------------------------------------------------------


def power_iteration_numpy(m, shift, tol, res_tol, max_iter):
    """Shifted power iteration from the normalized all-ones vector.

    Returns ``(value, vector, converged, iterations)`` where ``value`` is the
    Rayleigh quotient of the unshifted matrix.
    """
    n = m.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    lam_prev = np.inf
    lam = 0.0
    for it in range(max_iter):
        mx = m @ x
        lam = float(x @ mx)
        res = float(np.linalg.norm(mx - lam * x))
        if abs(lam - lam_prev) <= tol * max(1.0, abs(lam)) and res <= res_tol:
            return lam, x, True, it
        lam_prev = lam
        y = mx + shift * x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return lam, x, False, it
        x = y / norm
    return lam, x, False, max_iter


def jacobi_eigen_numpy(a_in, tol, max_sweeps):
    """Cyclic Jacobi eigen-decomposition of a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, converged)``; eigenvectors are the
    columns of the second array, in the same (unsorted) order as the values.
    """
    a = np.array(a_in, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.sum(a * a))
    if scale == 0.0:
        return np.diag(a).copy(), v, True
    converged = False
    for _ in range(max_sweeps):
        off = float(np.sum(np.triu(a, 1) ** 2))
        if off <= tol * tol * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        off = float(np.sum(np.triu(a, 1) ** 2))
        converged = off <= tol * tol * scale
    return np.diag(a).copy(), v, converged


def odd_components_mask_python(rows, alive):
    """Count odd components of the subgraph induced by the bitmask ``alive``."""
    odd = 0
    rem = alive
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nb = 0
            f = frontier
            while f:
                b = f & -f
                nb |= rows[b.bit_length() - 1]
                f ^= b
            nb &= rem & ~comp
            comp |= nb
            frontier = nb
        rem &= ~comp
        if bin(comp).count("1") & 1:
            odd += 1
    return odd


def tutte_scan_python(rows, n, k, max_s):
    """Find the first S (by size, then lexicographic) with o(G-S) > |S|-k.

    Returns the violating bitmask, or -1 when none exists for
    ``k <= |S| <= max_s``.
    """
    full = (1 << n) - 1
    for size in range(k, max_s + 1):
        for combo in combinations(range(n), size):
            s = 0
            for v in combo:
                s |= 1 << v
            if odd_components_mask_python(rows, full & ~s) > size - k:
                return s
    return -1


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def power_iteration_numba(m, shift, tol, res_tol, max_iter):
        n = m.shape[0]
        x = np.empty(n)
        inv = 1.0 / np.sqrt(n)
        for i in range(n):
            x[i] = inv
        mx = np.empty(n)
        lam_prev = np.inf
        lam = 0.0
        for it in range(max_iter):
            for i in range(n):
                acc = 0.0
                for j in range(n):
                    acc += m[i, j] * x[j]
                mx[i] = acc
            lam = 0.0
            for i in range(n):
                lam += x[i] * mx[i]
            res = 0.0
            for i in range(n):
                d = mx[i] - lam * x[i]
                res += d * d
            res = np.sqrt(res)
            if abs(lam - lam_prev) <= tol * max(1.0, abs(lam)) and res <= res_tol:
                return lam, x, True, it
            lam_prev = lam
            norm = 0.0
            for i in range(n):
                mx[i] += shift * x[i]
                norm += mx[i] * mx[i]
            norm = np.sqrt(norm)
            if norm == 0.0:
                return lam, x, False, it
            for i in range(n):
                x[i] = mx[i] / norm
        return lam, x, False, max_iter

    @numba.njit(cache=True)
    def jacobi_eigen_numba(a_in, tol, max_sweeps):
        n = a_in.shape[0]
        a = a_in.copy()
        v = np.eye(n)
        scale = 0.0
        for i in range(n):
            for j in range(n):
                scale += a[i, j] * a[i, j]
        if scale == 0.0:
            return np.diag(a).copy(), v, True
        converged = False
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += a[p, q] * a[p, q]
            if off <= tol * tol * scale:
                converged = True
                break
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c
                    for r in range(n):
                        arp = a[r, p]
                        arq = a[r, q]
                        a[r, p] = c * arp - s * arq
                        a[r, q] = s * arp + c * arq
                    for r in range(n):
                        apr = a[p, r]
                        aqr = a[q, r]
                        a[p, r] = c * apr - s * aqr
                        a[q, r] = s * apr + c * aqr
                    for r in range(n):
                        vrp = v[r, p]
                        vrq = v[r, q]
                        v[r, p] = c * vrp - s * vrq
                        v[r, q] = s * vrp + c * vrq
        return np.diag(a).copy(), v, converged

    @numba.njit(cache=True)
    def _popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @numba.njit(cache=True)
    def _bit_index(b):
        i = 0
        while b > 1:
            b >>= 1
            i += 1
        return i

    @numba.njit(cache=True)
    def odd_components_mask_numba(rows, alive):
        odd = 0
        rem = alive
        while rem:
            comp = rem & -rem
            frontier = comp
            while frontier:
                nb = np.int64(0)
                f = frontier
                while f:
                    b = f & -f
                    nb |= rows[_bit_index(b)]
                    f ^= b
                nb &= rem & ~comp
                comp |= nb
                frontier = nb
            rem &= ~comp
            if _popcount(comp) & 1:
                odd += 1
        return odd

    @numba.njit(cache=True)
    def tutte_scan_numba(rows, n, k, max_s):
        full = (np.int64(1) << n) - 1
        idx = np.empty(max(max_s, 1), dtype=np.int64)
        for size in range(k, max_s + 1):
            for i in range(size):
                idx[i] = i
            while True:
                s = np.int64(0)
                for i in range(size):
                    s |= np.int64(1) << idx[i]
                if odd_components_mask_numba(rows, full & ~s) > size - k:
                    return s
                # advance to the next combination in lexicographic order
                i = size - 1
                while i >= 0 and idx[i] == n - size + i:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                for j in range(i + 1, size):
                    idx[j] = idx[j - 1] + 1
        return np.int64(-1)


def power_iteration(m, shift, tol, res_tol, max_iter):
    if USE_NUMBA:
        return power_iteration_numba(m, shift, tol, res_tol, max_iter)
    return power_iteration_numpy(m, shift, tol, res_tol, max_iter)


def jacobi_eigen(a, tol, max_sweeps):
    if USE_NUMBA:
        return jacobi_eigen_numba(a, tol, max_sweeps)
    return jacobi_eigen_numpy(a, tol, max_sweeps)


def tutte_scan(rows, n, k, max_s):
    """Dispatch the subset scan; ``rows`` is a sequence of int bitmasks."""
    if USE_NUMBA and n <= MAX_MASK_ORDER:
        return int(tutte_scan_numba(np.asarray(rows, dtype=np.int64), n, k, max_s))
    return tutte_scan_python(list(rows), n, k, max_s)


def odd_components_mask(rows, alive):
    if USE_NUMBA and len(rows) <= MAX_MASK_ORDER:
        return int(odd_components_mask_numba(np.asarray(rows, dtype=np.int64), np.int64(alive)))
    return odd_components_mask_python(list(rows), alive)
