"""Largest eigenvalues of A(G), Q(G) = D(G) + A(G) and alpha*D(G) + A(G),
Perron vectors, and quotient matrices of vertex partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .graph import Graph, is_connected

POWER_TOL = 1e-12
POWER_RES_TOL = 1e-10
POWER_MAX_ITER = 100_000
JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 100
ORBIT_TOL = 1e-8


class SpectralError(ValueError):
    """Invalid matrix input."""


class DisconnectedGraphError(SpectralError):
    """A Perron vector was requested for a disconnected graph."""


class PartitionError(SpectralError):
    """The supplied parts do not partition the vertex set."""


@dataclass(frozen=True)
class SpectralResult:
    value: float
    vector: np.ndarray
    residual: float
    method: str = "power"

    @property
    def dim(self) -> int:
        return len(self.vector)


@dataclass(frozen=True)
class QuotientMatrix:
    entries: np.ndarray
    equitable: bool
    part_sizes: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def symmetrized(self) -> np.ndarray:
        """Symmetric matrix similar to an equitable quotient of a symmetric matrix.

        Uses ``b_ij * sqrt(|V_i| / |V_j|)``, which equals ``sqrt(b_ij * b_ji)``
        because ``|V_i| b_ij = |V_j| b_ji`` counts the same block entries.
        """
        sizes = np.sqrt(np.asarray(self.part_sizes, dtype=np.float64))
        s = self.entries * sizes[:, None] / sizes[None, :]
        return (s + s.T) / 2.0

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:g}" for x in row) for row in self.entries)


def adjacency_matrix(g: Graph) -> np.ndarray:
    return _int_adjacency(g).astype(np.float64)


def signless_laplacian(g: Graph) -> np.ndarray:
    return _int_matrix(g, 1).astype(np.float64)


def alpha_matrix(g: Graph, alpha: int) -> np.ndarray:
    if alpha not in (0, 1):
        raise SpectralError(f"alpha must be 0 or 1, got {alpha!r}")
    return _int_matrix(g, alpha).astype(np.float64)


def _int_adjacency(g: Graph) -> np.ndarray:
    n = g.order
    a = np.zeros((n, n), dtype=np.int64)
    if g.edges:
        e = np.asarray(g.edges, dtype=np.int64)
        a[e[:, 0], e[:, 1]] = 1
        a[e[:, 1], e[:, 0]] = 1
    return a


def _int_matrix(g: Graph, alpha: int) -> np.ndarray:
    a = _int_adjacency(g)
    if alpha:
        a[np.diag_indices_from(a)] = a.sum(axis=1)
    return a


def largest_eigenvalue(m: np.ndarray) -> SpectralResult:
    """Largest eigenvalue of a real symmetric matrix with a unit eigenvector.

    Nonnegative matrices go through power iteration on ``M + cI`` with
    ``c = 1 + max diagonal entry``; the shift makes the top eigenvalue strictly
    dominant in modulus (bipartite graphs included). Matrices with negative
    entries, and any power run that fails to converge, fall back to a full
    Jacobi decomposition.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise SpectralError(f"expected a nonempty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise SpectralError("matrix has non-finite entries")
    if not np.array_equal(m, m.T):
        raise SpectralError("matrix is not symmetric")
    m = np.ascontiguousarray(m)
    dim = m.shape[0]
    bound = 1e-9 * dim

    if np.all(m >= 0.0):
        shift = 1.0 + float(np.max(np.diag(m)))
        lam, x, ok, _ = _kernels.power_iteration(m, shift, POWER_TOL, POWER_RES_TOL, POWER_MAX_ITER)
        x = np.asarray(x, dtype=np.float64).copy()
        res = _residual(m, lam, x)
        if ok and res <= bound:
            return SpectralResult(float(lam), x, res, "power")

    vals, vecs, _ = _kernels.jacobi_eigen(m, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    i = int(np.argmax(vals))
    x = np.asarray(vecs[:, i], dtype=np.float64).copy()
    x /= np.linalg.norm(x)
    if x.sum() < 0:
        x = -x
    lam = float(x @ m @ x)
    return SpectralResult(lam, x, _residual(m, lam, x), "jacobi")


def _residual(m: np.ndarray, lam: float, x: np.ndarray) -> float:
    return float(np.linalg.norm(m @ x - lam * x))


def spectral_radius(g: Graph, alpha: int = 0) -> float:
    """``rho(G)`` for ``alpha=0``, ``q(G)`` for ``alpha=1``."""
    return largest_eigenvalue(alpha_matrix(g, alpha)).value


def rho(g: Graph) -> float:
    return spectral_radius(g, 0)


def q(g: Graph) -> float:
    return spectral_radius(g, 1)


def perron_vector(g: Graph, alpha: int) -> SpectralResult:
    if not is_connected(g):
        raise DisconnectedGraphError("Perron vector requires a connected graph")
    m = alpha_matrix(g, alpha)
    res = largest_eigenvalue(m)
    if np.any(res.vector <= 0.0):
        # Jacobi sign residue only; an irreducible matrix has a positive Perron vector
        x = np.abs(res.vector)
        res = SpectralResult(res.value, x, _residual(m, res.value, x), res.method)
    return res


def _check_partition(n: int, parts: Sequence[Sequence[int]]) -> list[list[int]]:
    seen = [False] * n
    out = []
    for part in parts:
        p = sorted(int(v) for v in part)
        if not p:
            raise PartitionError("empty part")
        for v in p:
            if not 0 <= v < n:
                raise PartitionError(f"vertex {v} out of range")
            if seen[v]:
                raise PartitionError(f"vertex {v} appears in more than one part")
            seen[v] = True
        out.append(p)
    if not all(seen):
        missing = [v for v in range(n) if not seen[v]]
        raise PartitionError(f"vertices {missing} not covered")
    return out


def quotient_matrix(g: Graph, parts: Sequence[Sequence[int]], alpha: int) -> QuotientMatrix:
    """Average block row sums of ``alpha*D + A`` over the given partition.

    Block row sums are integers, so the equitable test is exact.
    """
    if alpha not in (0, 1):
        raise SpectralError(f"alpha must be 0 or 1, got {alpha!r}")
    ps = _check_partition(g.order, parts)
    h = _int_matrix(g, alpha)
    t = len(ps)
    b = np.zeros((t, t), dtype=np.float64)
    equitable = True
    for i, pi in enumerate(ps):
        for j, pj in enumerate(ps):
            rs = h[np.ix_(pi, pj)].sum(axis=1)
            if np.any(rs != rs[0]):
                equitable = False
            b[i, j] = int(rs.sum()) / len(pi)
    return QuotientMatrix(b, equitable, tuple(len(p) for p in ps))


def quotient_largest_eigenvalue(qm: QuotientMatrix) -> float:
    """Largest eigenvalue of an equitable quotient via its symmetrized form."""
    if not qm.equitable:
        raise SpectralError("symmetrization needs an equitable quotient")
    return largest_eigenvalue(qm.symmetrized()).value
