"""Extremal graphs ``H(n, delta, k) = K_delta v ((delta-k+1)K_1 u K_{n-2delta+k-1})``,
the comparison families ``H_s`` and ``H'_s``, the threshold cubics and the
cross-checked threshold values.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from typing import Sequence

from .graph import Graph, complete, components, copies, disjoint_union, empty, join, remove_vertices
from .spectral import (
    adjacency_matrix,
    largest_eigenvalue,
    quotient_largest_eigenvalue,
    quotient_matrix,
    signless_laplacian,
)

CONSISTENCY_TOL = 1e-7
ROOT_TOL = 1e-10


class ParameterError(ValueError):
    """Parameters outside the domain of a construction or theorem."""


class ThresholdConsistencyError(RuntimeError):
    """The three threshold routes disagree; indicates an implementation bug."""

    def __init__(self, report: ThresholdReport):
        super().__init__(
            f"threshold routes disagree by {report.max_discrepancy:.3e} for "
            f"(n, delta, k) = ({report.n}, {report.delta}, {report.k})"
        )
        self.report = report


@dataclass(frozen=True)
class ExtremalParams:
    n: int
    delta: int
    k: int
    s: int | None = None

    def check_H(self) -> None:
        """Raise ParameterError unless ``H(n, delta, k)`` is defined."""
        if self.k < 0:
            raise ParameterError(f"k must be >= 0, got {self.k}")
        if self.delta <= self.k:
            raise ParameterError(f"need delta > k, got delta={self.delta}, k={self.k}")
        if self.n <= 2 * self.delta - self.k + 1:
            raise ParameterError(
                f"need n > 2*delta - k + 1 = {2 * self.delta - self.k + 1}, got n={self.n}"
            )

    @property
    def parity_ok(self) -> bool:
        return (self.n - self.k) % 2 == 0


def join_of_cliques(s: int, sizes: Sequence[int]) -> Graph:
    """``K_s v (K_{n_1} u ... u K_{n_t})``; out copy first, inner copies in order."""
    if s < 1 or not sizes or min(sizes) < 1:
        raise ParameterError(f"invalid join of cliques: s={s}, sizes={list(sizes)}")
    inner = complete(sizes[0])
    for m in sizes[1:]:
        inner = disjoint_union(inner, complete(m))
    return join(complete(s), inner)


def hs_parts(n: int, s: int, k: int) -> list[list[int]]:
    """Vertex parts (out copy, independent part, big clique) of ``build_Hs``."""
    a = s
    b = 2 * s - k + 1
    return [list(range(a)), list(range(a, b)), list(range(b, n))]


def build_Hs(n: int, s: int, k: int) -> Graph:
    if s < max(1, k):
        raise ParameterError(f"need s >= max(1, k), got s={s}, k={k}")
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    if n < 2 * s - k + 2:
        raise ParameterError(f"need n >= 2s - k + 2 = {2 * s - k + 2}, got n={n}")
    return join(complete(s), disjoint_union(empty(s - k + 1), complete(n - 2 * s + k - 1)))


def build_H(p: ExtremalParams) -> Graph:
    p.check_H()
    return build_Hs(p.n, p.delta, p.k)


def hprime_bound(delta: int, s: int, k: int, bound: str = "lemma") -> int:
    """Smallest admissible n for ``H'_s``.

    ``"lemma"`` gives ``s + (s-k+2)(delta-s+1)``; ``"proof"`` gives the variant
    ``delta + (s-k+2)(delta-s+1)`` that appears in the case analysis.
    """
    base = {"lemma": s, "proof": delta}
    if bound not in base:
        raise ParameterError(f"unknown bound {bound!r}")
    return base[bound] + (s - k + 2) * (delta - s + 1)


def build_Hprime(n: int, delta: int, s: int, k: int, bound: str = "lemma") -> Graph:
    """``K_s v ((s-k+1)K_{delta-s+1} u K_{n-s-(s-k+1)(delta-s+1)})``."""
    if not k <= s < delta:
        raise ParameterError(f"need k <= s < delta, got k={k}, s={s}, delta={delta}")
    if s < 1:
        raise ParameterError(f"need s >= 1, got s={s}")
    lo = hprime_bound(delta, s, k, bound)
    if n < lo:
        raise ParameterError(f"need n >= {lo}, got n={n}")
    small = delta - s + 1
    big = n - s - (s - k + 1) * small
    return join(complete(s), disjoint_union(copies(s - k + 1, complete(small)), complete(big)))


def recognize_extremal(g: Graph, p: ExtremalParams) -> bool:
    """Structural test for ``g`` isomorphic to ``H(n, delta, k)``.

    The ``delta`` universal vertices are the only vertices of degree n-1 in
    ``H``; deleting them must leave ``delta-k+1`` isolated vertices plus one
    clique of order ``n-2delta+k-1``. When that clique has order 1 the
    remainder is simply ``delta-k+2`` isolated vertices, which the component
    multiset comparison handles without a special case.
    """
    try:
        p.check_H()
    except ParameterError:
        return False
    n = p.n
    if g.order != n:
        return False
    universal = [v for v, d in enumerate(g.degrees) if d == n - 1]
    if len(universal) != p.delta:
        return False
    rest = remove_vertices(g, universal)
    comps = components(rest)
    for c in comps:
        m = len(c)
        if any(rest.degree(v) != m - 1 for v in c):
            return False
    want = Counter({1: p.delta - p.k + 1})
    want[n - 2 * p.delta + p.k - 1] += 1
    return Counter(len(c) for c in comps) == want


@dataclass(frozen=True)
class CubicPoly:
    """Monic cubic ``x^3 + a2 x^2 + a1 x + a0``."""

    a2: float
    a1: float
    a0: float
    a3: float = 1

    def __post_init__(self):
        if self.a3 != 1:
            raise ValueError("CubicPoly must be monic")

    @property
    def coefficients(self) -> tuple:
        return (self.a3, self.a2, self.a1, self.a0)

    def __call__(self, x: float) -> float:
        return ((x + self.a2) * x + self.a1) * x + self.a0

    def derivative(self, x: float) -> float:
        return (3 * x + 2 * self.a2) * x + self.a1


def f_poly(p: ExtremalParams) -> CubicPoly:
    n, d, k = p.n, p.delta, p.k
    return CubicPoly(
        a2=-(n + k - d - 3),
        a1=-(n + d * d - k * d + k - 2),
        a0=-2 * d**3 + (n + 3 * k - 4) * d**2 + (n + 3 * k - n * k - k * k - 2) * d,
    )


def g_poly(p: ExtremalParams) -> CubicPoly:
    n, d, k = p.n, p.delta, p.k
    return CubicPoly(
        a2=-(3 * n - d + 2 * k - 6),
        a1=2 * n * n + (d + 2 * k - 8) * n - 4 * d * d + 4 * (k - 1) * d - 4 * k + 8,
        a0=-2 * d**3
        + (4 * n + 4 * k - 10) * d**2
        - (2 * n * n + (4 * k - 10) * n + 2 * k * k - 10 * k + 12) * d,
    )


def _bisect(c: CubicPoly, lo: float, hi: float) -> tuple[float, float, float]:
    """Shrink ``[lo, hi]`` around a sign change; returns ``(midpoint, lo, hi)``."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if c(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def largest_real_root(c: CubicPoly) -> float:
    """Largest real root of a monic cubic.

    The Cauchy bound ``1 + max|a_i|`` brackets every real root. The critical
    points of ``c`` split the line into monotone pieces; bisection runs on the
    rightmost piece that contains a sign change, then Newton polishes inside
    the bracket.
    """
    bound = 1.0 + max(abs(float(c.a2)), abs(float(c.a1)), abs(float(c.a0)))
    lo, hi = -bound, bound
    # c'(x) = 3x^2 + 2 a2 x + a1
    disc = 4.0 * c.a2 * c.a2 - 12.0 * c.a1
    if disc > 0.0:
        r = disc**0.5
        m1 = (-2.0 * c.a2 - r) / 6.0
        m2 = (-2.0 * c.a2 + r) / 6.0
        scale = max(1.0, abs(m2)) ** 3
        v2 = c(m2)
        if abs(v2) <= 1e-14 * scale:
            return float(m2)
        if v2 < 0.0:
            lo = m2
        else:
            hi = m1
    x, lo, hi = _bisect(c, lo, hi)
    for _ in range(8):
        d = c.derivative(x)
        if d == 0.0:
            break
        nx = x - c(x) / d
        if not lo <= nx <= hi:
            break
        if abs(nx - x) <= 1e-16 * max(1.0, abs(x)):
            x = nx
            break
        x = nx
    return float(x)


@dataclass(frozen=True)
class ThresholdReport:
    n: int
    delta: int
    k: int
    rho_root: float
    rho_quotient: float
    rho_dense: float
    q_root: float
    q_quotient: float
    q_dense: float
    max_discrepancy: float

    @property
    def params(self) -> ExtremalParams:
        return ExtremalParams(self.n, self.delta, self.k)

    @property
    def rho(self) -> float:
        return self.rho_root

    @property
    def q(self) -> float:
        return self.q_root

    def to_record(self) -> dict:
        return asdict(self)

    def format_plain(self, which: str | None = None) -> str:
        lines = [f"H({self.n},{self.delta},{self.k})"]
        if which in (None, "rho"):
            lines.append(
                f"  rho: root={self.rho_root!r} quotient={self.rho_quotient!r} dense={self.rho_dense!r}"
            )
        if which in (None, "q"):
            lines.append(f"  q:   root={self.q_root!r} quotient={self.q_quotient!r} dense={self.q_dense!r}")
        lines.append(f"  max_discrepancy={self.max_discrepancy:.3e}")
        return "\n".join(lines)


def _spread(*xs: float) -> float:
    return max(xs) - min(xs)


def thresholds(p: ExtremalParams, tol: float = CONSISTENCY_TOL) -> ThresholdReport:
    """``rho(H)`` and ``q(H)`` computed by cubic root, 3x3 quotient and dense solve.

    Raises ThresholdConsistencyError when any pair of routes differs by more
    than ``tol``.
    """
    p.check_H()
    g = build_H(p)
    parts = hs_parts(p.n, p.delta, p.k)
    rho_root = largest_real_root(f_poly(p))
    rho_quotient = quotient_largest_eigenvalue(quotient_matrix(g, parts, 0))
    rho_dense = largest_eigenvalue(adjacency_matrix(g)).value
    q_root = largest_real_root(g_poly(p))
    q_quotient = quotient_largest_eigenvalue(quotient_matrix(g, parts, 1))
    q_dense = largest_eigenvalue(signless_laplacian(g)).value
    disc = max(_spread(rho_root, rho_quotient, rho_dense), _spread(q_root, q_quotient, q_dense))
    report = ThresholdReport(
        p.n, p.delta, p.k, rho_root, rho_quotient, rho_dense, q_root, q_quotient, q_dense, disc
    )
    if not disc <= tol:
        raise ThresholdConsistencyError(report)
    return report
