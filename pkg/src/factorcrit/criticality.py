"""k-factor-criticality by two independent routes.

``is_kfc_matching`` deletes every k-subset and asks a general maximum
matching routine for a perfect matching. ``is_kfc_tutte`` scans vertex sets
S for the odd-component violation ``o(G - S) > |S| - k``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from . import _kernels
from .graph import Graph, remove_vertices

# 2^20 subsets is full enumeration for n = 20 and a few seconds of numba time.
DEFAULT_SUBSET_CAP = 1 << 20


class SearchCapError(ValueError):
    """The requested exhaustive subset search exceeds the configured cap."""


@dataclass(frozen=True)
class MatchingResult:
    has_perfect: bool
    matching: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.matching)


@dataclass(frozen=True)
class CriticalityCertificate:
    """Verdict with a witness set on failure.

    ``witness_kind`` is ``"matching"`` (a k-subset S with no perfect matching
    in G - S), ``"tutte"`` (S with o(G - S) > |S| - k) or ``"parity"`` (n and k
    differ in parity, witness empty). ``witness`` is None iff the verdict is
    true.
    """

    verdict: bool
    k: int
    witness: Optional[tuple[int, ...]] = None
    witness_kind: Optional[str] = None

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "k": self.k,
            "witness": None if self.witness is None else list(self.witness),
            "witness_kind": self.witness_kind,
        }

    def format_plain(self) -> str:
        if self.verdict:
            return f"k={self.k} verdict=true"
        return f"k={self.k} verdict=false kind={self.witness_kind} witness={list(self.witness)}"


def _edmonds(n: int, adj: list[list[int]]) -> list[int]:
    """Maximum cardinality matching via Edmonds' blossom shrinking; returns mates."""
    match = [-1] * n
    # greedy start shortens the augmentation phase
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v] = w
                    match[w] = v
                    break

    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    blossom = [False] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root: int) -> int:
        for i in range(n):
            used[i] = False
            parent[i] = -1
            base[i] = i
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    for i in range(n):
                        blossom[i] = False
                    mark_path(v, cur, to)
                    mark_path(to, cur, v)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for root in range(n):
        if match[root] != -1:
            continue
        v = find_path(root)
        while v != -1:
            pv = parent[v]
            ppv = match[pv]
            match[v] = pv
            match[pv] = v
            v = ppv
    return match


def max_matching(g: Graph) -> MatchingResult:
    n = g.order
    adj = [g.neighbors(v) for v in range(n)]
    mate = _edmonds(n, adj)
    pairs = tuple((v, w) for v, w in enumerate(mate) if w > v)
    return MatchingResult(2 * len(pairs) == n, pairs)


def _check_k(g: Graph, k: int) -> None:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k > g.order:
        raise ValueError(f"k={k} exceeds the order {g.order}")


def is_kfc_matching(g: Graph, k: int) -> CriticalityCertificate:
    """True iff ``G - S`` has a perfect matching for every k-subset S.

    Subsets are visited in lexicographic order and the first failure is the
    witness.
    """
    _check_k(g, k)
    n = g.order
    if (n - k) % 2:
        return CriticalityCertificate(False, k, (), "parity")
    for s in combinations(range(n), k):
        h = remove_vertices(g, s) if s else g
        if not max_matching(h).has_perfect:
            return CriticalityCertificate(False, k, tuple(s), "matching")
    return CriticalityCertificate(True, k)


def tutte_subset_count(n: int, k: int, max_s: int) -> int:
    return sum(comb(n, j) for j in range(k, max_s + 1))


def is_kfc_tutte(
    g: Graph,
    k: int,
    max_s: Optional[int] = None,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> CriticalityCertificate:
    """Odd-component test ``o(G - S) <= |S| - k`` for all ``k <= |S| <= max_s``.

    ``max_s`` defaults to ``n - 2``. Sets with ``|S| >= n - 1`` cannot violate
    the condition once parity holds and ``k <= n - 2``: ``G - S`` then has at
    most one vertex, so ``o(G - S) <= 1 <= |S| - k`` for ``|S| = n - 1`` and
    ``o = 0`` for ``|S| = n``. (For ``k = n`` only ``S = V`` qualifies, with
    ``o = 0``.) The witness is the first violating S ordered by size, then
    lexicographically.
    """
    _check_k(g, k)
    n = g.order
    if (n - k) % 2:
        return CriticalityCertificate(False, k, (), "parity")
    if max_s is None:
        max_s = n - 2
    max_s = min(max_s, n - 2)
    if max_s < k:
        return CriticalityCertificate(True, k)
    count = tutte_subset_count(n, k, max_s)
    if count > subset_cap:
        raise SearchCapError(
            f"{count} subsets for n={n}, k={k}, |S| <= {max_s} exceeds the cap {subset_cap}"
        )
    mask = _kernels.tutte_scan(g.rows, n, k, max_s)
    if mask < 0:
        return CriticalityCertificate(True, k)
    witness = tuple(v for v in range(n) if mask >> v & 1)
    return CriticalityCertificate(False, k, witness, "tutte")
