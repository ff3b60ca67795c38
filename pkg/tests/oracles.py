"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np

from factorcrit.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), ((index[u], index[v]) for u, v in h.edges()))


def dense_top_eigenvalue(g: Graph, alpha: int) -> float:
    a = np.zeros((g.order, g.order))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    if alpha:
        a += np.diag(a.sum(axis=1))
    return float(np.linalg.eigvalsh(a)[-1])


def brute_max_matching(n: int, edges) -> int:
    """Exponential search over edge subsets by first uncovered vertex."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    def best(free: frozenset) -> int:
        if not free:
            return 0
        v = min(free)
        rest = free - {v}
        out = best(rest)
        for w in adj[v] & rest:
            out = max(out, 1 + best(rest - {w}))
        return out

    return best(frozenset(range(n)))


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.size != h.size:
        return False
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    eg = set(g.edges)
    for perm in itertools.permutations(range(g.order)):
        if all(g.degrees[v] == h.degrees[perm[v]] for v in range(g.order)):
            if all(tuple(sorted((perm[u], perm[v]))) in set(h.edges) for u, v in eg):
                return True
    return False


def all_labeled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield Graph.from_edges(n, (e for e, b in zip(pairs, bits) if b))


def brute_kfc(g: Graph, k: int) -> bool:
    """Definition: every k-subset deletion leaves a graph with a perfect matching."""
    n = g.order
    if (n - k) % 2:
        return False
    for s in itertools.combinations(range(n), k):
        keep = [v for v in range(n) if v not in s]
        idx = {v: i for i, v in enumerate(keep)}
        edges = [(idx[u], idx[v]) for u, v in g.edges if u in idx and v in idx]
        if 2 * brute_max_matching(len(keep), edges) != len(keep):
            return False
    return True
