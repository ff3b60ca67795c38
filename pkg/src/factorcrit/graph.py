"""Simple undirected graphs on vertices ``0..n-1`` and the constructors used
to assemble extremal families (complete graphs, unions, joins, deletions).

Adjacency is held as one Python-int bitset per vertex, which makes induced
subgraphs and subset-based component counts cheap; an edge list is derived on
demand.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph construction or vertex reference."""


class EmptyGraphError(GraphError):
    """Raised when a construction would produce a graph with no vertices."""


class Graph:
    """Immutable simple undirected graph.

    Args:
        order: number of vertices ``n``; vertices are ``0..n-1``.
        rows: adjacency bitsets, ``rows[v] >> w & 1`` iff ``vw`` is an edge.
    """

    def __init__(self, order: int, rows: Sequence[int]):
        if order < 0:
            raise GraphError(f"negative order {order}")
        if len(rows) != order:
            raise GraphError(f"expected {order} adjacency rows, got {len(rows)}")
        full = (1 << order) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise GraphError(f"row {v} references a vertex outside 0..{order - 1}")
            if r >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            w = r
            while w:
                b = w & -w
                if not rows[b.bit_length() - 1] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {b.bit_length() - 1}")
                w ^= b
        self._order = order
        self._rows = tuple(int(r) for r in rows)

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, rows)

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v``, sorted."""
        out = []
        for u, r in enumerate(self._rows):
            r >>= u + 1
            v = u + 1
            while r:
                if r & 1:
                    out.append((u, v))
                r >>= 1
                v += 1
        return tuple(out)

    @property
    def size(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        r = self._rows[v]
        return [w for w in range(self._order) if r >> w & 1]

    def degree(self, v: int) -> int:
        return bin(self._rows[v]).count("1")

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(bin(r).count("1") for r in self._rows)

    def with_edge(self, u: int, v: int) -> Graph:
        """Return ``G + uv``."""
        if u == v or self.has_edge(u, v):
            raise GraphError(f"cannot add edge ({u}, {v})")
        rows = list(self._rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self._order, rows)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self._order)):
            raise GraphError("relabel needs a permutation of 0..n-1")
        return Graph.from_edges(self._order, ((perm[u], perm[v]) for u, v in self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._order, self._rows))

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, size={self.size})"


def complete(n: int) -> Graph:
    if n < 1:
        raise EmptyGraphError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def empty(n: int) -> Graph:
    """``n`` isolated vertices, i.e. ``nK_1``."""
    if n < 1:
        raise EmptyGraphError("empty graph needs n >= 1")
    return Graph(n, [0] * n)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.order
    return Graph(off + g2.order, list(g1.rows) + [r << off for r in g2.rows])


def join(g1: Graph, g2: Graph) -> Graph:
    n1, n2 = g1.order, g2.order
    left = ((1 << n2) - 1) << n1
    right = (1 << n1) - 1
    rows = [r | left for r in g1.rows] + [(r << n1) | right for r in g2.rows]
    return Graph(n1 + n2, rows)


def copies(k: int, g: Graph) -> Graph:
    if k < 1:
        raise EmptyGraphError("copies needs k >= 1")
    out = g
    for _ in range(k - 1):
        out = disjoint_union(out, g)
    return out


def remove_vertices(g: Graph, s: Iterable[int]) -> Graph:
    """Induced subgraph on ``V(g) - s``, relabeled in increasing order."""
    drop = set(s)
    for v in drop:
        if not 0 <= v < g.order:
            raise GraphError(f"vertex {v} out of range for order {g.order}")
    keep = [v for v in range(g.order) if v not in drop]
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        r = g.rows[v]
        nr = 0
        for w in keep:
            if r >> w & 1:
                nr |= 1 << index[w]
        rows.append(nr)
    return Graph(len(keep), rows)


def min_degree(g: Graph) -> int:
    if g.order < 1:
        raise EmptyGraphError("min_degree of a graph with no vertices")
    return min(g.degrees)


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    rem = (1 << g.order) - 1
    out = []
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nb = 0
            f = frontier
            while f:
                b = f & -f
                nb |= g.rows[b.bit_length() - 1]
                f ^= b
            nb &= rem & ~comp
            comp |= nb
            frontier = nb
        rem &= ~comp
        out.append([v for v in range(g.order) if comp >> v & 1])
    return out


def is_connected(g: Graph) -> bool:
    return g.order > 0 and len(components(g)) == 1


def odd_components(g: Graph) -> int:
    return sum(1 for c in components(g) if len(c) % 2 == 1)
