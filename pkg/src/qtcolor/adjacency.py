"""Adjacency between quadtree leaves and the graphs it induces."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptySubset, OverlapError
from .quadtree import DIAGONALS, SIDES, Quadtree, SquareKey


class AdjacencyMode(enum.Enum):
    EDGE = "edge"
    CORNER = "corner"

    @classmethod
    def parse(cls, value) -> "AdjacencyMode":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


EDGE = AdjacencyMode.EDGE
CORNER = AdjacencyMode.CORNER


def are_adjacent(a, b, mode) -> bool:
    """Exact adjacency test for two non-overlapping squares.

    EDGE needs a shared boundary segment of positive length; CORNER accepts
    any common boundary point.
    """
    mode = AdjacencyMode.parse(mode)
    a, b = SquareKey(*a), SquareKey(*b)
    top = max(a.level, b.level)
    sa, sb = 1 << (top - a.level), 1 << (top - b.level)
    ax0, ay0, bx0, by0 = a.x * sa, a.y * sa, b.x * sb, b.y * sb
    # overlap lengths of the closed intervals; negative means a gap
    ox = min(ax0 + sa, bx0 + sb) - max(ax0, bx0)
    oy = min(ay0 + sa, by0 + sb) - max(ay0, by0)
    if ox > 0 and oy > 0:
        raise OverlapError(f"squares {tuple(a)} and {tuple(b)} overlap")
    if ox < 0 or oy < 0:
        return False
    if mode is EDGE:
        return ox > 0 or oy > 0
    return True


@dataclass(frozen=True, eq=False)
class AdjacencyGraph:
    """Undirected simple graph in CSR form.

    ``vertices`` are the leaf keys in canonical order (or plain integers for
    graphs not built from a tree); ``neighbors(i)`` is sorted.
    """

    vertices: tuple
    indptr: np.ndarray
    indices: np.ndarray
    mode: AdjacencyMode | None = None

    @classmethod
    def from_edges(cls, n: int, edges, mode=None, vertices=None) -> "AdjacencyGraph":
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n == 0:
            e = e[:0]
            n_ = 1
        else:
            n_ = n
        if np.any(e[:, 0] == e[:, 1]):
            raise ValueError("self-loops are not allowed")
        lo, hi = np.minimum(e[:, 0], e[:, 1]), np.maximum(e[:, 0], e[:, 1])
        pairs = np.unique(lo * n_ + hi)
        lo, hi = pairs // n_, pairs % n_
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        indices = dst[order]
        indptr.flags.writeable = False
        indices.flags.writeable = False
        if vertices is None:
            vertices = tuple(range(n))
        return cls(tuple(vertices), indptr, indices, mode)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges ``i < j`` in lexicographic order."""
        src = np.repeat(np.arange(self.n), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def adjacency_lists(self) -> list[list[int]]:
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [ind[ptr[i]:ptr[i + 1]] for i in range(self.n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdjacencyGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.mode == other.mode
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))


def build_graph(tree: Quadtree, mode) -> AdjacencyGraph:
    """Adjacency graph of the leaves of ``tree``.

    Every adjacent pair is found from its smaller (or equal) member: the
    same-size cell beside it, across a side or a corner, lies inside the
    other square, which :meth:`Quadtree.locate` finds by walking up levels.
    Cost is O(n * depth) vectorized lookups.
    """
    mode = AdjacencyMode.parse(mode)
    dirs = SIDES if mode is EDGE else SIDES + DIAGONALS
    src, lv, x, y = tree.neighbor_cells(dirs)
    j = tree.locate(lv, x, y)
    hit = j >= 0
    return AdjacencyGraph.from_edges(len(tree), np.column_stack([src[hit], j[hit]]),
                                     mode=mode, vertices=tree.leaves)


def as_mask(q, n: int) -> np.ndarray:
    """A vertex subset as a boolean membership mask of length ``n``."""
    q = np.asarray(q)
    if q.dtype == bool:
        if q.shape != (n,):
            raise ValueError("mask length does not match the graph")
        return q
    mask = np.zeros(n, bool)
    if q.size:
        if q.min() < 0 or q.max() >= n:
            raise IndexError("subset index out of range")
        mask[q] = True
    return mask


def induced_subgraph(g: AdjacencyGraph, q) -> AdjacencyGraph:
    mask = as_mask(q, g.n)
    keep = np.flatnonzero(mask)
    remap = np.full(g.n, -1, np.int64)
    remap[keep] = np.arange(len(keep))
    e = g.edges()
    e = e[mask[e[:, 0]] & mask[e[:, 1]]]
    return AdjacencyGraph.from_edges(len(keep), remap[e], mode=g.mode,
                                     vertices=tuple(g.vertices[i] for i in keep))


def alive_degrees(g: AdjacencyGraph, alive) -> np.ndarray:
    mask = as_mask(alive, g.n)
    src = np.repeat(np.arange(g.n), g.degrees)
    counted = mask[g.indices]
    return np.bincount(src[counted], minlength=g.n) * mask


def min_degree_vertex(g: AdjacencyGraph, alive) -> tuple[int, int]:
    """Lowest-index vertex of minimum degree within the ``alive`` subset."""
    mask = as_mask(alive, g.n)
    if not mask.any():
        raise EmptySubset("no alive vertices")
    deg = np.where(mask, alive_degrees(g, mask), np.iinfo(np.int64).max)
    v = int(np.argmin(deg))
    return v, int(deg[v])


class DegreeBuckets:
    """Min-degree elimination with one doubly linked list per small degree.

    Only vertices whose current degree is at most ``max_tracked`` sit in a
    list; a vertex enters one the moment its degree drops that low.  Lists
    are filled in canonical order and popped from the front, and a vertex
    whose degree drops is appended to the back of its new list, so the
    elimination order is deterministic.  Each removal costs O(1 + degree).
    """

    def __init__(self, adj: list[list[int]], max_tracked: int):
        n = len(adj)
        self.adj = adj
        self.max_tracked = max_tracked
        self.degree = [len(a) for a in adj]
        self.alive = [True] * n
        self.remaining = n
        self.head = [-1] * (max_tracked + 1)
        self.tail = [-1] * (max_tracked + 1)
        self.prev = [-1] * n
        self.next = [-1] * n
        self._floor = 0
        for v in range(n):
            if self.degree[v] <= max_tracked:
                self._push(v, self.degree[v])

    def _push(self, v, d):
        t = self.tail[d]
        self.prev[v], self.next[v] = t, -1
        if t < 0:
            self.head[d] = v
        else:
            self.next[t] = v
        self.tail[d] = v

    def _unlink(self, v, d):
        p, q = self.prev[v], self.next[v]
        if p < 0:
            self.head[d] = q
        else:
            self.next[p] = q
        if q < 0:
            self.tail[d] = p
        else:
            self.prev[q] = p

    def pop_min(self) -> tuple[int, int] | None:
        """Remove and return ``(vertex, degree)``; None if nothing is tracked."""
        # removing a degree-d vertex lowers the minimum by at most one
        for d in range(self._floor, self.max_tracked + 1):
            v = self.head[d]
            if v >= 0:
                break
        else:
            return None
        self._floor = max(d - 1, 0)
        self._unlink(v, d)
        self.alive[v] = False
        self.remaining -= 1
        degree, alive, top = self.degree, self.alive, self.max_tracked
        for u in self.adj[v]:
            if alive[u]:
                du = degree[u]
                degree[u] = du - 1
                if du <= top:
                    self._unlink(u, du)
                    self._push(u, du - 1)
                elif du - 1 == top:
                    self._push(u, top)
        return v, d
