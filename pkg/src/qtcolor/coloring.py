"""Constructive colorings of quadtrees and a coloring verifier."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adjacency import (CORNER, EDGE, AdjacencyGraph, AdjacencyMode,
                        DegreeBuckets, build_graph, min_degree_vertex)
from .errors import (DegeneracyExceeded, InternalInvariantBroken,
                     MissingAssignment, UnbalancedInput)
from .quadtree import (OFFSETS, Quadtree, SquareKey, code_to_key, cover_index,
                       decode, encode, is_balanced, lookup)


@dataclass(frozen=True, eq=False)
class Coloring:
    """Colors for a set of squares, stored by sorted square code."""

    codes: np.ndarray
    colors: np.ndarray
    mode: AdjacencyMode | None = None

    @classmethod
    def for_tree(cls, tree: Quadtree, colors, mode=None) -> "Coloring":
        colors = np.asarray(colors, dtype=np.int64)
        if colors.shape != (len(tree),):
            raise ValueError("one color per leaf expected")
        return cls(tree.codes, colors,
                   None if mode is None else AdjacencyMode.parse(mode))

    @classmethod
    def from_mapping(cls, mapping, mode=None) -> "Coloring":
        items = sorted((SquareKey(*k).code, int(c)) for k, c in mapping.items())
        codes = np.array([k for k, _ in items], dtype=np.int64)
        colors = np.array([c for _, c in items], dtype=np.int64)
        if len(colors) and colors.min() < 0:
            raise ValueError("color ids must be non-negative")
        return cls(codes, colors, None if mode is None else AdjacencyMode.parse(mode))

    @property
    def palette_size(self) -> int:
        return int(self.colors.max()) + 1 if len(self.colors) else 0

    @property
    def assignment(self) -> dict[SquareKey, int]:
        return {code_to_key(c): k for c, k in zip(self.codes.tolist(),
                                                  self.colors.tolist())}

    def __getitem__(self, key) -> int:
        key = SquareKey(*key)
        idx, found = lookup(self.codes, np.array([key.code]))
        if not found[0]:
            raise MissingAssignment(key)
        return int(self.colors[idx[0]])

    def colors_for(self, tree: Quadtree) -> np.ndarray:
        """Colors aligned with ``tree``'s leaves."""
        if np.array_equal(self.codes, tree.codes):
            return self.colors
        idx, found = lookup(self.codes, tree.codes)
        if not found.all():
            raise MissingAssignment(tree.leaves[int(np.argmin(found))])
        return self.colors[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return (self.mode == other.mode and np.array_equal(self.codes, other.codes)
                and np.array_equal(self.colors, other.colors))


@dataclass(frozen=True)
class ViolationReport:
    violations: list
    colors_used: int

    @property
    def ok(self) -> bool:
        return not self.violations


def verify(tree: Quadtree, c: Coloring, mode=None) -> ViolationReport:
    """Every adjacent same-color pair of leaves under ``mode``."""
    mode = AdjacencyMode.parse(mode if mode is not None else c.mode)
    colors = c.colors_for(tree)
    e = build_graph(tree, mode).edges()
    bad = e[colors[e[:, 0]] == colors[e[:, 1]]]
    leaves = tree.leaves
    return ViolationReport([(leaves[i], leaves[j]) for i, j in bad.tolist()],
                           len(np.unique(colors)))


# --- three colors, balanced, edge adjacency ----------------------------------

def pattern_color(key) -> int:
    """Color of a square in the level-alternating three-color pattern.

    Even levels use ``(x + 2y) mod 3`` and odd levels ``(2x + y) mod 3``.
    Same-level squares sharing a side always differ, and every square has
    the color of its lower-left child, so the four squares merged into a
    parent never leave that color on the parent's smaller neighbors.
    """
    lv, x, y = key
    return (x + 2 * y) % 3 if lv % 2 == 0 else (2 * x + y) % 3


def pattern_colors(level, x, y) -> np.ndarray:
    level, x, y = np.asarray(level), np.asarray(x), np.asarray(y)
    return np.where(level % 2 == 0, (x + 2 * y) % 3, (2 * x + y) % 3)


def color_balanced_3(tree: Quadtree) -> Coloring:
    if not is_balanced(tree):
        raise UnbalancedInput("three-coloring needs a 2:1 balanced quadtree")
    return Coloring.for_tree(tree, pattern_colors(tree.level, tree.x, tree.y), EDGE)


# --- four colors, any quadtree, edge adjacency -------------------------------

def _mex3(a, b, c):
    """Smallest color in 0..3 missing from three color arrays (-1 = none)."""
    out = np.full(len(a), 4, dtype=np.int64)
    for k in range(3, -1, -1):
        out[(a != k) & (b != k) & (c != k)] = k
    return out


def color_edge_4(tree: Quadtree, debug: bool = False) -> Coloring:
    """Four-color any quadtree by replaying its splits largest square first.

    On each split the upper-right and lower-left children keep the parent's
    color and the other two take the smallest color missing among their
    neighbors.  The neighbor of the upper-left child across its left side
    is the upper-right child of the left square, or that square itself, or
    a larger leaf around it; all three carry the same color.  The same holds
    for every outward side, so the colors a level's children see do not
    depend on the order of splits within the level, and each level is
    colored in one vectorized pass over the tree's nodes.

    With ``debug=True`` the splits are instead replayed one at a time and
    the coloring is checked for properness after every split.
    """
    if debug:
        return _replay_edge_4(tree)
    nodes = tree.nodes
    color = np.full(len(nodes), -1, dtype=np.int64)
    color[0] = 0
    if len(tree.internal):
        ilev, ix, iy = decode(tree.internal)
        pidx, _ = lookup(nodes, tree.internal)
        bounds = np.searchsorted(ilev, np.arange(tree.depth + 1))
        for lv in range(tree.depth):
            sl = slice(bounds[lv], bounds[lv + 1])
            x, y, c = ix[sl], iy[sl], color[pidx[sl]]
            m = len(x)
            # neighbor colors: left, right (for UL / LR), above, below
            near = _side_colors(nodes, color, lv, np.concatenate([x - 1, x + 1, x, x]),
                                np.concatenate([y, y, y + 1, y - 1]))
            cc = np.concatenate([c, c])
            pick = _mex3(cc, near[:2 * m], near[2 * m:])
            if m and pick.max() > 3:
                raise InternalInvariantBroken("a child saw four neighbor colors")
            # children LL, UR keep the parent's color; UL, LR take the picks
            cx = np.concatenate([2 * x, 2 * x + 1, 2 * x, 2 * x + 1])
            cy = np.concatenate([2 * y, 2 * y + 1, 2 * y + 1, 2 * y])
            idx, _ = lookup(nodes, encode(np.full(4 * m, lv + 1), cx, cy))
            color[idx] = np.concatenate([c, c, pick])
    idx, _ = lookup(nodes, tree.codes)
    return Coloring.for_tree(tree, color[idx], EDGE)


def _side_colors(nodes, color, lv, x, y):
    side = 1 << lv
    ok = (x >= 0) & (x < side) & (y >= 0) & (y < side)
    out = np.full(len(x), -1, dtype=np.int64)
    j = cover_index(nodes, np.full(int(ok.sum()), lv), x[ok], y[ok])
    out[ok] = color[j]
    return out


_OFF = OFFSETS.tolist()


def _replay_edge_4(tree: Quadtree) -> Coloring:
    # current leaves: code -> color
    cur = {0: 0}

    def code(lv, x, y):
        return _OFF[lv] + (x << lv) + y

    def neighbor(lv, x, y):
        """Color of the current leaf covering cell (lv, x, y), or None."""
        side = 1 << lv
        if not (0 <= x < side and 0 <= y < side):
            return None
        while lv >= 0:
            c = cur.get(code(lv, x, y))
            if c is not None:
                return c
            lv, x, y = lv - 1, x >> 1, y >> 1
        raise InternalInvariantBroken("cell not covered by the current leaves")

    for p in tree.internal.tolist():
        lv, px, py = code_to_key(p)
        c = cur.pop(p)
        lv += 1
        x, y = 2 * px, 2 * py
        cur[code(lv, x, y)] = c
        cur[code(lv, x + 1, y + 1)] = c
        for cx, cy in ((x, y + 1), (x + 1, y)):
            seen = {neighbor(lv, cx + dx, cy + dy)
                    for dx, dy in ((-1, 0), (1, 0), (0, -1), (0, 1))}
            seen.discard(None)
            if len(seen) > 3:
                raise InternalInvariantBroken(
                    f"child {(lv, cx, cy)} sees four neighbor colors")
            cur[code(lv, cx, cy)] = min(set(range(4)) - seen)
        # new adjacencies after a split all involve one of the children
        for cx in (x, x + 1):
            for cy in (y, y + 1):
                mine = cur[code(lv, cx, cy)]
                for dx, dy in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                    if neighbor(lv, cx + dx, cy + dy) == mine:
                        raise InternalInvariantBroken(
                            f"split of {code_to_key(p)} left {(lv, cx, cy)} "
                            "next to a square of its own color")
    colors = [cur[c] for c in tree.codes.tolist()]
    return Coloring.for_tree(tree, colors, EDGE)


# --- six colors, any quadtree, corner adjacency ------------------------------

def greedy_degenerate_color(g: AdjacencyGraph, degree_bound: int) -> np.ndarray:
    """Color ``g`` by min-degree elimination, then reinsertion in reverse.

    Each reinserted vertex takes the smallest color unused by its already
    colored neighbors, so at most ``degree_bound + 1`` colors appear.
    Raises :class:`DegeneracyExceeded` if some stage has no vertex of degree
    at most ``degree_bound``.
    """
    adj = g.adjacency_lists()
    buckets = DegreeBuckets(adj, degree_bound)
    order = []
    while buckets.remaining:
        step = buckets.pop_min()
        if step is None:
            v, d = min_degree_vertex(g, np.array(buckets.alive))
            raise DegeneracyExceeded(v, d)
        order.append(step[0])
    colors = [-1] * len(adj)
    for v in reversed(order):
        used = {colors[u] for u in adj[v]}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return np.array(colors, dtype=np.int64)


def color_corner_6(tree: Quadtree) -> Coloring:
    g = build_graph(tree, CORNER)
    return Coloring.for_tree(tree, greedy_degenerate_color(g, 5), CORNER)
