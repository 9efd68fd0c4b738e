"""Quadtree partitions of the unit square.

A square is addressed by ``(level, x, y)``: it covers
``[x, x+1] * 2**-level`` by ``[y, y+1] * 2**-level`` with y pointing up.
Internally every square is packed into one int64 *code*::

    code = (4**level - 1) // 3 + (x << level) + y

so sorting codes sorts keys lexicographically by ``(level, x, y)``, which is
the canonical order used for iteration and serialization.  All geometry
stays in exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import (BudgetExceeded, DepthLimit, KeyRangeError, NotALeaf,
                     PartitionError)

MAX_LEVEL = 30

OFFSETS = np.array([(4**lv - 1) // 3 for lv in range(MAX_LEVEL + 2)],
                   dtype=np.int64)

# Directions to the four edge-sharing and the four corner-sharing cells.
SIDES = ((-1, 0), (1, 0), (0, -1), (0, 1))
DIAGONALS = ((-1, -1), (1, -1), (-1, 1), (1, 1))


class SquareKey(NamedTuple):
    level: int
    x: int
    y: int

    def check(self) -> "SquareKey":
        lv, x, y = self
        if not (0 <= lv <= MAX_LEVEL):
            raise KeyRangeError(f"level {lv} outside [0, {MAX_LEVEL}]")
        side = 1 << lv
        if not (0 <= x < side and 0 <= y < side):
            raise KeyRangeError(f"square {tuple(self)} outside the unit square")
        return self

    def parent(self) -> "SquareKey":
        if self.level == 0:
            raise ValueError("the root square has no parent")
        return SquareKey(self.level - 1, self.x >> 1, self.y >> 1)

    def children(self) -> tuple["SquareKey", ...]:
        """Children in canonical order: LL, UL, LR, UR."""
        lv, x, y = self.level + 1, 2 * self.x, 2 * self.y
        return (SquareKey(lv, x, y), SquareKey(lv, x, y + 1),
                SquareKey(lv, x + 1, y), SquareKey(lv, x + 1, y + 1))

    @property
    def code(self) -> int:
        return key_to_code(self)


ROOT = SquareKey(0, 0, 0)


def key_to_code(key) -> int:
    lv, x, y = key
    return (4**lv - 1) // 3 + (x << lv) + y


def code_to_key(code: int) -> SquareKey:
    lv = int(np.searchsorted(OFFSETS, code, side="right")) - 1
    r = int(code) - int(OFFSETS[lv])
    return SquareKey(lv, r >> lv, r & ((1 << lv) - 1))


def encode(level, x, y) -> np.ndarray:
    level = np.asarray(level, dtype=np.int64)
    return OFFSETS[level] + (np.asarray(x, dtype=np.int64) << level) + y


def decode(codes) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    codes = np.asarray(codes, dtype=np.int64)
    level = np.searchsorted(OFFSETS, codes, side="right") - 1
    r = codes - OFFSETS[level]
    return level, r >> level, r & ((np.int64(1) << level) - 1)


def lookup(sorted_codes: np.ndarray, query: np.ndarray):
    """Positions of ``query`` in ``sorted_codes`` and a found-mask."""
    n = len(sorted_codes)
    if n == 0:
        return np.zeros(len(query), np.int64), np.zeros(len(query), bool)
    idx = np.searchsorted(sorted_codes, query)
    found = sorted_codes[np.minimum(idx, n - 1)] == query
    return idx, found


def cover_index(sorted_codes: np.ndarray, level, x, y) -> np.ndarray:
    """Index of the first square in ``sorted_codes`` equal to or containing
    each cell, found by walking up one level at a time.

    Every cell must have such a square among ``sorted_codes``.
    """
    out = np.empty(len(level), dtype=np.int64)
    pending = np.arange(len(level))
    lv, xx, yy = level, x, y
    while len(pending):
        if lv.min() < 0:
            raise ValueError("cell not covered by any listed square")
        idx, found = lookup(sorted_codes, encode(lv, xx, yy))
        out[pending[found]] = idx[found]
        keep = ~found
        pending = pending[keep]
        lv, xx, yy = lv[keep] - 1, xx[keep] >> 1, yy[keep] >> 1
    return out


def _children_codes(codes: np.ndarray) -> np.ndarray:
    lv, x, y = decode(codes)
    lv, x, y = lv + 1, 2 * x, 2 * y
    return np.concatenate([encode(lv, x + dx, y + dy)
                           for dx in (0, 1) for dy in (0, 1)])


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Quadtree:
    """An immutable set of leaf squares that exactly tiles the unit square.

    Leaves are stored as numpy arrays in canonical order; ``internal`` holds
    the sorted codes of every subdivided square.  Build trees through
    :func:`make_root_tree`, :func:`from_leaves` or the other operations in
    this module rather than calling the constructor directly.
    """

    __slots__ = ("codes", "level", "x", "y", "internal", "depth",
                 "_keys", "_nodes")

    def __init__(self, codes: np.ndarray, internal: np.ndarray):
        self.codes = _frozen(np.asarray(codes, dtype=np.int64))
        self.internal = _frozen(np.asarray(internal, dtype=np.int64))
        level, x, y = decode(self.codes)
        self.level = _frozen(level)
        self.x = _frozen(x)
        self.y = _frozen(y)
        self.depth = int(level.max())
        self._keys = None
        self._nodes = None

    @classmethod
    def from_internal(cls, internal) -> "Quadtree":
        """Tree whose subdivided squares are exactly ``internal``.

        ``internal`` must be closed under taking parents; it is not checked.
        """
        internal = np.unique(np.asarray(internal, dtype=np.int64))
        if len(internal) == 0:
            return cls(np.zeros(1, np.int64), internal)
        children = _children_codes(internal)
        return cls(np.sort(np.setdiff1d(children, internal, assume_unique=True)),
                   internal)

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def leaves(self) -> tuple[SquareKey, ...]:
        if self._keys is None:
            self._keys = tuple(map(SquareKey, self.level.tolist(),
                                   self.x.tolist(), self.y.tolist()))
        return self._keys

    def __iter__(self) -> Iterator[SquareKey]:
        return iter(self.leaves)

    def __contains__(self, key) -> bool:
        return self.index(key) >= 0

    def index(self, key) -> int:
        """Position of ``key`` among the leaves, or -1."""
        c = key_to_code(key)
        i = int(np.searchsorted(self.codes, c))
        return i if i < len(self.codes) and self.codes[i] == c else -1

    def is_internal(self, key) -> bool:
        c = key_to_code(key)
        i = int(np.searchsorted(self.internal, c))
        return i < len(self.internal) and self.internal[i] == c

    @property
    def nodes(self) -> np.ndarray:
        """Sorted codes of every square in the tree, leaves and internal."""
        if self._nodes is None:
            self._nodes = _frozen(np.union1d(self.codes, self.internal))
        return self._nodes

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quadtree):
            return NotImplemented
        return np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash(self.codes.tobytes())

    def __repr__(self) -> str:
        return f"Quadtree(n_leaves={len(self)}, depth={self.depth})"

    def locate(self, level, x, y) -> np.ndarray:
        """Leaf index containing each given cell, or -1 if it is subdivided.

        Cells must lie inside the unit square.
        """
        level = np.array(level, dtype=np.int64, ndmin=1)
        x = np.array(x, dtype=np.int64, ndmin=1)
        y = np.array(y, dtype=np.int64, ndmin=1)
        out = np.full(len(level), -1, dtype=np.int64)
        _, inner = lookup(self.internal, encode(level, x, y))
        outer = ~inner
        out[outer] = cover_index(self.codes, level[outer], x[outer], y[outer])
        return out

    def neighbor_cells(self, directions):
        """Same-size cells next to every leaf in the given directions.

        Returns ``(source, level, x, y)`` arrays, skipping cells that fall
        outside the unit square.
        """
        n = len(self)
        src, lv, xs, ys = [], [], [], []
        side = np.int64(1) << self.level
        for dx, dy in directions:
            nx, ny = self.x + dx, self.y + dy
            ok = (nx >= 0) & (nx < side) & (ny >= 0) & (ny < side)
            src.append(np.arange(n)[ok])
            lv.append(self.level[ok])
            xs.append(nx[ok])
            ys.append(ny[ok])
        return (np.concatenate(src), np.concatenate(lv), np.concatenate(xs),
                np.concatenate(ys))


def make_root_tree() -> Quadtree:
    return Quadtree(np.zeros(1, np.int64), np.zeros(0, np.int64))


def from_leaves(keys: Iterable) -> Quadtree:
    """Validate that ``keys`` tile the unit square and build the tree."""
    keys = [SquareKey(*k).check() for k in keys]
    if not keys:
        raise PartitionError("no leaves: the unit square is uncovered",
                             witness=ROOT)
    arr = np.array(keys, dtype=np.int64)
    codes = np.sort(encode(arr[:, 0], arr[:, 1], arr[:, 2]))
    dup = np.flatnonzero(codes[1:] == codes[:-1])
    if len(dup):
        k = code_to_key(int(codes[dup[0]]))
        raise PartitionError(f"square {tuple(k)} listed twice", witness=(k, k))

    # Every strict ancestor of a leaf; a leaf among them overlaps a descendant.
    level, x, y = decode(codes)
    ancestors = []
    for up in range(1, int(level.max()) + 1):
        m = level >= up
        ancestors.append(encode(level[m] - up, x[m] >> up, y[m] >> up))
    internal = np.unique(np.concatenate(ancestors)) if ancestors \
        else np.zeros(0, np.int64)
    _, clash = lookup(internal, codes)
    if clash.any():
        big = code_to_key(int(codes[np.argmax(clash)]))
        small = next(k for k in sorted(keys)
                     if k.level > big.level
                     and (k.x >> (k.level - big.level), k.y >> (k.level - big.level))
                     == (big.x, big.y))
        raise PartitionError(f"squares {tuple(big)} and {tuple(small)} overlap",
                             witness=(big, small))

    depth = int(level.max())
    counts = np.bincount(level, minlength=depth + 1).tolist()
    area = sum(c * 4**(depth - lv) for lv, c in enumerate(counts))
    if area != 4**depth:
        nodes = np.union1d(codes, internal)
        kids = _children_codes(internal) if len(internal) else np.zeros(0, np.int64)
        _, present = lookup(nodes, kids)
        hole = code_to_key(int(kids[np.argmin(present)])) if len(kids) else ROOT
        raise PartitionError(f"square {tuple(hole)} is not covered",
                             witness=hole)
    return Quadtree(codes, internal)


def split_leaf(tree: Quadtree, key) -> Quadtree:
    key = SquareKey(*key)
    if key not in tree:
        raise NotALeaf(f"{tuple(key)} is not a leaf")
    if key.level >= MAX_LEVEL:
        raise DepthLimit(f"cannot split below level {MAX_LEVEL}")
    return Quadtree.from_internal(np.append(tree.internal, key.code))


def is_balanced(tree: Quadtree) -> bool:
    """True iff edge-adjacent leaves differ by at most one level."""
    return len(_balance_violations(tree)) == 0


def _balance_violations(tree: Quadtree) -> np.ndarray:
    # A leaf seeing a larger neighbor across a side always lies inside that
    # neighbor's side, so checking the same-size side cells finds every pair.
    src, lv, x, y = tree.neighbor_cells(SIDES)
    j = tree.locate(lv, x, y)
    hit = j >= 0
    bad = tree.level[j[hit]] < lv[hit] - 1
    return np.unique(j[hit][bad])


def balance(tree: Quadtree, max_level: int = MAX_LEVEL) -> Quadtree:
    """Smallest 2:1-balanced refinement of ``tree``.

    Each round splits every leaf that is more than one level shallower than
    some edge neighbor; rounds repeat until nothing violates.
    """
    rounds = 0
    while True:
        bad = _balance_violations(tree)
        if len(bad) == 0:
            return tree
        rounds += 1
        if rounds > max_level or int(tree.level[bad].max()) >= max_level:
            raise DepthLimit("balancing exceeded the depth limit")
        tree = Quadtree.from_internal(np.concatenate([tree.internal,
                                                      tree.codes[bad]]))


# --- seeded generation -------------------------------------------------------

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def node_draw(seed: int, code: int) -> int:
    """Scalar reference for the per-square 64-bit random draw.

    SplitMix64's output function applied to ``seed + (code + 1) * golden``
    (mod 2**64).  Each square gets an independent stream, so results do not
    depend on traversal order.
    """
    z = (seed + (code + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _M1) & _MASK64
    z = ((z ^ (z >> 27)) * _M2) & _MASK64
    return z ^ (z >> 31)


def node_draws(seed: int, codes: np.ndarray) -> np.ndarray:
    z = np.uint64(seed) + (codes.astype(np.uint64) + np.uint64(1)) * np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class RandomCfg:
    seed: int
    max_depth: int
    split_prob: Fraction = Fraction(1, 2)
    balanced: bool = False

    def __post_init__(self):
        p = Fraction(self.split_prob) if not isinstance(self.split_prob, str) \
            else Fraction(self.split_prob)
        object.__setattr__(self, "split_prob", p)
        if not 0 <= p <= 1:
            raise ValueError("split_prob must lie in [0, 1]")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if not 0 < self.max_depth <= MAX_LEVEL:
            raise ValueError(f"max_depth must be in 1..{MAX_LEVEL}")


def generate_random(cfg: RandomCfg) -> Quadtree:
    """Split each square below ``max_depth`` with probability ``split_prob``.

    The decision for square ``c`` is ``node_draw(seed, c) < ceil(p * 2**64)``.
    """
    p = cfg.split_prob
    threshold = -((-p.numerator << 64) // p.denominator)
    internal = []
    level, x, y = 0, np.zeros(1, np.int64), np.zeros(1, np.int64)
    while level < cfg.max_depth and len(x):
        codes = encode(np.full(len(x), level), x, y)
        if threshold > _MASK64:
            split = np.ones(len(codes), bool)
        else:
            split = node_draws(cfg.seed, codes) < np.uint64(threshold)
        internal.append(codes[split])
        x, y = 2 * x[split], 2 * y[split]
        x = np.concatenate([x, x, x + 1, x + 1])
        y = np.concatenate([y, y + 1, y, y + 1])
        level += 1
    tree = Quadtree.from_internal(np.concatenate(internal))
    return balance(tree) if cfg.balanced else tree


def enumerate_trees(max_splits: int, cap: int | None = None) -> Iterator[Quadtree]:
    """Every quadtree reachable with at most ``max_splits`` splits, once each.

    A tree is identified by its set of subdivided squares, which must be
    closed under parents; trees are yielded sorted by their canonical leaf
    sequence.  Raises :class:`BudgetExceeded` once more than ``cap`` trees
    would be produced.
    """
    root = ROOT.code
    layer = {frozenset()}
    found = [frozenset()]
    for _ in range(max_splits):
        nxt = set()
        for s in layer:
            if not s:
                nxt.add(frozenset((root,)))
                continue
            for c in s:
                for k in code_to_key(c).children():
                    kc = k.code
                    if kc not in s:
                        nxt.add(s | {kc})
        found.extend(nxt)
        if cap is not None and len(found) > cap:
            raise BudgetExceeded(f"more than {cap} trees with <= {max_splits} splits")
        layer = nxt

    def leaf_codes(s):
        if not s:
            return (root,)
        out = []
        for c in s:
            out.extend(k.code for k in code_to_key(c).children() if k.code not in s)
        return tuple(sorted(out))

    keyed = sorted((leaf_codes(s), s) for s in found)
    for leaves, s in keyed:
        yield Quadtree(np.array(leaves, np.int64),
                       np.array(sorted(s), np.int64))
