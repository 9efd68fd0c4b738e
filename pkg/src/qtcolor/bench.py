"""Timing of the three coloring algorithms on seeded trees of growing size."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .coloring import color_balanced_3, color_corner_6, color_edge_4
from .quadtree import Quadtree, balance, make_root_tree

ALGORITHMS = {
    "balanced3": color_balanced_3,
    "edge4": color_edge_4,
    "corner6": color_corner_6,
}


def grow_tree(n_leaves: int, seed: int, balanced: bool = False) -> Quadtree:
    """Seeded tree with at least ``n_leaves`` leaves.

    Leaves to split are drawn uniformly in rounds, at most half the current
    leaves per round, so depth varies across the tree.  ``balanced`` then
    applies the 2:1 refinement, which adds some leaves.
    """
    rng = np.random.default_rng(seed)
    tree = make_root_tree()
    while len(tree) < n_leaves:
        want = math.ceil((n_leaves - len(tree)) / 3)
        m = min(want, max(1, len(tree) // 2))
        pick = rng.choice(len(tree), size=m, replace=False)
        tree = Quadtree.from_internal(np.concatenate([tree.internal,
                                                      tree.codes[pick]]))
    return balance(tree) if balanced else tree


@dataclass(frozen=True)
class BenchRow:
    target: int
    leaves: int
    seconds: float
    ratio: float | None


def time_algorithm(tree: Quadtree, algo: str, repeats: int = 3) -> float:
    fn = ALGORITHMS[algo]
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(tree)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(sizes, algo: str, seed: int, repeats: int = 3) -> list[BenchRow]:
    """Best-of-``repeats`` time per size; ``ratio`` is against the row above."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    rows = []
    for n in sizes:
        tree = grow_tree(n, seed, balanced=(algo == "balanced3"))
        secs = time_algorithm(tree, algo, repeats)
        ratio = secs / rows[-1].seconds if rows else None
        rows.append(BenchRow(n, len(tree), secs, ratio))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'target':>10} {'leaves':>10} {'seconds':>10} {'ratio':>7}"]
    for r in rows:
        ratio = "-" if r.ratio is None else f"{r.ratio:.2f}"
        lines.append(f"{r.target:>10} {r.leaves:>10} {r.seconds:>10.4f} {ratio:>7}")
    return "\n".join(lines)
