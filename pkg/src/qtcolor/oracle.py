"""Exact chromatic numbers for small graphs and lower-bound witness search."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .adjacency import AdjacencyGraph, AdjacencyMode, DegreeBuckets, build_graph
from .coloring import Coloring, greedy_degenerate_color, verify
from .errors import BudgetExceeded
from .quadtree import (Quadtree, RandomCfg, enumerate_trees, generate_random,
                       is_balanced, node_draw)


@dataclass(frozen=True)
class SearchBudget:
    max_candidates: int = 100_000
    max_oracle_nodes: int = 1_000_000
    wall_limit: float | None = None

    def __post_init__(self):
        if self.max_candidates <= 0 or self.max_oracle_nodes <= 0:
            raise ValueError("budgets must be positive")
        if self.wall_limit is not None and self.wall_limit <= 0:
            raise ValueError("wall_limit must be positive")


def degeneracy_order(g: AdjacencyGraph) -> tuple[int, list[int]]:
    """Repeatedly remove a minimum-degree vertex.

    Returns the largest degree seen at removal and the removal order.
    """
    adj = g.adjacency_lists()
    top = max(map(len, adj), default=0)
    buckets = DegreeBuckets(adj, top)
    order, degeneracy = [], 0
    while buckets.remaining:
        v, d = buckets.pop_min()
        order.append(v)
        degeneracy = max(degeneracy, d)
    return degeneracy, order


def greedy_clique(g: AdjacencyGraph) -> list[int]:
    """A maximal clique grown from the highest-degree vertex."""
    if g.n == 0:
        return []
    deg = g.degrees.tolist()
    adj = [set(a) for a in g.adjacency_lists()]
    v = max(range(g.n), key=lambda i: (deg[i], -i))
    clique, cand = [v], set(adj[v])
    while cand:
        u = max(cand, key=lambda i: (deg[i], -i))
        clique.append(u)
        cand &= adj[u]
    return clique


def _k_color_search(g: AdjacencyGraph, k: int, node_limit: int):
    """Backtracking k-coloring search.

    Returns ``(colorable, colors or None, nodes visited)``.  The vertex with
    the most distinct neighbor colors goes next (lowest index on ties).  A
    greedy clique is pre-colored ``0..q-1`` and a fresh color is only ever
    tried as the lowest unused one, which removes color permutations.
    """
    n = g.n
    if k < 1:
        raise ValueError("k must be at least 1")
    if n == 0:
        return True, [], 0
    adj = g.adjacency_lists()
    clique = greedy_clique(g)
    if len(clique) > k:
        return False, None, 0
    colors = [-1] * n
    count = [[0] * k for _ in range(n)]
    sat = [0] * n
    nodes = 0

    def assign(v, c):
        colors[v] = c
        dead = False
        for u in adj[v]:
            row = count[u]
            row[c] += 1
            if row[c] == 1:
                sat[u] += 1
                if sat[u] == k and colors[u] < 0:
                    dead = True
        return dead

    def unassign(v, c):
        colors[v] = -1
        for u in adj[v]:
            row = count[u]
            row[c] -= 1
            if row[c] == 0:
                sat[u] -= 1

    for c, v in enumerate(clique):
        if assign(v, c):
            return False, None, 0

    def search(used):
        nonlocal nodes
        best, best_sat = -1, -1
        for v in range(n):
            if colors[v] < 0 and sat[v] > best_sat:
                best, best_sat = v, sat[v]
        if best < 0:
            return True
        row = count[best]
        for c in range(min(used + 1, k)):
            if row[c]:
                continue
            nodes += 1
            if nodes > node_limit:
                raise BudgetExceeded(f"{k}-coloring search passed {node_limit} nodes")
            dead = assign(best, c)
            if not dead and search(max(used, c + 1)):
                return True
            unassign(best, c)
        return False

    if search(len(clique)):
        return True, colors, nodes
    return False, None, nodes


def is_k_colorable(g: AdjacencyGraph, k: int, budget: SearchBudget | None = None):
    """Exact decision: ``(True, colors)`` or ``(False, None)``.

    Raises :class:`BudgetExceeded` when the search is cut off; that outcome
    says nothing about colorability.
    """
    budget = budget or SearchBudget()
    ok, colors, _ = _k_color_search(g, k, budget.max_oracle_nodes)
    return ok, (np.array(colors, dtype=np.int64) if ok else None)


@dataclass(frozen=True)
class ChromaticResult:
    chi: int
    colors: np.ndarray
    refutation_nodes: int  # nodes spent showing chi - 1 colors fail


def solve_chromatic(g: AdjacencyGraph, budget: SearchBudget | None = None) -> ChromaticResult:
    """Chromatic number with an optimal coloring.

    Scans k upward from a greedy clique size; the degeneracy bound supplies a
    coloring without search.
    """
    budget = budget or SearchBudget()
    if g.n == 0:
        return ChromaticResult(0, np.zeros(0, np.int64), 0)
    lo = len(greedy_clique(g))
    degeneracy, _ = degeneracy_order(g)
    refuted = 0
    for k in range(lo, degeneracy + 1):
        ok, colors, nodes = _k_color_search(g, k, budget.max_oracle_nodes)
        if ok:
            return ChromaticResult(k, np.array(colors, dtype=np.int64), refuted)
        refuted = nodes
    colors = greedy_degenerate_color(g, degeneracy)
    return ChromaticResult(int(colors.max()) + 1, colors, refuted)


def chromatic_number(g: AdjacencyGraph, budget: SearchBudget | None = None) -> int:
    return solve_chromatic(g, budget).chi


# --- witness search ----------------------------------------------------------

@dataclass
class WitnessReport:
    found: bool
    mode: AdjacencyMode
    target_chi: int
    chi: int
    candidates_tried: int
    tree: Quadtree | None = None
    coloring: Coloring | None = None
    k_minus_1_exhausted: bool = False
    refutation_nodes: int = 0
    undecided: int = 0
    history: list = field(default_factory=list)


def candidate_trees(max_splits: int = 7, seed: int = 0,
                    depths: Iterable[int] = (3, 4, 5, 6),
                    per_depth: int = 20_000,
                    balanced: bool = False) -> Iterator[Quadtree]:
    """Every tree with at most ``max_splits`` splits, then seeded random trees
    of increasing depth (split probability 1/2)."""
    yield from enumerate_trees(max_splits)
    i = 0
    for depth in depths:
        for _ in range(per_depth):
            cfg = RandomCfg(seed=node_draw(seed, i), max_depth=depth,
                            split_prob=1 / 2, balanced=balanced)
            i += 1
            yield generate_random(cfg)


def find_witness(mode, target_chi: int, require_balanced: bool,
                 source: Iterable[Quadtree] | None = None,
                 budget: SearchBudget | None = None) -> WitnessReport:
    """First candidate tree whose adjacency graph needs ``target_chi`` colors.

    Candidates are scanned in source order.  Only trees that could beat the
    best chromatic number certified so far are searched, so the report
    always carries the most demanding tree seen, with an optimal coloring
    and a completed refutation of one fewer color.  Candidates whose search
    runs out of budget are counted in ``undecided``.
    """
    mode = AdjacencyMode.parse(mode)
    if target_chi < 2:
        raise ValueError("target_chi must be at least 2")
    budget = budget or SearchBudget()
    if source is None:
        source = candidate_trees(balanced=require_balanced)
    start = time.monotonic()
    report = WitnessReport(False, mode, target_chi, 0, 0)
    seen = set()
    for tree in source:
        if report.candidates_tried >= budget.max_candidates:
            break
        if budget.wall_limit is not None and time.monotonic() - start > budget.wall_limit:
            break
        report.candidates_tried += 1
        if require_balanced and not is_balanced(tree):
            continue
        h = tree.codes.tobytes()
        if h in seen:
            continue
        seen.add(h)
        g = build_graph(tree, mode)
        degeneracy, _ = degeneracy_order(g)
        if degeneracy + 1 <= report.chi:
            continue
        try:
            if report.chi > 0:
                ok, _, _ = _k_color_search(g, report.chi, budget.max_oracle_nodes)
                if ok:
                    continue
            res = solve_chromatic(g, budget)
        except BudgetExceeded:
            report.undecided += 1
            continue
        report.chi = res.chi
        report.tree = tree
        report.coloring = Coloring.for_tree(tree, res.colors, mode)
        report.k_minus_1_exhausted = True
        report.refutation_nodes = res.refutation_nodes
        report.history.append((report.candidates_tried, res.chi))
        if res.chi >= target_chi:
            report.found = True
            break
    return report


def check_certificate(report: WitnessReport, budget: SearchBudget | None = None) -> bool:
    """Re-verify a witness: proper optimal coloring and a fresh exhaustive
    refutation of one fewer color."""
    if report.tree is None or report.coloring is None:
        return False
    rep = verify(report.tree, report.coloring, report.mode)
    if not rep.ok or rep.colors_used != report.chi:
        return False
    if report.chi <= 1:
        return True
    g = build_graph(report.tree, report.mode)
    ok, _ = is_k_colorable(g, report.chi - 1, budget)
    return not ok
