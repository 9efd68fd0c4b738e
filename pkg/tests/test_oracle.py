import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtcolor import (CORNER, EDGE, AdjacencyGraph, RandomCfg, SearchBudget,
                     build_graph, check_certificate, chromatic_number,
                     degeneracy_order, enumerate_trees, find_witness,
                     generate_random, is_k_colorable, make_root_tree)
from qtcolor.errors import BudgetExceeded
from qtcolor.oracle import greedy_clique, solve_chromatic

from conftest import trees
from oracles import (colorable_by_backtracking, colorable_by_product,
                     edge_list, naive_chromatic, proper)

K4 = AdjacencyGraph.from_edges(4, list(itertools.combinations(range(4), 2)))
C4 = AdjacencyGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def random_graph(seed, n, p):
    rng = np.random.default_rng(seed)
    e = [(i, j) for i in range(n) for j in range(i) if rng.random() < p]
    return AdjacencyGraph.from_edges(n, e)


def test_degeneracy_examples(depth1):
    assert degeneracy_order(K4)[0] == 3
    assert degeneracy_order(build_graph(depth1, CORNER))[0] == 3
    d, order = degeneracy_order(C4)
    assert d == 2 and sorted(order) == [0, 1, 2, 3]


def test_degeneracy_of_small_corner_graphs():
    worst = max(degeneracy_order(build_graph(t, CORNER))[0]
                for t in enumerate_trees(6))
    assert worst <= 5


def test_is_k_colorable_examples(t3):
    ok, colors = is_k_colorable(C4, 2)
    assert ok and proper(C4, colors)
    assert is_k_colorable(K4, 3) == (False, None)
    g = build_graph(t3, EDGE)
    assert not colorable_by_product(g.n, edge_list(g), 2)
    assert colorable_by_product(g.n, edge_list(g), 3)
    assert not is_k_colorable(g, 2)[0]
    ok, colors = is_k_colorable(g, 3)
    assert ok and proper(g, colors) and colors.max() < 3


def test_budget_exceeded_is_not_false():
    g = random_graph(7, 40, 0.35)
    with pytest.raises(BudgetExceeded):
        is_k_colorable(g, 5, SearchBudget(max_oracle_nodes=5))


def test_chromatic_examples(depth1):
    assert chromatic_number(build_graph(make_root_tree(), EDGE)) == 1
    assert chromatic_number(build_graph(depth1, CORNER)) == 4
    assert chromatic_number(AdjacencyGraph.from_edges(0, [])) == 0


def test_balanced_random_edge_chi_at_most_3():
    seen = 0
    for seed in range(60):
        t = generate_random(RandomCfg(seed, 4, "1/2", balanced=True))
        if len(t) > 60:
            continue
        seen += 1
        assert chromatic_number(build_graph(t, EDGE)) <= 3
    assert seen > 20


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 10), st.sampled_from([0.2, 0.5, 0.8]))
def test_chromatic_matches_product_enumeration(seed, n, p):
    g = random_graph(seed, n, p)
    res = solve_chromatic(g)
    assert naive_chromatic(n, edge_list(g), n) == res.chi
    assert proper(g, res.colors) and res.colors.max() + 1 == res.chi
    assert len(greedy_clique(g)) <= res.chi <= degeneracy_order(g)[0] + 1


@settings(max_examples=30, deadline=None)
@given(trees(max_depth=5, max_splits=10), st.sampled_from([EDGE, CORNER]))
def test_chromatic_on_trees_matches_backtracking(tree, mode):
    g = build_graph(tree, mode)
    chi = chromatic_number(g)
    assert colorable_by_backtracking(g.n, edge_list(g), chi)
    assert chi <= 1 or not colorable_by_backtracking(g.n, edge_list(g), chi - 1)
    assert chi <= (4 if mode is EDGE else 6)


def test_greedy_clique_is_clique():
    g = random_graph(3, 25, 0.5)
    q = greedy_clique(g)
    adj = [set(a) for a in g.adjacency_lists()]
    assert all(b in adj[a] for a, b in itertools.combinations(q, 2))


def test_find_witness_edge_3(t3):
    rep = find_witness(EDGE, 3, False, source=[make_root_tree(), t3])
    assert rep.found and rep.chi == 3 and rep.tree == t3
    assert check_certificate(rep)


def test_find_witness_edge_4_small_source(edge4_tree):
    rep = find_witness(EDGE, 4, False, source=enumerate_trees(4))
    assert rep.found and rep.chi == 4 and rep.k_minus_1_exhausted
    assert check_certificate(rep)
    assert rep.tree == edge4_tree
    g = build_graph(rep.tree, EDGE)
    assert not colorable_by_backtracking(g.n, edge_list(g), 3)


def test_no_four_chromatic_edge_tree_below_four_splits():
    rep = find_witness(EDGE, 4, False, source=enumerate_trees(3))
    assert not rep.found and rep.chi == 3


def test_find_witness_deterministic_and_budgeted():
    src = lambda: enumerate_trees(4)  # noqa: E731
    a = find_witness(EDGE, 4, False, source=src())
    b = find_witness(EDGE, 4, False, source=src())
    assert (a.tree, a.chi, a.candidates_tried) == (b.tree, b.chi, b.candidates_tried)
    capped = find_witness(EDGE, 4, False, source=src(),
                          budget=SearchBudget(max_candidates=3))
    assert not capped.found and capped.candidates_tried == 3


def test_find_witness_balanced_filter():
    rep = find_witness(EDGE, 4, True, source=enumerate_trees(5))
    assert not rep.found and rep.chi == 3
    assert check_certificate(rep)


def test_corner5_fixture_is_certified(corner5_tree):
    rep = find_witness(CORNER, 5, True, source=[corner5_tree])
    assert rep.found and rep.chi == 5
    assert check_certificate(rep)
