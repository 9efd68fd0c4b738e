"""Coloring the squares of quadtrees so that adjacent squares differ.

Balanced trees under edge adjacency take three colors, any tree under edge
adjacency four, and any tree under corner adjacency six; all three
colorings run in (near) linear time.  An exact oracle certifies trees that
need three, four or five colors.
"""

from .adjacency import (CORNER, EDGE, AdjacencyGraph, AdjacencyMode,
                        are_adjacent, build_graph, induced_subgraph,
                        min_degree_vertex)
from .coloring import (Coloring, ViolationReport, color_balanced_3,
                       color_corner_6, color_edge_4, greedy_degenerate_color,
                       pattern_color, verify)
from .errors import *  # noqa: F401,F403
from .oracle import (SearchBudget, WitnessReport, check_certificate,
                     chromatic_number, degeneracy_order, find_witness,
                     is_k_colorable)
from .quadtree import (Quadtree, RandomCfg, SquareKey, balance,
                       enumerate_trees, from_leaves, generate_random,
                       is_balanced, make_root_tree, split_leaf)
from .render import render_svg

__version__ = "0.1.0"
