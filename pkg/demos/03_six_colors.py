"""Six colors when corners count as contact.

Every nonempty set of leaves contains one with at most five neighbors in the
set, so peeling minimum-degree leaves and coloring them back in reverse
never needs a seventh color.
"""

# %%
from qtcolor import (CORNER, RandomCfg, build_graph, color_corner_6,
                     generate_random, verify)
from qtcolor.oracle import degeneracy_order

tree = generate_random(RandomCfg(seed=11, max_depth=8, split_prob="1/2"))
g = build_graph(tree, CORNER)
print(g.n, "leaves,", g.n_edges, "contacts, max degree", int(g.degrees.max()))

# %%
degeneracy, order = degeneracy_order(g)
print("largest degree at removal:", degeneracy)

# %%
c = color_corner_6(tree)
print(verify(tree, c, CORNER))
