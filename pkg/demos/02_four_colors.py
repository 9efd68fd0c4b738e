"""Four colors for any quadtree, side adjacency.

Without balance a big leaf can touch many small ones.  Replaying the splits
from the root, two children keep the parent's color and the other two pick
whatever their neighbors leave free.
"""

# %%
from qtcolor import EDGE, RandomCfg, color_edge_4, generate_random, verify

tree = generate_random(RandomCfg(seed=3, max_depth=9, split_prob="3/5"))
print(len(tree), "leaves, depth", tree.depth)

# %%
c = color_edge_4(tree)
print(verify(tree, c, EDGE))

# %% debug=True replays the splits one by one and checks after each.
assert color_edge_4(tree, debug=True) == c

# %% Colors are addressable by square.
first = tree.leaves[0]
print(first, "->", c[first])
