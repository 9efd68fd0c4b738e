"""Three colors for a balanced quadtree.

A quadtree is balanced when leaves that share a side differ by at most one
level.  On such trees a fixed color per square, read off its coordinates,
never puts the same color on two leaves that share a side.
"""

# %%
from fractions import Fraction

from qtcolor import (EDGE, RandomCfg, balance, color_balanced_3,
                     generate_random, is_balanced, verify)

tree = generate_random(RandomCfg(seed=7, max_depth=6, split_prob=Fraction(1, 2)))
print(len(tree), "leaves, balanced:", is_balanced(tree))

# %% Balancing only ever splits leaves, so the region stays covered.
tree = balance(tree)
print(len(tree), "leaves after balancing, balanced:", is_balanced(tree))

# %%
c = color_balanced_3(tree)
rep = verify(tree, c, EDGE)
print("colors used:", rep.colors_used, "violations:", len(rep.violations))

# %% The same generator can produce balanced trees directly.
direct = generate_random(RandomCfg(seed=7, max_depth=6, balanced=True))
print("direct balanced tree:", len(direct), "leaves")
