"""Running time of the three colorings as the tree grows.

Each doubling of the leaf count should roughly double the time.
"""

# %%
from qtcolor.bench import bench, format_table

for algo in ("balanced3", "edge4", "corner6"):
    print(algo)
    print(format_table(bench([25_000, 50_000, 100_000], algo, seed=1)))
