"""Drawing a colored tree as SVG."""

# %%
from pathlib import Path

from qtcolor import RandomCfg, color_edge_4, generate_random
from qtcolor.render import render_svg

tree = generate_random(RandomCfg(seed=2, max_depth=6, split_prob="1/2"))
svg = render_svg(tree, color_edge_4(tree))

# %%
out = Path("tree.svg")
out.write_text(svg)
print("wrote", out, len(svg), "bytes")
