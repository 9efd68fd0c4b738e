"""SVG drawings of quadtrees and their colorings."""

from __future__ import annotations

from .coloring import Coloring
from .quadtree import Quadtree

VIEW = 1024

# ColorBrewer "Set1", indexed by color id.
PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33")


def _num(v: float) -> str:
    # dyadic rationals are exact in binary floating point
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def render_svg(tree: Quadtree, c: Coloring | None = None) -> str:
    """One rectangle per leaf on a 1024x1024 canvas, y axis flipped.

    Without a coloring the leaves are drawn as outlines only.
    """
    colors = c.colors_for(tree).tolist() if c is not None else None
    if colors and max(colors) >= len(PALETTE):
        raise ValueError(f"palette has only {len(PALETTE)} colors")
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{VIEW}" height="{VIEW}" viewBox="0 0 {VIEW} {VIEW}">']
    for i, (lv, x, y) in enumerate(tree.leaves):
        size = VIEW / (1 << lv)
        fill = PALETTE[colors[i]] if colors is not None else "none"
        out.append(f'<rect x="{_num(x * size)}" y="{_num(VIEW - (y + 1) * size)}" '
                   f'width="{_num(size)}" height="{_num(size)}" '
                   f'fill="{fill}" stroke="#000000" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
