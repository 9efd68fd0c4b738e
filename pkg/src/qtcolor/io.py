"""Read and write trees, colorings, graphs and witness certificates.

Formats::

    {"format": "quadtree-v1", "leaves": [[level, x, y], ...]}
    quadtree-v1            (text form: header, then "level x y" per line)
    {"format": "coloring-v1", "mode": "edge", "colors": [[level, x, y, c], ...]}
    {"mode": "corner", "n": N, "edges": [[i, j], ...]}

Leaves are always written in canonical ``(level, x, y)`` order.  Readers
reject any other order unless asked to re-canonicalize, which they then do
with a warning.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path

import numpy as np

from .adjacency import AdjacencyGraph, AdjacencyMode
from .coloring import Coloring
from .errors import NonCanonicalOrder, QuadtreeError
from .quadtree import Quadtree, decode, from_leaves

TREE_FORMAT = "quadtree-v1"
COLORING_FORMAT = "coloring-v1"
WITNESS_FORMAT = "witness-v1"


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _rows(tree: Quadtree) -> list[list[int]]:
    return np.column_stack([tree.level, tree.x, tree.y]).tolist()


def _check_order(keys, canonicalize: bool, what: str):
    if all(a < b for a, b in zip(keys, keys[1:])):
        return keys
    if not canonicalize:
        raise NonCanonicalOrder(f"{what} not in canonical (level, x, y) order; "
                                "re-canonicalize to accept")
    warnings.warn(f"{what} re-sorted into canonical order", stacklevel=3)
    return sorted(keys)


def _int_row(row, width, what):
    if not isinstance(row, (list, tuple)) or len(row) != width \
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
        raise QuadtreeError(f"malformed {what} entry {row!r}")
    return tuple(row)


def tree_to_json(tree: Quadtree) -> str:
    return _dump({"format": TREE_FORMAT, "leaves": _rows(tree)})


def tree_to_text(tree: Quadtree) -> str:
    lines = [TREE_FORMAT] + [f"{lv} {x} {y}" for lv, x, y in _rows(tree)]
    return "\n".join(lines) + "\n"


def _tree_obj(obj, canonicalize):
    if not isinstance(obj, dict) or obj.get("format") != TREE_FORMAT:
        raise QuadtreeError(f"not a {TREE_FORMAT} document")
    keys = [_int_row(r, 3, "leaf") for r in obj.get("leaves", [])]
    return from_leaves(_check_order(keys, canonicalize, "leaves"))


def tree_from_json(text: str, canonicalize: bool = False) -> Quadtree:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuadtreeError(f"invalid JSON: {exc}") from None
    return _tree_obj(obj, canonicalize)


def tree_from_text(text: str, canonicalize: bool = False) -> Quadtree:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != TREE_FORMAT:
        raise QuadtreeError(f"missing {TREE_FORMAT} header")
    keys = []
    for ln in lines[1:]:
        try:
            keys.append(tuple(int(v) for v in ln.split()))
        except ValueError:
            raise QuadtreeError(f"malformed leaf line {ln!r}") from None
        if len(keys[-1]) != 3:
            raise QuadtreeError(f"malformed leaf line {ln!r}")
    return from_leaves(_check_order(keys, canonicalize, "leaves"))


def loads_tree(text: str, canonicalize: bool = False) -> Quadtree:
    if text.lstrip().startswith("{"):
        return tree_from_json(text, canonicalize)
    return tree_from_text(text, canonicalize)


def read_tree(path, canonicalize: bool = False) -> Quadtree:
    return loads_tree(Path(path).read_text(), canonicalize)


def write_tree(tree: Quadtree, path, fmt: str = "json") -> None:
    text = tree_to_text(tree) if fmt == "text" else tree_to_json(tree)
    Path(path).write_text(text)


def _coloring_obj(c: Coloring) -> dict:
    lv, x, y = decode(c.codes)
    rows = np.column_stack([lv, x, y, c.colors]).tolist()
    return {"format": COLORING_FORMAT,
            "mode": c.mode.value if c.mode is not None else None,
            "colors": rows}


def coloring_to_json(c: Coloring) -> str:
    return _dump(_coloring_obj(c))


def _coloring_from_obj(obj, canonicalize):
    if not isinstance(obj, dict) or obj.get("format") != COLORING_FORMAT:
        raise QuadtreeError(f"not a {COLORING_FORMAT} document")
    rows = [_int_row(r, 4, "color") for r in obj.get("colors", [])]
    keys = _check_order([r[:3] for r in rows], canonicalize, "colored squares")
    if len(set(keys)) != len(keys):
        raise QuadtreeError("a square is colored twice")
    mode = obj.get("mode")
    try:
        return Coloring.from_mapping({r[:3]: r[3] for r in rows},
                                     None if mode is None else AdjacencyMode.parse(mode))
    except ValueError as exc:
        raise QuadtreeError(str(exc)) from None


def coloring_from_json(text: str, canonicalize: bool = False) -> Coloring:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuadtreeError(f"invalid JSON: {exc}") from None
    return _coloring_from_obj(obj, canonicalize)


def read_coloring(path, canonicalize: bool = False) -> Coloring:
    return coloring_from_json(Path(path).read_text(), canonicalize)


def write_coloring(c: Coloring, path) -> None:
    Path(path).write_text(coloring_to_json(c))


def graph_to_json(g: AdjacencyGraph) -> str:
    return _dump({"mode": g.mode.value if g.mode is not None else None,
                  "n": g.n, "edges": g.edges().tolist()})


def graph_from_json(text: str) -> AdjacencyGraph:
    obj = json.loads(text)
    mode = obj.get("mode")
    return AdjacencyGraph.from_edges(
        int(obj["n"]), obj["edges"],
        mode=None if mode is None else AdjacencyMode.parse(mode))


def witness_to_json(report) -> str:
    """Certificate: tree, optimal coloring and the refutation summary."""
    obj = {"format": WITNESS_FORMAT,
           "mode": report.mode.value,
           "target_chi": report.target_chi,
           "found": report.found,
           "chi": report.chi,
           "k_minus_1_exhausted": report.k_minus_1_exhausted,
           "refutation_nodes": report.refutation_nodes,
           "candidates_tried": report.candidates_tried,
           "undecided": report.undecided,
           "tree": None, "coloring": None}
    if report.tree is not None:
        obj["tree"] = {"format": TREE_FORMAT, "leaves": _rows(report.tree)}
        obj["coloring"] = _coloring_obj(report.coloring)
    return _dump(obj)


def witness_from_json(text: str):
    from .oracle import WitnessReport
    obj = json.loads(text)
    if obj.get("format") != WITNESS_FORMAT:
        raise QuadtreeError(f"not a {WITNESS_FORMAT} document")
    tree = coloring = None
    if obj.get("tree") is not None:
        tree = _tree_obj(obj["tree"], False)
        coloring = _coloring_from_obj(obj["coloring"], False)
    return WitnessReport(
        found=bool(obj["found"]), mode=AdjacencyMode.parse(obj["mode"]),
        target_chi=int(obj["target_chi"]), chi=int(obj["chi"]),
        candidates_tried=int(obj["candidates_tried"]), tree=tree,
        coloring=coloring, k_minus_1_exhausted=bool(obj["k_minus_1_exhausted"]),
        refutation_nodes=int(obj.get("refutation_nodes", 0)),
        undecided=int(obj.get("undecided", 0)))
