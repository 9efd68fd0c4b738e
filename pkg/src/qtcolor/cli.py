"""Command-line front end: ``qtcolor <command> [flags]``.

Exit status is 0 on success, 1 when a verification fails or a witness is
not found, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .adjacency import AdjacencyMode, build_graph
from .bench import ALGORITHMS, bench, format_table
from .coloring import verify
from .errors import BudgetExceeded, DegeneracyExceeded, InternalInvariantBroken
from .oracle import (SearchBudget, candidate_trees, check_certificate,
                     find_witness, solve_chromatic)
from .quadtree import RandomCfg, generate_random
from .render import render_svg


class UsageError(Exception):
    pass


def _emit(text: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _mode(value: str) -> AdjacencyMode:
    try:
        return AdjacencyMode.parse(value)
    except ValueError:
        raise argparse.ArgumentTypeError("mode must be 'edge' or 'corner'") from None


def _fraction(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None


def _sizes(value: str) -> list[int]:
    try:
        return [int(float(v)) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("sizes must be comma-separated integers") from None


def cmd_generate(args) -> int:
    cfg = RandomCfg(seed=args.seed, max_depth=args.max_depth,
                    split_prob=args.split_prob, balanced=args.balanced)
    tree = generate_random(cfg)
    text = io.tree_to_text(tree) if args.format == "text" else io.tree_to_json(tree)
    _emit(text, args.out)
    return 0


def cmd_color(args) -> int:
    tree = io.read_tree(args.input, canonicalize=args.canonicalize)
    c = ALGORITHMS[args.algo](tree)
    _emit(io.coloring_to_json(c), args.out)
    print(f"{len(tree)} leaves, {c.palette_size} colors ({args.algo})", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    tree = io.read_tree(args.tree, canonicalize=args.canonicalize)
    c = io.read_coloring(args.colors, canonicalize=args.canonicalize)
    mode = args.mode or c.mode
    if mode is None:
        raise UsageError("no --mode given and the coloring file names none")
    rep = verify(tree, c, mode)
    for a, b in rep.violations:
        print(f"violation: {tuple(a)} {tuple(b)}")
    print(f"{len(rep.violations)} violations, {rep.colors_used} colors")
    return 0 if rep.ok else 1


def cmd_chromatic(args) -> int:
    tree = io.read_tree(args.input, canonicalize=args.canonicalize)
    g = build_graph(tree, args.mode)
    budget = SearchBudget(max_oracle_nodes=args.budget)
    try:
        res = solve_chromatic(g, budget)
    except BudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return 1
    print(res.chi)
    return 0


def cmd_witness(args) -> int:
    budget = SearchBudget(max_candidates=args.budget,
                          max_oracle_nodes=args.node_budget)
    source = candidate_trees(max_splits=args.max_splits, seed=args.seed,
                             balanced=args.balanced)
    rep = find_witness(args.mode, args.target_chi, args.balanced, source, budget)
    if rep.tree is not None and args.out:
        _emit(io.witness_to_json(rep), args.out)
    status = "found" if rep.found else "not found"
    print(f"{status}: best chi {rep.chi} after {rep.candidates_tried} candidates"
          f" ({rep.undecided} undecided)")
    if rep.found and not check_certificate(rep, budget):
        print("certificate failed to re-verify", file=sys.stderr)
        return 1
    return 0 if rep.found else 1


def cmd_render(args) -> int:
    tree = io.read_tree(args.input, canonicalize=args.canonicalize)
    c = io.read_coloring(args.colors, canonicalize=args.canonicalize) \
        if args.colors else None
    _emit(render_svg(tree, c), args.out)
    return 0


def cmd_bench(args) -> int:
    rows = bench(args.sizes, args.algo, args.seed, repeats=args.repeats)
    _emit(format_table(rows) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtcolor",
                                description="Build, color and check quadtrees.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_io(sp, in_flags=("--in",)):
        sp.add_argument(*in_flags, dest="input", required=True, help="tree file")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--canonicalize", action="store_true",
                        help="accept and re-sort non-canonical input")

    sp = sub.add_parser("generate", help="seeded random quadtree")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--max-depth", type=int, default=6)
    sp.add_argument("--split-prob", type=_fraction, default=Fraction(1, 2))
    sp.add_argument("--balanced", action="store_true")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("color", help="color a tree")
    sp.add_argument("--algo", choices=sorted(ALGORITHMS), required=True)
    with_io(sp)
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("verify", help="check a coloring")
    sp.add_argument("--mode", type=_mode)
    sp.add_argument("--tree", "--in", dest="tree", required=True)
    sp.add_argument("--colors", required=True)
    sp.add_argument("--canonicalize", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("chromatic", help="exact chromatic number (small trees)")
    sp.add_argument("--mode", type=_mode, required=True)
    sp.add_argument("--budget", type=int, default=1_000_000,
                    help="search nodes per k")
    with_io(sp)
    sp.set_defaults(func=cmd_chromatic)

    sp = sub.add_parser("witness", help="search for a tree needing many colors")
    sp.add_argument("--mode", type=_mode, required=True)
    sp.add_argument("--target-chi", type=int, required=True)
    sp.add_argument("--balanced", action="store_true")
    sp.add_argument("--budget", type=int, default=100_000, help="candidate trees")
    sp.add_argument("--node-budget", type=int, default=1_000_000,
                    help="search nodes per chromatic call")
    sp.add_argument("--max-splits", type=int, default=7,
                    help="exhaustive phase covers trees with this many splits")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("render", help="draw a tree as SVG")
    sp.add_argument("--colors")
    with_io(sp)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("bench", help="time a coloring algorithm")
    sp.add_argument("--algo", choices=sorted(ALGORITHMS), required=True)
    sp.add_argument("--sizes", type=_sizes, default=[10**4, 2 * 10**4])
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--repeats", type=int, default=3)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DegeneracyExceeded, InternalInvariantBroken) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
