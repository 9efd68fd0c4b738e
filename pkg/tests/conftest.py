import pathlib

import numpy as np
import pytest
from hypothesis import strategies as st

from qtcolor import from_leaves, make_root_tree, split_leaf
from qtcolor import io
from qtcolor.quadtree import Quadtree

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def depth1():
    return from_leaves([(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)])


@pytest.fixture
def t3(depth1):
    """Three level-1 leaves plus the split north-east quadrant."""
    return split_leaf(depth1, (1, 1, 1))


@pytest.fixture
def t3_unbalanced(t3):
    return split_leaf(t3, (2, 2, 2))


@pytest.fixture
def corner5_tree():
    return io.read_tree(DATA / "corner5_balanced.json")


@pytest.fixture
def edge4_tree():
    return io.read_tree(DATA / "edge4_unbalanced.json")


@st.composite
def trees(draw, max_depth=6, max_splits=25):
    """Trees grown by splitting leaves picked by hypothesis."""
    picks = draw(st.lists(st.integers(0, 10**9), max_size=max_splits))
    tree = make_root_tree()
    for p in picks:
        room = np.flatnonzero(tree.level < max_depth)
        if len(room) == 0:
            break
        i = int(room[p % len(room)])
        tree = Quadtree.from_internal(np.append(tree.internal, tree.codes[i]))
    return tree


# --- acceptance summary ------------------------------------------------------

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        verdict = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
