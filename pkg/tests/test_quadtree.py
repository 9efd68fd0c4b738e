from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtcolor import (RandomCfg, balance, enumerate_trees, from_leaves,
                     generate_random, is_balanced, make_root_tree, split_leaf)
from qtcolor.errors import (BudgetExceeded, KeyRangeError, NotALeaf,
                            PartitionError)
from qtcolor.quadtree import (Quadtree, SquareKey, code_to_key, decode, encode,
                              key_to_code, node_draw, node_draws)

from conftest import trees
from oracles import (count_quadtrees, naive_balance, naive_is_balanced,
                     trees_by_splitting)


def test_root_tree():
    t = make_root_tree()
    assert t.leaves == ((0, 0, 0),)
    assert t.depth == 0
    assert from_leaves(t.leaves) == t


@given(st.integers(0, 12).flatmap(
    lambda lv: st.tuples(st.just(lv), st.integers(0, 2**lv - 1),
                         st.integers(0, 2**lv - 1))))
def test_code_round_trip(key):
    c = key_to_code(key)
    assert code_to_key(c) == key
    lv, x, y = decode(np.array([c]))
    assert (lv[0], x[0], y[0]) == key
    assert encode(lv, x, y)[0] == c


def test_code_order_is_canonical_order():
    keys = sorted({(lv, x, y) for lv in range(4) for x in range(2**lv)
                   for y in range(2**lv)})
    codes = [key_to_code(k) for k in keys]
    assert codes == sorted(codes)


def test_from_leaves_one_split(depth1):
    assert depth1.depth == 1
    assert len(depth1) == 4


def test_from_leaves_missing_quadrant():
    with pytest.raises(PartitionError) as exc:
        from_leaves([(1, 0, 0), (1, 1, 0), (1, 0, 1)])
    assert exc.value.witness == (1, 1, 1)


def test_from_leaves_overlap():
    with pytest.raises(PartitionError) as exc:
        from_leaves([(0, 0, 0), (1, 0, 0)])
    assert exc.value.witness == ((0, 0, 0), (1, 0, 0))


@pytest.mark.parametrize("key", [(1, 2, 0), (1, 0, -1), (-1, 0, 0), (31, 0, 0)])
def test_from_leaves_key_range(key):
    with pytest.raises(KeyRangeError):
        from_leaves([key])


def test_from_leaves_duplicate():
    with pytest.raises(PartitionError):
        from_leaves([(0, 0, 0), (0, 0, 0)])


def test_split_leaf(depth1, t3):
    assert split_leaf(make_root_tree(), (0, 0, 0)) == depth1
    assert len(t3) == 7
    assert set(t3.leaves) == {(1, 0, 0), (1, 1, 0), (1, 0, 1),
                              (2, 2, 2), (2, 3, 2), (2, 2, 3), (2, 3, 3)}
    once = split_leaf(depth1, (1, 0, 0))
    with pytest.raises(NotALeaf):
        split_leaf(once, (1, 0, 0))


@given(trees())
def test_tree_is_exact_partition(tree):
    again = from_leaves(tree.leaves)
    assert again == tree
    assert np.array_equal(again.internal, tree.internal)


@given(trees(), st.integers(0, 10**6))
def test_split_adds_three_leaves(tree, pick):
    leaf = tree.leaves[pick % len(tree)]
    if leaf.level >= 8:
        return
    u = split_leaf(tree, leaf)
    assert len(u) == len(tree) + 3
    from_leaves(u.leaves)


def test_is_balanced_examples(depth1, t3, t3_unbalanced):
    assert is_balanced(depth1)
    assert is_balanced(t3)
    assert not is_balanced(t3_unbalanced)
    assert naive_is_balanced(t3) and not naive_is_balanced(t3_unbalanced)


@settings(max_examples=60)
@given(trees(max_depth=5, max_splits=15))
def test_is_balanced_matches_pairwise(tree):
    assert is_balanced(tree) == naive_is_balanced(tree)


def test_balance_examples(depth1, t3_unbalanced):
    assert balance(depth1) == depth1
    assert balance(make_root_tree()) == make_root_tree()
    b = balance(t3_unbalanced)
    assert is_balanced(b)
    for leaf in t3_unbalanced.leaves:
        assert leaf in b or b.is_internal(leaf)
    assert b == naive_balance(t3_unbalanced)


@settings(max_examples=40, deadline=None)
@given(trees(max_depth=5, max_splits=12))
def test_balance_is_minimal_and_idempotent(tree):
    b = balance(tree)
    assert is_balanced(b)
    assert balance(b) == b
    assert set(tree.internal.tolist()) <= set(b.internal.tolist())
    assert b == naive_balance(tree)


def test_node_draws_match_scalar_reference():
    codes = np.array([0, 1, 5, 12345, 2**40 + 7], dtype=np.int64)
    for seed in (0, 1, 2**64 - 1, 0xDEADBEEF):
        got = node_draws(seed, codes).tolist()
        assert got == [node_draw(seed, int(c)) for c in codes]


def test_node_draw_known_value():
    # SplitMix64 started from state 0 first outputs 0xE220A8397B1DCDAF
    assert node_draw(0, 0) == 0xE220A8397B1DCDAF
    assert node_draw((-0x9E3779B97F4A7C15) % 2**64, 0) == 0


def test_generate_random_edges():
    assert generate_random(RandomCfg(5, 4, Fraction(0))) == make_root_tree()
    full = generate_random(RandomCfg(5, 2, Fraction(1)))
    assert len(full) == 16 and set(full.level.tolist()) == {2}


@given(st.integers(0, 2**64 - 1), st.integers(1, 6),
       st.sampled_from(["1/3", "1/2", "3/4"]))
@settings(max_examples=30, deadline=None)
def test_generate_random_balanced_and_reproducible(seed, depth, p):
    cfg = RandomCfg(seed, depth, p, balanced=True)
    t = generate_random(cfg)
    assert is_balanced(t)
    assert generate_random(cfg).codes.tobytes() == t.codes.tobytes()
    raw = generate_random(RandomCfg(seed, depth, p))
    assert raw.depth <= depth and t.depth == raw.depth


def test_random_cfg_validation():
    with pytest.raises(ValueError):
        RandomCfg(0, 3, Fraction(3, 2))
    with pytest.raises(ValueError):
        RandomCfg(-1, 3)
    with pytest.raises(ValueError):
        RandomCfg(0, 0)


@pytest.mark.parametrize("k,count", [(0, 1), (1, 2), (2, 6)])
def test_enumerate_small(k, count):
    assert len(list(enumerate_trees(k))) == count


def test_enumerate_matches_split_closure():
    got = list(enumerate_trees(4))
    assert len(got) == count_quadtrees(4)
    assert {t.leaves for t in got} == set(trees_by_splitting(4))
    keys = [t.leaves for t in got]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumerate_count_six_splits():
    got = list(enumerate_trees(6))
    assert len(got) == count_quadtrees(6) == 8221
    assert len({t.codes.tobytes() for t in got}) == len(got)


def test_enumerate_cap():
    with pytest.raises(BudgetExceeded):
        list(enumerate_trees(5, cap=100))


def test_locate(t3):
    # cell (2,1,3) sits inside leaf (1,0,1); cell (1,1,1) is subdivided
    j = t3.locate([2, 1, 2], [1, 1, 2], [3, 1, 2])
    assert t3.leaves[j[0]] == (1, 0, 1)
    assert j[1] == -1
    assert t3.leaves[j[2]] == (2, 2, 2)
