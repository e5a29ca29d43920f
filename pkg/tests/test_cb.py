"""Double stars: the subtree-pair criterion and the small-part lemma."""

import itertools

import pytest
from hypothesis import given, settings

import oracles
from helpers import all_trees, caterpillar, path, random_trees, spider, star
from tree_amity import (
    EdgeBijection,
    ShapeMismatch,
    SizeMismatch,
    SubtreePair,
    TooSmall,
    Tree,
    bijection_from_pair,
    check_friendly_bijection,
    connected_edge_sets_containing,
    find_subtree_pair,
    is_connected_edge_set,
    is_friendly_to_cb,
    make_cb,
    small_n_pair,
)


# -- the double star shape ---------------------------------------------------------


def test_make_cb_shapes():
    cb = make_cb(5, 3)
    t = cb.tree
    assert t.m == 7
    assert t.degrees[cb.c1] == 5
    assert t.degrees[cb.c2] == 3
    assert t.edges[0] == (0, 1)
    assert make_cb(1, 1).tree.m == 1
    assert make_cb(2, 1).tree.canonical_code() == path(2).canonical_code()


def test_make_cb_rejects_empty_sides():
    with pytest.raises(ShapeMismatch):
        make_cb(0, 3)
    with pytest.raises(ShapeMismatch):
        make_cb(1, 0)


def test_double_star_leaf_blocks():
    cb = make_cb(4, 2)
    t = cb.tree
    assert t.m == 5
    # edges 1..n1-1 hang off the first center, the rest off the second
    for e in range(1, 4):
        assert cb.c1 in t.edges[e]
    assert cb.c2 in t.edges[4]


# -- connected edge sets -----------------------------------------------------------


def test_is_connected_edge_set_examples():
    t = path(5)
    assert is_connected_edge_set(t, {0, 1, 2})
    assert not is_connected_edge_set(t, {0, 2})
    assert is_connected_edge_set(t, {3})
    assert is_connected_edge_set(t, set())
    s = star(5)
    assert is_connected_edge_set(s, {0, 3, 4})


def _connected_by_union_find(tree, eids):
    """Second opinion: the edges form a connected subgraph."""
    eids = list(eids)
    if len(eids) <= 1:
        return True
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in eids:
        u, v = tree.edges[e]
        parent[find(u)] = find(v)
    roots = {find(tree.edges[e][0]) for e in eids}
    return len(roots) == 1


@settings(max_examples=80)
@given(random_trees(min_vertices=3, max_vertices=8))
def test_connected_edge_sets_match_brute_force(t):
    for size in range(1, min(t.m, 4) + 1):
        for anchor in range(min(t.m, 3)):
            got = set(connected_edge_sets_containing(t, anchor, size))
            want = {
                frozenset(combo)
                for combo in itertools.combinations(range(t.m), size)
                if anchor in combo and _connected_by_union_find(t, combo)
            }
            assert got == want


def test_is_connected_matches_union_find_exhaustively():
    t = caterpillar(3, {1: 2})
    for size in range(t.m + 1):
        for combo in itertools.combinations(range(t.m), size):
            assert is_connected_edge_set(t, set(combo)) == _connected_by_union_find(
                t, combo
            )


# -- subtree pairs -----------------------------------------------------------------


def test_build_validates_the_pair():
    t = path(4)
    pair = SubtreePair.build(t, frozenset({0, 1}), frozenset({1, 2, 3}))
    assert pair.shared == 1
    with pytest.raises(ShapeMismatch):
        SubtreePair.build(t, frozenset({0, 1}), frozenset({2, 3}))
    with pytest.raises(ShapeMismatch):
        SubtreePair.build(t, frozenset({0, 1, 2}), frozenset({1, 2, 3}))
    with pytest.raises(ShapeMismatch):
        SubtreePair.build(t, frozenset({0, 1}), frozenset({1, 3}))


def test_find_subtree_pair_examples():
    assert find_subtree_pair(star(3), 2, 2) is not None
    assert find_subtree_pair(path(7), 4, 4) is not None
    assert find_subtree_pair(spider(3, 3, 3), 5, 5) is None
    with pytest.raises(SizeMismatch):
        find_subtree_pair(path(4), 2, 2)


def test_found_pairs_are_valid_and_deterministic():
    for m in range(1, 7):
        for t in all_trees(m):
            for n1 in range(1, m + 1):
                n2 = m + 1 - n1
                pair = find_subtree_pair(t, n1, n2)
                again = find_subtree_pair(t, n1, n2)
                assert (pair is None) == (again is None)
                if pair is None:
                    continue
                assert (pair.e1, pair.e2, pair.shared) == (
                    again.e1,
                    again.e2,
                    again.shared,
                )
                assert len(pair.e1) == n1 and len(pair.e2) == n2
                assert pair.e1 & pair.e2 == {pair.shared}
                assert pair.e1 | pair.e2 == set(range(m))
                assert is_connected_edge_set(t, pair.e1)
                assert is_connected_edge_set(t, pair.e2)


def test_criterion_bijections_are_friendly_small():
    for m in range(1, 7):
        for t in all_trees(m):
            for n1 in range(1, m + 1):
                n2 = m + 1 - n1
                pair = find_subtree_pair(t, n1, n2)
                assert (pair is not None) == is_friendly_to_cb(t, n1, n2)
                if pair is None:
                    continue
                b = bijection_from_pair(t, pair, make_cb(n1, n2))
                assert check_friendly_bijection(b) is None, (t.edges, n1, n2)


def test_bijection_from_pair_checks_sizes():
    t = path(4)
    pair = find_subtree_pair(t, 3, 2)
    with pytest.raises(SizeMismatch):
        bijection_from_pair(t, pair, make_cb(2, 3))


def test_friendly_bijections_from_double_stars_have_connected_parts():
    """Whenever a double star maps friendlily onto a tree, the images of
    the two center coboundaries are connected edge sets sharing one edge.
    Checked exhaustively for all shapes with up to five edges."""

    for m in range(2, 6):
        targets = all_trees(m)
        for n1 in range(1, m + 1):
            n2 = m + 1 - n1
            if n1 < n2:
                continue
            cb = make_cb(n1, n2)
            for t in targets:
                for perm in itertools.permutations(range(m)):
                    b = EdgeBijection(cb.tree, t, perm)
                    if check_friendly_bijection(b) is not None:
                        continue
                    e1 = b.image_set(cb.tree.coboundary(cb.c1))
                    e2 = b.image_set(cb.tree.coboundary(cb.c2))
                    assert len(e1 & e2) == 1
                    assert is_connected_edge_set(t, e1)
                    assert is_connected_edge_set(t, e2)


# -- the small part lemma ------------------------------------------------------------


def test_small_n_pair_guards():
    with pytest.raises(ShapeMismatch):
        small_n_pair(path(6), 5)
    with pytest.raises(TooSmall):
        small_n_pair(path(2), 3)


def test_small_n_pair_on_paths():
    t = path(6)
    for n in (2, 3, 4):
        pair = small_n_pair(t, n)
        assert len(pair.e2) == n
        assert len(pair.e1) == t.m - n + 1


def test_small_n_pair_structure_everywhere_small():
    for m in range(2, 9):
        for t in all_trees(m):
            for n in (2, 3, 4):
                if m < n:
                    continue
                pair = small_n_pair(t, n)
                assert len(pair.e2) == n
                assert pair.e1 & pair.e2 == {pair.shared}
                assert pair.e1 | pair.e2 == set(range(t.m))
                assert is_connected_edge_set(t, pair.e1)
                assert is_connected_edge_set(t, pair.e2)
                cb = make_cb(t.m - n + 1, n)
                b = bijection_from_pair(t, pair, cb)
                assert check_friendly_bijection(b) is None, (t.edges, n)


def test_small_n_pair_trace_on_a_path():
    # on a path the far vertex is the high end, so the small part sits there
    t = path(5)
    pair = small_n_pair(t, 3)
    assert pair.e2 == frozenset({2, 3, 4})
    assert pair.e1 == frozenset({0, 1, 2})
    assert pair.shared == 2
