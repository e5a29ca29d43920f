"""Shared tree builders and hypothesis strategies for the test suite."""

from __future__ import annotations

from functools import lru_cache

from hypothesis import strategies as st

import oracles
from tree_amity import Tree, enumerate_free_trees


def path(m: int) -> Tree:
    """Simple path with m edges."""
    return Tree([(i, i + 1) for i in range(m)], m + 1)


def star(leaves: int) -> Tree:
    """Vertex 0 joined to the given number of leaves."""
    return Tree([(0, i + 1) for i in range(leaves)], leaves + 1)


def spider(*legs: int) -> Tree:
    """Paths of the given lengths glued at vertex 0."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(edges, nxt)


def caterpillar(spine: int, hairs: dict[int, int]) -> Tree:
    """Path of `spine` edges plus hairs[v] extra leaves at spine vertex v."""
    edges = [(i, i + 1) for i in range(spine)]
    nxt = spine + 1
    for v in sorted(hairs):
        for _ in range(hairs[v]):
            edges.append((v, nxt))
            nxt += 1
    return Tree(edges, nxt)


def tri_y() -> Tree:
    """Three branched arms around a hub; nine edges.

    The smallest tree whose degree three vertices do not fit on any
    single path, so no trunk exists.
    """

    return Tree(
        [(0, 1), (1, 2), (1, 7), (0, 3), (3, 4), (3, 8), (0, 5), (5, 6), (5, 9)],
        10,
    )


def from_prufer(seq, n: int) -> Tree:
    return Tree(oracles.prufer_decode(list(seq), n), n)


@lru_cache(maxsize=None)
def all_trees(m: int) -> tuple[Tree, ...]:
    """All shapes with m edges, cached since the tests reuse them a lot."""
    return tuple(enumerate_free_trees(m))


def trees_up_to(max_edges: int, min_edges: int = 1):
    for m in range(min_edges, max_edges + 1):
        yield from all_trees(m)


@st.composite
def random_trees(draw, min_vertices: int = 1, max_vertices: int = 9) -> Tree:
    """Uniform random labeled trees via Pruefer sequences."""
    n = draw(st.integers(min_vertices, max_vertices))
    if n <= 2:
        return path(n - 1)
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return from_prufer(seq, n)


@st.composite
def numbered_trees(draw, min_vertices: int = 2, max_vertices: int = 8):
    """A random tree together with a random edge numbering."""
    tree = draw(random_trees(min_vertices, max_vertices))
    perm = draw(st.permutations(tuple(range(1, tree.m + 1))))
    return tree, tuple(perm)
