"""Exhaustive generation of unlabeled trees.

Rooted trees on a fixed vertex count are produced as canonical level
sequences (root first, depth-first order, children sorted so the
sequence is lexicographically maximal).  Free trees are obtained by
deduplicating rooted ones on a centered canonical code.  The counting
functions use the classical rooted-tree convolution and the even/odd
center correction, so generated families can be cross-checked against
closed-form counts.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import ShapeMismatch
from .trees import Tree

__all__ = [
    "level_sequences",
    "tree_from_level_sequence",
    "enumerate_free_trees",
    "count_rooted_trees",
    "count_free_trees",
]


def level_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Canonical level sequences of all rooted trees on n vertices.

    Emitted in decreasing lexicographic order, starting at the path
    (1, 2, ..., n) and ending at the star (1, 2, 2, ..., 2).  Each
    rooted tree appears exactly once.
    """

    if n < 1:
        return
    seq = list(range(1, n + 1))
    while True:
        yield tuple(seq)
        p = next((i for i in range(n - 1, -1, -1) if seq[i] > 2), None)
        if p is None:
            return
        q = next(i for i in range(p - 1, -1, -1) if seq[i] == seq[p] - 1)
        shift = p - q
        for i in range(p, n):
            seq[i] = seq[i - shift]


def tree_from_level_sequence(seq: tuple[int, ...]) -> Tree:
    """Tree whose vertex i sits at depth seq[i] - 1, parents by last sight.

    Vertex ids follow the sequence positions, so the root is 0 and each
    vertex's parent is the most recent earlier vertex one level up.
    """

    n = len(seq)
    if n == 0 or seq[0] != 1:
        raise ShapeMismatch("level sequence must start with 1")
    edges = []
    last_at = {1: 0}
    for i in range(1, n):
        lvl = seq[i]
        if lvl < 2 or lvl > seq[i - 1] + 1:
            raise ShapeMismatch(f"level {lvl} cannot follow level {seq[i - 1]}")
        edges.append((last_at[lvl - 1], i))
        last_at[lvl] = i
    return Tree(edges, n)


def enumerate_free_trees(m: int) -> Iterator[Tree]:
    """All unlabeled trees with m edges, one representative per shape.

    Rooted level sequences on m + 1 vertices are generated and
    deduplicated on the canonical code, so the yield order is the order
    of first appearance and is fully deterministic.
    """

    if m < 0:
        raise ShapeMismatch("edge count must be nonnegative")
    seen: set[str] = set()
    for seq in level_sequences(m + 1):
        tree = tree_from_level_sequence(seq)
        code = tree.canonical_code()
        if code not in seen:
            seen.add(code)
            yield tree


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


@lru_cache(maxsize=None)
def count_rooted_trees(n: int) -> int:
    """Number of unlabeled rooted trees on n vertices."""

    if n < 0:
        raise ShapeMismatch("vertex count must be nonnegative")
    if n <= 1:
        return n
    total = 0
    for k in range(1, n):
        s = sum(d * count_rooted_trees(d) for d in _divisors(k))
        total += s * count_rooted_trees(n - k)
    assert total % (n - 1) == 0
    return total // (n - 1)


def count_free_trees(m: int) -> int:
    """Number of unlabeled trees with m edges.

    The rooted count minus the dissimilarity correction: each free tree
    is counted once per vertex orbit when rooted, and the identity
    reduces that to one via the pairing of rooted trees along edges.
    """

    if m < 0:
        raise ShapeMismatch("edge count must be nonnegative")
    n = m + 1
    total = count_rooted_trees(n)
    pairs = sum(count_rooted_trees(i) * count_rooted_trees(n - i) for i in range(1, n))
    correction = count_rooted_trees(n // 2) if n % 2 == 0 else 0
    return total - (pairs - correction) // 2
