"""Friendliness checkers for edge numberings and edge bijections.

An edge set q *is hooked by* an edge set p (p "hooks onto" q) unless
the two sets are disjoint and every path between two distinct edges of
p crosses q an even number of times.  Two edge sets are *unlinked* when
neither hooks onto the other; the relation is not symmetric before
taking both directions, so both are always checked.

A bijection between the edge sets of two trees is *friendly* when for
every pair of distinct source vertices P and Q at even distance the
images of their coboundaries are unlinked in the target tree.  Vertex
pairs at odd distance and the degenerate P = Q pair carry no condition.

A numbering of the m edges of a tree by 1..m is *friendly* when for
every k < m the numbers found on the path between edges k and k+1 can
be split into adjacent pairs aligned with k: the partner of a number j
on that path is j+1 when j and k share parity and j-1 otherwise, and
the partner must also lie on the path.  A partner outside 1..m counts
as absent.  Such a k is called self-standing.

The two notions meet on the simple path: numbering the edges of a tree
is the same thing as choosing a bijection from an equally long path
onto the tree, and the numbering is friendly exactly when that
bijection is friendly.  ``numbering_to_path_bijection`` builds the
bijection; the equivalence itself is exercised by the test suite.

Checkers return None for success or a frozen violation record whose
``replay`` method reproduces the failure from scratch.  Scan order is
deterministic: numberings by k then by number on the path, bijections
by vertex id pairs, then the hooking direction of the coboundary image
of the smaller vertex first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    InvalidBijection,
    InvalidNumbering,
    MalformedLine,
    SizeMismatch,
)
from .trees import Tree, _iter_bits


class Numbering:
    """A bijection from the edges of one tree onto 1..m."""

    __slots__ = ("tree", "numbers", "_edge_of")

    def __init__(self, tree: Tree, numbers: Iterable[int]):
        nums = tuple(int(x) for x in numbers)
        if sorted(nums) != list(range(1, tree.m + 1)):
            raise InvalidNumbering(
                f"numbers must be a bijection onto 1..{tree.m}, got {nums}"
            )
        self.tree = tree
        self.numbers = nums
        edge_of = [0] * (tree.m + 1)
        for eid, k in enumerate(nums):
            edge_of[k] = eid
        self._edge_of = tuple(edge_of)

    @classmethod
    def from_mapping(cls, tree: Tree, mapping: Mapping[int, int]) -> "Numbering":
        return cls(tree, [mapping[eid] for eid in range(tree.m)])

    def number_of(self, eid: int) -> int:
        return self.numbers[eid]

    def edge_of(self, number: int) -> int:
        if not 1 <= number <= self.tree.m:
            raise InvalidNumbering(f"number {number} outside 1..{self.tree.m}")
        return self._edge_of[number]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Numbering)
            and self.tree.edges == other.tree.edges
            and self.numbers == other.numbers
        )

    def __hash__(self) -> int:
        return hash((self.tree.edges, self.numbers))

    def __repr__(self) -> str:  # pragma: no cover
        return f"Numbering({self.numbers})"


class EdgeBijection:
    """A bijection from the edges of ``source`` onto the edges of ``target``."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: Tree, target: Tree, mapping: Iterable[int]):
        if source.m != target.m:
            raise SizeMismatch(
                f"edge counts differ: {source.m} versus {target.m}"
            )
        mp = tuple(int(x) for x in mapping)
        if sorted(mp) != list(range(target.m)):
            raise InvalidBijection(f"mapping is not a bijection: {mp}")
        self.source = source
        self.target = target
        self.mapping = mp

    def image(self, eid: int) -> int:
        return self.mapping[eid]

    def image_set(self, eids: Iterable[int]) -> frozenset[int]:
        return frozenset(self.mapping[e] for e in eids)

    def __repr__(self) -> str:  # pragma: no cover
        return f"EdgeBijection({self.mapping})"


def invert_bijection(b: EdgeBijection) -> EdgeBijection:
    inverse = [0] * b.target.m
    for src, dst in enumerate(b.mapping):
        inverse[dst] = src
    return EdgeBijection(b.target, b.source, inverse)


# -- violations ------------------------------------------------------------


@dataclass(frozen=True)
class NumberingPairViolation:
    """Number j sits on the path between edges k and k+1 without its partner.

    The missing partner belongs to the pair (k+2s, k+2s+1); partners
    outside 1..m are absent by definition.
    """

    k: int
    j: int
    s: int
    path_edges: tuple[int, ...]
    path_numbers: tuple[int, ...]

    kind = "NumberingPairViolation"

    def partner(self) -> int:
        return self.j + 1 if (self.j - self.k) % 2 == 0 else self.j - 1

    def replay(self, nu: "Numbering") -> bool:
        """Recompute the slice from scratch and confirm the failure."""
        t = nu.tree
        path = t.path_between_edges(nu.edge_of(self.k), nu.edge_of(self.k + 1))
        if path != frozenset(self.path_edges):
            return False
        numbers = {nu.number_of(e) for e in path}
        partner = self.partner()
        return self.j in numbers and (
            partner < 1 or partner > t.m or partner not in numbers
        )


@dataclass(frozen=True)
class HookViolation:
    """Coboundary images of an even-distance vertex pair are not unlinked.

    ``hooking`` names which image hooks onto the other: "p" for the
    smaller vertex's image, "q" for the larger's.  ``edge_pair`` are two
    edges of the hooking image whose path crosses the other image an odd
    number of times (``crossing``), all in target-tree edge ids.
    """

    p_vertex: int
    q_vertex: int
    hooking: str
    edge_pair: tuple[int, int]
    crossing: int

    kind = "HookViolation"

    def replay(self, b: "EdgeBijection") -> bool:
        """Recompute the failing pair from scratch and confirm it."""
        g1, g2 = b.source, b.target
        d = g1.distance(self.p_vertex, self.q_vertex)
        if d < 2 or d % 2:
            return False
        p_img = b.image_set(g1.coboundary(self.p_vertex))
        q_img = b.image_set(g1.coboundary(self.q_vertex))
        hooking, other = (p_img, q_img) if self.hooking == "p" else (q_img, p_img)
        a, c = self.edge_pair
        if a not in hooking or c not in hooking:
            return False
        crossing = len(g2.path_between_edges(a, c) & other)
        return crossing % 2 == 1 and crossing == self.crossing


Violation = NumberingPairViolation | HookViolation


# -- hooking predicates ------------------------------------------------------


def _hook_pair(
    tree: Tree, p_sorted: list[int], q_mask: int
) -> tuple[int, int, int] | None:
    """First pair of p edges whose path crosses q oddly, or None."""
    for i, a in enumerate(p_sorted):
        for b in p_sorted[i + 1 :]:
            crossing = (tree.edge_path_mask(a, b) & q_mask).bit_count()
            if crossing % 2:
                return (a, b, crossing)
    return None


def does_not_hook(tree: Tree, p: Iterable[int], q: Iterable[int]) -> bool:
    """True when p does not hook onto q inside the given tree.

    Empty or singleton p never hooks onto a disjoint q: there is no
    pair of distinct edges to produce a path.
    """
    ps = frozenset(p)
    qs = frozenset(q)
    if ps & qs:
        return False
    q_mask = 0
    for e in qs:
        q_mask |= 1 << e
    return _hook_pair(tree, sorted(ps), q_mask) is None


def unlinked(tree: Tree, p: Iterable[int], q: Iterable[int]) -> bool:
    """True when neither edge set hooks onto the other."""
    ps = frozenset(p)
    qs = frozenset(q)
    return does_not_hook(tree, ps, qs) and does_not_hook(tree, qs, ps)


# -- numbering check ---------------------------------------------------------


def _pair_offset(k: int, j: int) -> int:
    return (j - k) // 2 if (j - k) % 2 == 0 else (j - k - 1) // 2


def _slice_violation(nu: Numbering, k: int) -> NumberingPairViolation | None:
    t = nu.tree
    mask = t.edge_path_mask(nu.edge_of(k), nu.edge_of(k + 1))
    path_edges = tuple(sorted(_iter_bits(mask)))
    numbers = sorted(nu.number_of(e) for e in path_edges)
    present = set(numbers)
    for j in numbers:
        partner = j + 1 if (j - k) % 2 == 0 else j - 1
        if partner not in present:
            return NumberingPairViolation(
                k=k,
                j=j,
                s=_pair_offset(k, j),
                path_edges=path_edges,
                path_numbers=tuple(numbers),
            )
    return None


def check_friendly_numbering(nu: Numbering) -> NumberingPairViolation | None:
    """None when the numbering is friendly, else the first violation."""
    for k in range(1, nu.tree.m):
        violation = _slice_violation(nu, k)
        if violation is not None:
            return violation
    return None


def is_self_standing(nu: Numbering, k: int) -> bool:
    """Single-k slice of the friendliness check."""
    if not 1 <= k <= nu.tree.m - 1:
        raise InvalidNumbering(f"k must lie in 1..{nu.tree.m - 1}, got {k}")
    return _slice_violation(nu, k) is None


# -- bijection check ---------------------------------------------------------


def check_friendly_bijection(b: EdgeBijection) -> HookViolation | None:
    """None when the bijection is friendly, else the first violation.

    Vertices are scanned by id; for each even-distance pair the image
    of the smaller vertex's coboundary is tested as hooking side "p"
    first, then the other direction.
    """
    g1, g2 = b.source, b.target
    images: list[int | None] = [None] * g1.n

    def image_mask(v: int) -> int:
        got = images[v]
        if got is None:
            got = 0
            for e in g1.coboundary(v):
                got |= 1 << b.mapping[e]
            images[v] = got
        return got

    for p_v in range(g1.n):
        for q_v in range(p_v + 1, g1.n):
            d = g1.distance(p_v, q_v)
            if d < 2 or d % 2:
                continue
            p_mask = image_mask(p_v)
            q_mask = image_mask(q_v)
            p_edges = sorted(_iter_bits(p_mask))
            q_edges = sorted(_iter_bits(q_mask))
            hit = _hook_pair(g2, p_edges, q_mask)
            if hit is not None:
                return HookViolation(p_v, q_v, "p", (hit[0], hit[1]), hit[2])
            hit = _hook_pair(g2, q_edges, p_mask)
            if hit is not None:
                return HookViolation(p_v, q_v, "q", (hit[0], hit[1]), hit[2])
    return None


# -- numbering as a path bijection -------------------------------------------


def path_tree(m: int) -> Tree:
    """The simple path with m edges: vertices 0..m, edge i joins i and i+1."""
    return Tree([(i, i + 1) for i in range(m)], max(m + 1, 1))


def numbering_to_path_bijection(nu: Numbering) -> EdgeBijection:
    """Recast a numbering as a bijection from the simple path onto its tree.

    Path edge i carries number i+1 along the path, so it maps to the
    tree edge numbered i+1.
    """
    path = path_tree(nu.tree.m)
    return EdgeBijection(path, nu.tree, [nu.edge_of(i + 1) for i in range(nu.tree.m)])


# -- text formats -------------------------------------------------------------


def _clean_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _edge_index(tree: Tree, labels: tuple[int, ...] | None) -> dict[tuple[int, int], int]:
    if labels is None:
        labels = tuple(range(tree.n))
    table = {}
    for eid, (u, v) in enumerate(tree.edges):
        a, b = labels[u], labels[v]
        table[(a, b) if a < b else (b, a)] = eid
    return table


def parse_numbering(
    text: str, tree: Tree, labels: tuple[int, ...] | None = None
) -> Numbering:
    """Parse "u v k" lines against a tree parsed from the same label space."""
    table = _edge_index(tree, labels)
    numbers: dict[int, int] = {}
    for lineno, line in _clean_lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise MalformedLine(f"line {lineno}: expected 'u v k', got {line!r}")
        try:
            u, v, k = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise MalformedLine(f"line {lineno}: fields must be integers") from None
        eid = table.get((u, v) if u < v else (v, u))
        if eid is None:
            raise InvalidNumbering(f"line {lineno}: no edge between {u} and {v}")
        if eid in numbers:
            raise InvalidNumbering(f"line {lineno}: edge {u} {v} numbered twice")
        numbers[eid] = k
    if len(numbers) != tree.m:
        raise InvalidNumbering(
            f"numbering covers {len(numbers)} of {tree.m} edges"
        )
    return Numbering(tree, [numbers[eid] for eid in range(tree.m)])


def format_numbering(nu: Numbering, labels: tuple[int, ...] | None = None) -> str:
    if labels is None:
        labels = tuple(range(nu.tree.n))
    return "".join(
        f"{labels[u]} {labels[v]} {nu.numbers[eid]}\n"
        for eid, (u, v) in enumerate(nu.tree.edges)
    )


def parse_bijection(
    text: str,
    source: Tree,
    target: Tree,
    source_labels: tuple[int, ...] | None = None,
    target_labels: tuple[int, ...] | None = None,
) -> EdgeBijection:
    """Parse "u1 v1 -> u2 v2" lines between two labeled trees."""
    src_table = _edge_index(source, source_labels)
    dst_table = _edge_index(target, target_labels)
    mapping: dict[int, int] = {}
    for lineno, line in _clean_lines(text):
        halves = line.split("->")
        if len(halves) != 2:
            raise MalformedLine(f"line {lineno}: expected 'u1 v1 -> u2 v2'")
        try:
            u1, v1 = (int(x) for x in halves[0].split())
            u2, v2 = (int(x) for x in halves[1].split())
        except ValueError:
            raise MalformedLine(f"line {lineno}: malformed edge pair") from None
        src = src_table.get((u1, v1) if u1 < v1 else (v1, u1))
        dst = dst_table.get((u2, v2) if u2 < v2 else (v2, u2))
        if src is None:
            raise InvalidBijection(f"line {lineno}: no source edge {u1} {v1}")
        if dst is None:
            raise InvalidBijection(f"line {lineno}: no target edge {u2} {v2}")
        if src in mapping:
            raise InvalidBijection(f"line {lineno}: source edge {u1} {v1} mapped twice")
        mapping[src] = dst
    if len(mapping) != source.m:
        raise InvalidBijection(f"mapping covers {len(mapping)} of {source.m} edges")
    return EdgeBijection(source, target, [mapping[e] for e in range(source.m)])


def format_bijection(
    b: EdgeBijection,
    source_labels: tuple[int, ...] | None = None,
    target_labels: tuple[int, ...] | None = None,
) -> str:
    if source_labels is None:
        source_labels = tuple(range(b.source.n))
    if target_labels is None:
        target_labels = tuple(range(b.target.n))
    out = []
    for src, dst in enumerate(b.mapping):
        u1, v1 = b.source.edges[src]
        u2, v2 = b.target.edges[dst]
        out.append(
            f"{source_labels[u1]} {source_labels[v1]} -> "
            f"{target_labels[u2]} {target_labels[v2]}\n"
        )
    return "".join(out)
