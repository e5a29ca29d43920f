"""Immutable finite trees with indexed edges.

Conventions used throughout the package:

* Vertices of a tree with n vertices are exactly 0..n-1.
* Edges are indexed 0..m-1 in construction order; m = n - 1.
* The *path between two distinct edges* e and f is the unique edge
  sequence joining their nearest endpoints and containing neither e
  nor f.  Adjacent edges have an empty path.  The path is computed by
  comparing the four endpoint-to-endpoint distances and walking the
  minimal pair; in a tree that minimum is attained by exactly one pair.
* The *coboundary* of a vertex is the set of edges incident to it.
* Pruning removes every leaf vertex together with its edge and
  renumbers the survivors densely, preserving relative order.

Edge sets are passed around as frozensets of edge ids.  Internally
several hot paths use integer bitmasks over edge ids; the mask helpers
are part of the public surface because the checkers and searches lean
on them.

Trees are immutable after construction.  All per-tree caches (distances,
edge paths, canonical code) are filled lazily and never invalidated.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    CycleDetected,
    Disconnected,
    DuplicateEdge,
    EqualEdges,
    MalformedLine,
    SelfLoop,
)


class Tree:
    """An unrooted tree on vertices 0..n-1 with edges indexed 0..m-1."""

    __slots__ = (
        "n",
        "m",
        "edges",
        "adj",
        "degrees",
        "_plain_adj",
        "_dist",
        "_parent_edge",
        "_parent_vertex",
        "_path_masks",
        "_cob_masks",
        "_code",
    )

    def __init__(self, edges: Iterable[tuple[int, int]], vertex_count: int | None = None):
        edge_list = [(int(u), int(v)) for u, v in edges]
        if vertex_count is None:
            vertex_count = max((max(u, v) for u, v in edge_list), default=-1) + 1
            if vertex_count == 0:
                vertex_count = 1
        n = int(vertex_count)
        if n < 1:
            raise MalformedLine("a tree needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        for u, v in edge_list:
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedLine(f"vertex id out of range in edge ({u}, {v})")
            if u == v:
                raise SelfLoop(f"edge ({u}, {v}) joins a vertex to itself")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge ({u}, {v}) repeats an earlier edge")
            seen.add(key)
        if len(edge_list) >= n:
            raise CycleDetected(f"{len(edge_list)} edges on {n} vertices form a cycle")
        # union-find, small and sufficient at this scale
        root = list(range(n))

        def find(x: int) -> int:
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        for u, v in edge_list:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CycleDetected(f"edge ({u}, {v}) closes a cycle")
            root[ru] = rv
        if len({find(x) for x in range(n)}) != 1:
            raise Disconnected(f"{len(edge_list)} edges leave {n} vertices disconnected")

        self.n = n
        self.m = len(edge_list)
        self.edges: tuple[tuple[int, int], ...] = tuple(edge_list)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edge_list):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        self.adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(a) for a in adj)
        self.degrees: tuple[int, ...] = tuple(len(a) for a in adj)
        self._plain_adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(w for w, _ in a) for a in adj
        )
        self._dist: list[tuple[int, ...] | None] = [None] * n
        self._parent_edge: list[tuple[int, ...] | None] = [None] * n
        self._parent_vertex: list[tuple[int, ...] | None] = [None] * n
        self._path_masks: dict[tuple[int, int], int] = {}
        self._cob_masks: tuple[int, ...] = tuple(
            sum(1 << eid for _, eid in a) for a in adj
        )
        self._code: str | None = None

    # -- basic queries ---------------------------------------------------

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._plain_adj[v]

    def _bfs(self, source: int) -> None:
        dist = [-1] * self.n
        pe = [-1] * self.n
        pv = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            for y, eid in self.adj[x]:
                if dist[y] < 0:
                    dist[y] = dx + 1
                    pe[y] = eid
                    pv[y] = x
                    queue.append(y)
        self._dist[source] = tuple(dist)
        self._parent_edge[source] = tuple(pe)
        self._parent_vertex[source] = tuple(pv)

    def distance(self, u: int, v: int) -> int:
        """Number of edges on the unique u-v path."""
        if self._dist[u] is None:
            self._bfs(u)
        return self._dist[u][v]  # type: ignore[index]

    def vertex_path(self, a: int, b: int) -> tuple[int, ...]:
        """Vertices of the unique a-b path, endpoints included."""
        if self._dist[a] is None:
            self._bfs(a)
        pv = self._parent_vertex[a]
        path = [b]
        while path[-1] != a:
            path.append(pv[path[-1]])  # type: ignore[index]
        path.reverse()
        return tuple(path)

    def edge_between(self, u: int, v: int) -> int | None:
        """Edge id joining u and v, or None when they are not adjacent."""
        for w, eid in self.adj[u]:
            if w == v:
                return eid
        return None

    def coboundary(self, v: int) -> frozenset[int]:
        """Edges incident to v."""
        return frozenset(eid for _, eid in self.adj[v])

    def coboundary_mask(self, v: int) -> int:
        return self._cob_masks[v]

    def leaf_vertices(self) -> frozenset[int]:
        """Vertices of degree one.  A single-vertex tree has none."""
        return frozenset(v for v in range(self.n) if self.degrees[v] == 1)

    def leaf_edges(self) -> frozenset[int]:
        """Edges with at least one endpoint of degree one."""
        return frozenset(
            eid
            for eid, (u, v) in enumerate(self.edges)
            if self.degrees[u] == 1 or self.degrees[v] == 1
        )

    def diameter(self) -> int:
        if self.n == 1:
            return 0
        if self._dist[0] is None:
            self._bfs(0)
        far = max(range(self.n), key=lambda v: self._dist[0][v])  # type: ignore[index]
        if self._dist[far] is None:
            self._bfs(far)
        return max(self._dist[far])  # type: ignore[arg-type]

    # -- edge paths ------------------------------------------------------

    def path_between_edges(self, e1: int, e2: int) -> frozenset[int]:
        """Edges strictly between e1 and e2; empty when they share a vertex."""
        mask = self.edge_path_mask(e1, e2)
        return frozenset(_iter_bits(mask))

    def edge_path_mask(self, e1: int, e2: int) -> int:
        if e1 == e2:
            raise EqualEdges(f"no path is defined between edge {e1} and itself")
        key = (e1, e2) if e1 < e2 else (e2, e1)
        cached = self._path_masks.get(key)
        if cached is not None:
            return cached
        a, b = self.edges[e1]
        c, d = self.edges[e2]
        best = None
        for x in (a, b):
            if self._dist[x] is None:
                self._bfs(x)
            dx = self._dist[x]
            for y in (c, d):
                dv = dx[y]  # type: ignore[index]
                if best is None or dv < best[0]:
                    best = (dv, x, y)
        _, x, y = best  # type: ignore[misc]
        pe = self._parent_edge[x]
        pv = self._parent_vertex[x]
        mask = 0
        cur = y
        while cur != x:
            mask |= 1 << pe[cur]  # type: ignore[index]
            cur = pv[cur]  # type: ignore[index]
        self._path_masks[key] = mask
        return mask

    # -- pruning ---------------------------------------------------------

    def prune_leaves(self) -> "PruneResult":
        """Drop all leaves at once; maps go from new ids to old ids.

        A single vertex prunes to itself with empty maps.  A single edge
        prunes to the one-vertex tree on its smaller-id endpoint.
        """
        if self.n == 1:
            return PruneResult(self, {}, {})
        if self.n == 2:
            return PruneResult(Tree([], 1), {}, {0: 0})
        keep = [v for v in range(self.n) if self.degrees[v] >= 2]
        new_id = {old: new for new, old in enumerate(keep)}
        new_edges = []
        edge_map = {}
        for eid, (u, v) in enumerate(self.edges):
            if u in new_id and v in new_id:
                edge_map[len(new_edges)] = eid
                new_edges.append((new_id[u], new_id[v]))
        pruned = Tree(new_edges, len(keep))
        return PruneResult(pruned, edge_map, {new: old for old, new in new_id.items()})

    # -- centers and equidistance -----------------------------------------

    def centers(self) -> tuple[int, ...]:
        """The one or two middle vertices found by repeated leaf stripping."""
        return tuple(tree_centers(self._plain_adj))

    def equidistant_center(self) -> tuple[int, int] | None:
        """Smallest-id vertex equally distant from every leaf, with that
        distance, or None.  The single-vertex tree reports (0, 0)."""
        if self.n == 1:
            return (0, 0)
        leaves = sorted(self.leaf_vertices())
        for v in range(self.n):
            dists = {self.distance(v, leaf) for leaf in leaves}
            if len(dists) == 1:
                return (v, dists.pop())
        return None

    # -- isomorphism -------------------------------------------------------

    def canonical_code(self) -> str:
        """A string equal for two trees exactly when they are isomorphic."""
        if self._code is None:
            self._code = canonical_code_of_adjacency(self._plain_adj)
        return self._code

    def __repr__(self) -> str:  # pragma: no cover
        return f"Tree(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class PruneResult:
    """Outcome of one leaf-pruning pass.

    edge_map and vertex_map send ids of the pruned tree back to ids of
    the original tree.
    """

    pruned: Tree
    edge_map: dict[int, int]
    vertex_map: dict[int, int]


def is_isomorphic(t1: Tree, t2: Tree) -> bool:
    return t1.canonical_code() == t2.canonical_code()


# -- canonical coding on raw adjacency -----------------------------------
#
# These work on plain neighbor lists so that enumeration and test oracles
# can canonicalize a shape without paying for Tree construction.


def tree_centers(adj) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            deg[v] = 0
            for w in adj[v]:
                if deg[w] > 0:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_code_of_adjacency(adj, root: int) -> str:
    """Nested-parentheses code of the tree rooted at root, children sorted."""
    n = len(adj)
    parent = [-1] * n
    order = [root]
    parent[root] = root
    for x in order:
        for y in adj[x]:
            if parent[y] < 0:
                parent[y] = x
                order.append(y)
    codes: list[str] = [""] * n
    for v in reversed(order):
        children = sorted(codes[w] for w in adj[v] if w != parent[v])
        codes[v] = "(" + "".join(children) + ")"
    return codes[root]


def canonical_code_of_adjacency(adj) -> str:
    """Minimum rooted code over the tree's centers.

    Isomorphic trees agree because an isomorphism maps centers onto
    centers, and a rooted code determines the rooted tree.
    """
    return min(rooted_code_of_adjacency(adj, c) for c in tree_centers(adj))


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- text format ---------------------------------------------------------


def parse_tree_labeled(text: str) -> tuple[Tree, tuple[int, ...]]:
    """Parse the edge-list format and keep the original vertex labels.

    Lines hold two nonnegative integers "u v"; '#' starts a comment and
    blank lines are skipped; a single "." denotes the one-vertex tree.
    Vertices are renumbered densely in order of first appearance; the
    returned tuple maps each dense id back to its input label.
    """
    edges: list[tuple[int, int]] = []
    labels: list[int] = []
    index: dict[int, int] = {}
    saw_dot = False

    def vertex(label: int) -> int:
        got = index.get(label)
        if got is None:
            got = len(labels)
            index[label] = got
            labels.append(label)
        return got

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == ".":
            saw_dot = True
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise MalformedLine(f"line {lineno}: vertex ids must be nonnegative")
        edges.append((vertex(u), vertex(v)))
    if saw_dot:
        if edges:
            raise MalformedLine("'.' may not be mixed with edge lines")
        return Tree([], 1), (0,)
    if not edges:
        raise MalformedLine("no edges and no '.' single-vertex marker")
    return Tree(edges, len(labels)), tuple(labels)


def parse_tree(text: str) -> Tree:
    """Parse the edge-list format, discarding the original labels."""
    tree, _ = parse_tree_labeled(text)
    return tree


def format_tree(tree: Tree, labels: tuple[int, ...] | None = None) -> str:
    """Inverse of parse_tree: edge lines in edge order, '.' when edgeless."""
    if tree.m == 0:
        return ".\n"
    name = (lambda v: labels[v]) if labels is not None else (lambda v: v)
    return "".join(f"{name(u)} {name(v)}\n" for u, v in tree.edges)
