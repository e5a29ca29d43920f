"""Independent reference implementations used only by the tests.

Everything here is written straight from the definitions and shares no
code with the package, so it can serve as a second opinion: breadth
first search distances and paths, a naive friendliness checker for
numberings and for bijections, Pruefer coding, a brute force
isomorphism test, and counting oracles for unlabeled trees.
"""

from __future__ import annotations

import itertools
from collections import deque


# -- plain graph helpers ------------------------------------------------------


def adjacency(edges, n):
    """Neighbor lists with edge ids, built from scratch."""
    adj = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(edges):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    return adj


def bfs_distances(adj, start):
    dist = [None] * len(adj)
    dist[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w, _ in adj[v]:
            if dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def vertex_path(adj, a, b):
    """Vertices of the unique a to b path, via BFS parent pointers."""
    parent = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for w, _ in adj[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def edges_between(edges, n, e1, e2):
    """Edge ids strictly between two distinct edges.

    The path joins the nearest pair of endpoints, so it contains
    neither e1 nor e2; adjacent edges give the empty set.
    """

    adj = adjacency(edges, n)
    best = None
    for a in edges[e1]:
        dist = bfs_distances(adj, a)
        for b in edges[e2]:
            if best is None or dist[b] < best[0]:
                best = (dist[b], a, b)
    _, a, b = best
    walk = vertex_path(adj, a, b)
    lookup = {}
    for eid, (u, v) in enumerate(edges):
        lookup[(u, v)] = eid
        lookup[(v, u)] = eid
    return {lookup[(walk[i], walk[i + 1])] for i in range(len(walk) - 1)}


# -- naive friendliness checks ------------------------------------------------


def check_numbering_naive(edges, n, numbers):
    """True when an edge numbering is friendly; direct transcription.

    ``numbers`` maps edge id to a value in 1..m.  For every consecutive
    pair of numbers k, k+1, every number j found strictly between the
    two edges must have its parity partner on the same path: j+1 when
    j and k agree mod 2, j-1 otherwise.
    """

    m = len(edges)
    edge_of = {numbers[e]: e for e in range(m)}
    for k in range(1, m):
        between = edges_between(edges, n, edge_of[k], edge_of[k + 1])
        present = {numbers[e] for e in between}
        for j in present:
            partner = j + 1 if (j - k) % 2 == 0 else j - 1
            if partner not in present:
                return False
    return True


def hooks_naive(edges, n, p_set, q_set):
    """True when the first set hooks onto the second.

    Hooking means the sets intersect, or some path between two edges of
    the first set crosses the second an odd number of times.
    """

    if p_set & q_set:
        return True
    for a, b in itertools.combinations(sorted(p_set), 2):
        if len(edges_between(edges, n, a, b) & q_set) % 2 == 1:
            return True
    return False


def check_bijection_naive(src_edges, src_n, dst_edges, dst_n, mapping):
    """True when an edge bijection is friendly; direct transcription.

    For every pair of source vertices at even distance at least two,
    the images of their incident edge sets must not hook onto each
    other in either direction.
    """

    adj = adjacency(src_edges, src_n)
    incident = [set() for _ in range(src_n)]
    for eid, (u, v) in enumerate(src_edges):
        incident[u].add(eid)
        incident[v].add(eid)
    for p in range(src_n):
        dist = bfs_distances(adj, p)
        for q in range(p + 1, src_n):
            if dist[q] < 2 or dist[q] % 2 == 1:
                continue
            p_img = {mapping[e] for e in incident[p]}
            q_img = {mapping[e] for e in incident[q]}
            if hooks_naive(dst_edges, dst_n, p_img, q_img):
                return False
            if hooks_naive(dst_edges, dst_n, q_img, p_img):
                return False
    return True


# -- Pruefer coding -----------------------------------------------------------


def prufer_decode(seq, n):
    """Labeled tree on vertices 0..n-1 from a Pruefer sequence."""
    if n <= 1:
        return []
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for v in seq:
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


# -- unlabeled tree counting --------------------------------------------------


def _intern(table, key):
    got = table.get(key)
    if got is None:
        got = len(table)
        table[key] = got
    return got


def shape_key(plain_adj, n, table):
    """Interned integer naming the isomorphism class of a tree.

    Peels leaf layers to the center, building bottom up subtree codes;
    bicentral trees take the smaller of the two center rooted codes.
    Two trees get the same key exactly when they are isomorphic,
    because a rooted code determines the whole rooted tree.
    """

    if n == 1:
        return _intern(table, ())
    deg = [len(a) for a in plain_adj]
    kids = [[] for _ in range(n)]
    code = [0] * n
    dead = [False] * n
    layer = [v for v in range(n) if deg[v] == 1]
    alive = n
    while alive > 2:
        nxt = []
        for v in layer:
            dead[v] = True
            code[v] = _intern(table, tuple(sorted(kids[v])))
            for w in plain_adj[v]:
                if not dead[w]:
                    kids[w].append(code[v])
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        alive -= len(layer)
        layer = nxt
    centers = [v for v in range(n) if not dead[v]]
    if len(centers) == 1:
        c = centers[0]
        return _intern(table, tuple(sorted(kids[c])))
    c1, c2 = centers
    inner1 = _intern(table, tuple(sorted(kids[c1])))
    inner2 = _intern(table, tuple(sorted(kids[c2])))
    r1 = _intern(table, tuple(sorted(kids[c1] + [inner2])))
    r2 = _intern(table, tuple(sorted(kids[c2] + [inner1])))
    return min(r1, r2)


def count_trees_prufer_dedup(m):
    """Unlabeled trees with m edges, by decoding every Pruefer sequence."""
    n = m + 1
    if n <= 2:
        return 1
    table: dict = {}
    seen = set()
    rng = range(n)
    for seq in itertools.product(rng, repeat=n - 2):
        edges = prufer_decode(seq, n)
        plain = [[] for _ in rng]
        for u, v in edges:
            plain[u].append(v)
            plain[v].append(u)
        seen.add(shape_key(plain, n, table))
    return len(seen)


def rooted_tree_counts(limit):
    """r[k] = rooted unlabeled trees on k vertices, 0 <= k <= limit."""
    r = [0] * (limit + 1)
    if limit >= 1:
        r[1] = 1
    for k in range(2, limit + 1):
        total = 0
        for j in range(1, k):
            s = sum(d * r[d] for d in range(1, j + 1) if j % d == 0)
            total += s * r[k - j]
        r[k] = total // (k - 1)
    return r


def free_tree_count(m):
    """Unlabeled free trees with m edges, by the dissimilarity identity."""
    n = m + 1
    if n <= 2:
        return 1
    r = rooted_tree_counts(n)
    ordered = sum(r[i] * r[n - i] for i in range(1, n))
    if n % 2 == 0:
        ordered -= r[n // 2]
    assert ordered % 2 == 0
    return r[n] - ordered // 2


# -- miscellaneous predicates -------------------------------------------------


def isomorphic_brute(edges1, n1, edges2, n2):
    """Isomorphism by trying every vertex permutation.  Keep n small."""
    if n1 != n2 or len(edges1) != len(edges2):
        return False
    want = {frozenset(e) for e in edges2}
    for perm in itertools.permutations(range(n1)):
        if {frozenset((perm[u], perm[v])) for u, v in edges1} == want:
            return True
    return False


def heavy_on_one_path(edges, n):
    """True when all vertices of degree three or more share one path."""
    adj = adjacency(edges, n)
    heavy = [v for v in range(n) if len(adj[v]) >= 3]
    if len(heavy) <= 1:
        return True
    for a, b in itertools.combinations(range(n), 2):
        on = set(vertex_path(adj, a, b))
        if all(h in on for h in heavy):
            return True
    return False


def equidistant_vertices(edges, n):
    """All (vertex, radius) pairs equally far from every leaf."""
    if n == 1:
        return [(0, 0)]
    adj = adjacency(edges, n)
    leaves = [v for v in range(n) if len(adj[v]) == 1]
    out = []
    for v in range(n):
        dist = bfs_distances(adj, v)
        spread = {dist[w] for w in leaves}
        if len(spread) == 1:
            out.append((v, spread.pop()))
    return out
