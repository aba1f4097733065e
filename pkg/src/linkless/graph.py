"""Immutable small-graph value type on vertex bitsets.

A graph lives on labeled vertices 0..n-1 with n <= 32, so every neighbor
set fits in one machine word and set operations are branch-free integer
arithmetic.  All operations return new graphs; instances are safe to share
across threads and processes.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapacityExceeded,
    NotAClique,
    NotAForest,
    NotAnEdge,
)

MAX_VERTICES = 32

Edge = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph; adj[i] is the neighbor bitset of vertex i."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 1 <= n <= MAX_VERTICES:
            raise CapacityExceeded(f"vertex count {n} outside 1..{MAX_VERTICES}")
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError(f"adjacency has {len(adj)} rows for n={n}")
        full = (1 << n) - 1
        for i, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"row {i} has bits >= n")
            if row >> i & 1:
                raise ValueError(f"loop at vertex {i}")
        for i, row in enumerate(adj):
            for j in bits(row):
                if not adj[j] >> i & 1:
                    raise ValueError(f"asymmetric pair ({i},{j})")
        self.n = n
        self.adj = adj

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- basic queries ------------------------------------------------------

    @property
    def m(self) -> int:
        """Edge count."""
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[Edge]:
        """All edges as (u, v) pairs with u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            for j in bits(row):
                out.append((u, u + 1 + j))
        return out

    def non_edges(self) -> list[Edge]:
        full = self.vertex_mask
        out = []
        for u in range(self.n):
            missing = full & ~self.adj[u] & ~((1 << (u + 1)) - 1)
            for v in bits(missing):
                out.append((u, v))
        return out

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    # -- connectivity -------------------------------------------------------

    def component_of(self, v: int, allowed: int | None = None) -> int:
        """Bitset of the connected component of v within `allowed`."""
        if allowed is None:
            allowed = self.vertex_mask
        comp = 1 << v
        frontier = comp
        while frontier:
            grow = 0
            for u in bits(frontier):
                grow |= self.adj[u]
            grow &= allowed & ~comp
            comp |= grow
            frontier = grow
        return comp

    def components(self) -> list[int]:
        rest = self.vertex_mask
        out = []
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = self.component_of(v, rest)
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self) -> bool:
        return self.component_of(0) == self.vertex_mask

    def vertex_connectivity_at_least(self, k: int) -> bool:
        """Is the graph still connected after deleting any < k vertices?

        Exhaustive over deletion subsets; meant for the small k (<= 3 or so)
        the search pipeline needs.
        """
        if not 0 <= k < self.n:
            raise ValueError(f"need 0 <= k < n, got k={k}, n={self.n}")
        full = self.vertex_mask
        for size in range(k):
            for subset in combinations(range(self.n), size):
                removed = 0
                for v in subset:
                    removed |= 1 << v
                allowed = full & ~removed
                start = (allowed & -allowed).bit_length() - 1
                if self.component_of(start, allowed) != allowed:
                    return False
        return True

    # -- derived graphs -----------------------------------------------------

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph(self.n, [full & ~row & ~(1 << i) for i, row in enumerate(self.adj)])

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise NotAnEdge(f"loop ({u},{v})")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, adj)

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise NotAnEdge(f"({u},{v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj)

    def cone(self) -> "Graph":
        """New vertex joined to every existing vertex."""
        if self.n >= MAX_VERTICES:
            raise CapacityExceeded(f"cannot cone a graph on {self.n} vertices")
        apex = self.n
        adj = [row | (1 << apex) for row in self.adj]
        adj.append(self.vertex_mask)
        return Graph(self.n + 1, adj)

    def induced(self, mask: int) -> tuple["Graph", list[int]]:
        """Induced subgraph on the vertices of mask, relabeled 0..k-1.

        Returns the subgraph and the list of original labels by new index.
        """
        verts = list(bits(mask))
        if not verts:
            raise ValueError("empty vertex set")
        index = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            row = 0
            for w in bits(self.adj[v] & mask):
                row |= 1 << index[w]
            adj.append(row)
        return Graph(len(verts), adj), verts

    def delete_vertex(self, v: int) -> "Graph":
        sub, _ = self.induced(self.vertex_mask & ~(1 << v))
        return sub

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under the permutation old->new (perm[old] = new)."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for w in bits(self.adj[v]):
                row |= 1 << perm[w]
            adj[perm[v]] = row
        return Graph(self.n, adj)

    def contract_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Contract a forest of edges, simplifying loops and parallel edges.

        The edge set must be acyclic so the vertex count drops by exactly
        the number of edges contracted.
        """
        edges = list(edges)
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            if u == v or not 0 <= u < self.n or not 0 <= v < self.n:
                raise NotAnEdge(f"bad pair ({u},{v})")
            if not self.has_edge(u, v):
                raise NotAnEdge(f"({u},{v}) is not an edge")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise NotAForest(f"edge set contains a cycle through ({u},{v})")
            parent[ru] = rv

        roots = sorted(set(find(v) for v in range(self.n)))
        index = {r: i for i, r in enumerate(roots)}
        k = len(roots)
        adj = [0] * k
        for u in range(self.n):
            iu = index[find(u)]
            for v in bits(self.adj[u]):
                iv = index[find(v)]
                if iu != iv:
                    adj[iu] |= 1 << iv
        return Graph(k, adj)

    # -- local structure ----------------------------------------------------

    def is_triangular_edge(self, e: Edge) -> bool:
        """Does the edge lie in at least one 3-cycle?"""
        u, v = e
        if not self.has_edge(u, v):
            raise NotAnEdge(f"({u},{v}) is not an edge")
        return bool(self.adj[u] & self.adj[v])

    def is_triangular(self) -> bool:
        return all(self.is_triangular_edge(e) for e in self.edges())

    def non_triangular_edges(self) -> list[Edge]:
        return [e for e in self.edges() if not self.adj[e[0]] & self.adj[e[1]]]

    def triangles(self) -> list[tuple[int, int, int]]:
        """All 3-cliques (a, b, c) with a < b < c."""
        out = []
        for a in range(self.n):
            higher_a = self.adj[a] & ~((1 << (a + 1)) - 1)
            for b in bits(higher_a):
                both = self.adj[a] & self.adj[b] & ~((1 << (b + 1)) - 1)
                for c in bits(both):
                    out.append((a, b, c))
        return out

    def triangle_count(self) -> int:
        return len(self.triangles())

    def degree_profile(self) -> tuple[int, int, list[int]]:
        """(min degree, max degree, sorted degree sequence)."""
        degs = sorted(self.degrees())
        return degs[0], degs[-1], degs


# -- binary constructions ----------------------------------------------------


def clique_sum(g1: Graph, g2: Graph, map1: Sequence[int], map2: Sequence[int]) -> Graph:
    """Glue g1 and g2 along complete subgraphs, identifying map1[i] with map2[i]."""
    if len(map1) != len(map2):
        raise ValueError("map1 and map2 must have equal length")
    for g, mp, name in ((g1, map1, "map1"), (g2, map2, "map2")):
        if len(set(mp)) != len(mp) or any(not 0 <= v < g.n for v in mp):
            raise ValueError(f"{name} is not a list of distinct vertices")
        for a, b in combinations(mp, 2):
            if not g.has_edge(a, b):
                raise NotAClique(f"{name} does not induce a complete subgraph")
    p = len(map1)
    n = g1.n + g2.n - p
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"clique sum would have {n} vertices")
    to_new = {}
    for i, v in enumerate(map2):
        to_new[v] = map1[i]
    nxt = g1.n
    for v in range(g2.n):
        if v not in to_new:
            to_new[v] = nxt
            nxt += 1
    adj = list(g1.adj) + [0] * (g2.n - p)
    for u, v in g2.edges():
        a, b = to_new[u], to_new[v]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return Graph(n, adj)


# -- named constructors -------------------------------------------------------


def from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise NotAnEdge(f"loop ({u},{v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def empty(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << i) for i in range(n)])


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(n_leaves: int) -> Graph:
    return from_edges(n_leaves + 1, [(0, i) for i in range(1, n_leaves + 1)])


def complete_multipartite(*sizes: int) -> Graph:
    n = sum(sizes)
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    edges = []
    for i, si in enumerate(sizes):
        for j in range(i + 1, len(sizes)):
            for a in range(starts[i], starts[i] + si):
                for b in range(starts[j], starts[j] + sizes[j]):
                    edges.append((a, b))
    return from_edges(n, edges)


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def octahedron() -> Graph:
    return complete_multipartite(2, 2, 2)


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i--i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return from_edges(10, edges)
