"""Minor testing and the Petersen family.

Two independent minor engines live here: a K6-specific test that enumerates
forests of n-6 edges and contracts them, and a general branch-set search for
an arbitrary minor.  They are cross-checked against each other in the test
suite.  The Petersen family is generated as the closure of K6 under
triangle-to-star and star-to-triangle moves, deduplicated by isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import (
    CapacityExceeded,
    NotATriangle,
    NotConnected,
    NotDegreeThree,
)
from .graph import Graph, bits, complete

# -- isomorphism ---------------------------------------------------------------


def _wl_colors(g: Graph, rounds: int = 3) -> list[int]:
    """Iterated neighborhood-refinement colors (process-stable ints)."""
    colors = g.degrees()
    for _ in range(rounds):
        colors = [
            hash((colors[v], tuple(sorted(colors[w] for w in bits(g.adj[v])))))
            for v in range(g.n)
        ]
    return colors


def fingerprint(g: Graph) -> tuple:
    """Cheap isomorphism-invariant key for bucketing; not a certificate.

    Equal for isomorphic graphs, usually different otherwise; exact
    deduplication must confirm with is_isomorphic.
    """
    return (
        g.n,
        g.m,
        tuple(sorted(g.degrees())),
        g.triangle_count(),
        tuple(sorted(_wl_colors(g))),
    )


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism by refinement classes plus backtracking."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    n = g1.n
    col1 = _wl_colors(g1)
    col2 = _wl_colors(g2)
    if sorted(col1) != sorted(col2):
        return False
    candidates = []
    for v in range(n):
        cand = 0
        for w in range(n):
            if col2[w] == col1[v]:
                cand |= 1 << w
        if not cand:
            return False
        candidates.append(cand)
    # most-constrained vertices first; ties to high degree, then index
    order = sorted(
        range(n), key=lambda v: (candidates[v].bit_count(), -g1.degree(v), v)
    )
    mapping = [-1] * n
    used = 0

    def place(idx: int) -> bool:
        nonlocal used
        if idx == n:
            return True
        v = order[idx]
        need = 0
        for w in bits(g1.adj[v]):
            if mapping[w] >= 0:
                need |= 1 << mapping[w]
        for x in bits(candidates[v] & ~used):
            # x must be adjacent to exactly the images of v's mapped neighbors
            if g2.adj[x] & used != need:
                continue
            mapping[v] = x
            used |= 1 << x
            if place(idx + 1):
                return True
            used &= ~(1 << x)
            mapping[v] = -1
        return False

    return place(0)


# -- triangle/star moves and the Petersen family -------------------------------


def triangle_y_move(g: Graph, triangle: Sequence[int]) -> Graph:
    """Replace a triangle by a new degree-3 vertex joined to its corners."""
    a, b, c = triangle
    if len({a, b, c}) != 3 or not (
        g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
    ):
        raise NotATriangle(f"{triangle} does not induce a triangle")
    if g.n >= 32:
        raise CapacityExceeded("triangle-to-star move would exceed 32 vertices")
    new = g.n
    adj = list(g.adj)
    for u, v in ((a, b), (a, c), (b, c)):
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    star = (1 << a) | (1 << b) | (1 << c)
    for v in (a, b, c):
        adj[v] |= 1 << new
    adj.append(star)
    return Graph(g.n + 1, adj)


def y_triangle_move(g: Graph, v: int) -> Graph:
    """Delete a degree-3 vertex and pairwise join its neighbors."""
    if g.degree(v) != 3:
        raise NotDegreeThree(f"vertex {v} has degree {g.degree(v)}")
    a, b, c = g.neighbors(v)
    h = g
    for x, y in ((a, b), (a, c), (b, c)):
        if not h.has_edge(x, y):
            h = h.with_edge(x, y)
    return h.delete_vertex(v)


@dataclass(frozen=True)
class PetersenFamily:
    """The seven forbidden minors for linkless embeddability."""

    members: tuple[Graph, ...]
    names: tuple[str, ...]

    def __iter__(self) -> Iterator[Graph]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def named(self) -> list[tuple[str, Graph]]:
        return list(zip(self.names, self.members))


def _family_member_name(g: Graph) -> str:
    if g.n == 6:
        return "K6"
    if g.n == 7:
        return "K331" if max(g.degrees()) == 6 else "G7"
    if g.n == 8:
        return "K44e" if g.triangle_count() == 0 else "G8"
    if g.n == 9:
        return "G9"
    return "P10"


_FAMILY_CACHE: Optional[PetersenFamily] = None


def generate_petersen_family() -> PetersenFamily:
    """Closure of {K6} under both moves, deduplicated by isomorphism."""
    global _FAMILY_CACHE
    if _FAMILY_CACHE is not None:
        return _FAMILY_CACHE
    seen: dict[tuple, list[Graph]] = {}
    members: list[Graph] = []

    def add(g: Graph) -> bool:
        key = fingerprint(g)
        bucket = seen.setdefault(key, [])
        for h in bucket:
            if is_isomorphic(g, h):
                return False
        bucket.append(g)
        members.append(g)
        return True

    queue = [complete(6)]
    add(queue[0])
    while queue:
        g = queue.pop()
        moves = [triangle_y_move(g, t) for t in g.triangles()]
        moves += [y_triangle_move(g, v) for v in range(g.n) if g.degree(v) == 3]
        for h in moves:
            if add(h):
                queue.append(h)

    members.sort(key=lambda g: (g.n, tuple(sorted(g.degrees())), g.adj))
    names = tuple(_family_member_name(g) for g in members)
    _FAMILY_CACHE = PetersenFamily(tuple(members), names)
    return _FAMILY_CACHE


# -- K6 minors by contraction enumeration ---------------------------------------


def has_k6_minor(g: Graph, deadline_check=None) -> bool:
    """Does contracting some forest of n-6 edges turn g into K6?

    Enumerates acyclic edge subsets with an incremental union-find.  At
    every node the component quotient is built and two exact shortcuts
    apply: a component left untouched by the remaining contractions can
    lose at most one missing adjacency per contraction, so more than
    2*remaining components missing more than `remaining` adjacencies kill
    the branch; and the final contraction is solved directly from the
    7-component quotient (pick the merge that repairs every non-adjacent
    pair) instead of being enumerated.  `deadline_check`, if given, is
    called periodically and may raise to abort a long search.
    """
    n = g.n
    if n < 6:
        return False
    if not g.is_connected():
        raise NotConnected("has_k6_minor is defined for connected graphs")
    k = n - 6
    edges = g.edges()
    m = len(edges)
    if m < 15 + k:
        return False
    if k == 0:
        return all(d == 5 for d in g.degrees())

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    eu = [e[0] for e in edges]
    ev = [e[1] for e in edges]

    def solve_last(c: int, amask: list[int]) -> bool:
        # pick one merge of adjacent components P,Q such that every
        # non-adjacent pair involves P or Q and is repaired by the union
        nap = [
            (a, b)
            for a in range(c)
            for b in range(a + 1, c)
            if not amask[a] >> b & 1
        ]
        if not nap:
            return True  # all 7 components pairwise adjacent: any merge works
        involved = set()
        for a, b in nap:
            involved.add(a)
            involved.add(b)
        for p in involved:
            row_p = amask[p]
            for q in range(c):
                if q == p or not row_p >> q & 1:
                    continue
                ok = True
                for a, b in nap:
                    if a == p or a == q:
                        other, fixer = b, (q if a == p else p)
                    elif b == p or b == q:
                        other, fixer = a, (q if b == p else p)
                    else:
                        ok = False
                        break
                    if not amask[fixer] >> other & 1:
                        ok = False
                        break
                if ok:
                    return True
        return False

    def descend(start: int, remaining: int) -> bool:
        # state entering here: 6 + remaining components, `remaining` merges
        # still to pick (from edge indices >= start)
        if deadline_check is not None:
            deadline_check()
        c = 6 + remaining
        idx = [-1] * n
        nxt = 0
        comp = [0] * n
        for v in range(n):
            r = find(v)
            if idx[r] < 0:
                idx[r] = nxt
                nxt += 1
            comp[v] = idx[r]
        amask = [0] * c
        for j in range(m):
            a, b = comp[eu[j]], comp[ev[j]]
            if a != b:
                amask[a] |= 1 << b
                amask[b] |= 1 << a
        if remaining == 1:
            return solve_last(c, amask)
        # a component untouched by the remaining merges loses at most one
        # missing adjacency per merge, and merges touch at most 2*remaining
        # components
        deficient = 0
        for x in range(c):
            if c - 1 - amask[x].bit_count() > remaining:
                deficient += 1
                if deficient > 2 * remaining:
                    return False
        for i in range(start, m - remaining + 1):
            ra, rb = find(eu[i]), find(ev[i])
            if ra == rb:
                continue
            parent[ra] = rb
            if descend(i + 1, remaining - 1):
                parent[ra] = ra
                return True
            parent[ra] = ra
        return False

    return descend(0, k)


# -- general minors by branch-set search ----------------------------------------


def has_minor(g: Graph, h: Graph, deadline_check=None) -> bool:
    """Is h a minor of g?  Exact backtracking over branch decompositions.

    H-vertices are processed by decreasing degree; branch sets grow from
    anchors taken in decreasing g-degree.  Pruned by adjacency to already
    placed sets, by the remaining vertex budget, and by the number of free
    vertices a set can still reach (future neighbor sets are disjoint, so
    a set serving k unplaced h-neighbors must touch k distinct free
    vertices).
    """
    if h.n > g.n or h.m > g.m:
        return False
    order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    future_need = [
        sum(1 for w in bits(h.adj[v]) if pos[w] > pos[v]) for v in range(h.n)
    ]
    gdeg_order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    max_size = g.n - h.n + 1
    sets = [0] * h.n

    def place(t: int, free: int) -> bool:
        if deadline_check is not None:
            deadline_check()
        if t == len(order):
            return True
        hv = order[t]
        need_masks = [sets[order[i]] for i in range(t) if h.has_edge(hv, order[i])]
        budget = free.bit_count() - (len(order) - t - 1)
        if budget <= 0:
            return False
        cap = min(max_size, budget)
        needed_ahead = future_need[hv]

        def try_set(s: int, touched: int) -> bool:
            for mask in need_masks:
                if not touched & mask:
                    return False
            if (touched & free & ~s).bit_count() < needed_ahead:
                return False
            sets[hv] = s
            if place(t + 1, free & ~s):
                return True
            sets[hv] = 0
            return False

        def grow(s: int, touched: int, frontier: int, blocked: int) -> bool:
            if try_set(s, touched):
                return True
            if s.bit_count() == cap:
                return False
            f = frontier
            while f:
                low = f & -f
                f ^= low
                v = low.bit_length() - 1
                ext = f | (g.adj[v] & free & ~blocked & ~s & ~low)
                if grow(s | low, touched | g.adj[v], ext, blocked):
                    return True
                blocked |= low
            return False

        # anchors in decreasing degree, ties by index; each candidate set is
        # enumerated once, from its earliest anchor
        blocked = 0
        for a in gdeg_order:
            abit = 1 << a
            if not free & abit:
                continue
            if grow(abit, g.adj[a], g.adj[a] & free & ~blocked & ~abit, blocked):
                return True
            blocked |= abit
        return False

    return place(0, g.vertex_mask)


def has_k5_minor(g: Graph) -> bool:
    return has_minor(g, complete(5))


def has_k33_minor(g: Graph) -> bool:
    from .graph import complete_bipartite

    return has_minor(g, complete_bipartite(3, 3))


# -- intrinsic linking via forbidden minors --------------------------------------


def min_degree3_kernel(g: Graph) -> Optional[Graph]:
    """Shrink g without changing which minors of minimum degree >= 3 it has.

    Repeatedly deletes vertices of degree <= 1 and smooths degree-2
    vertices by contracting one incident edge.  Returns None when the
    graph collapses below any possible such minor (fewer than 4 vertices).
    """
    while True:
        if g.n < 4:
            return None
        low = next((v for v in range(g.n) if g.degree(v) <= 2), None)
        if low is None:
            return g
        d = g.degree(low)
        if d == 0:
            if g.n == 1:
                return None
            g = g.delete_vertex(low)
        elif d == 1:
            g = g.delete_vertex(low)
        else:
            u = (g.adj[low] & -g.adj[low]).bit_length() - 1
            e = (u, low) if u < low else (low, u)
            g = g.contract_edges([e])


def petersen_minor_witness(g: Graph) -> Optional[str]:
    """Name of a Petersen-family member occurring as a minor, else None.

    Disconnected inputs are decided per component; family members are
    connected, so a family minor always lives inside one component.  Each
    component is kernelized first: every family member has minimum degree
    3, so deleting degree-<=1 vertices and smoothing degree-2 vertices
    changes nothing.
    """
    family = generate_petersen_family()
    kernels = []
    for comp in g.components():
        sub, _ = g.induced(comp)
        kernel = min_degree3_kernel(sub)
        if kernel is not None and kernel.n >= 6 and kernel.m >= 15:
            kernels.append(kernel)
    for name, f in family.named():
        for kernel in kernels:
            if kernel.n >= f.n and kernel.m >= f.m and has_minor(kernel, f):
                return name
    return None


def is_il_minor(g: Graph) -> bool:
    """Is the graph intrinsically linked (IL)?  Forbidden-minor route."""
    return petersen_minor_witness(g) is not None
