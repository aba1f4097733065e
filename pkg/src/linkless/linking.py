"""Intrinsic-linking decision via mod-2 linking numbers in a book diagram.

Every graph gets one canonical embedding: vertices 0..n-1 on a circle,
edges as chords, crossings exactly between interleaved chords, and the
chord with the smaller first endpoint passing over.  Changing embeddings
is modeled by one GF(2) twist variable per disjoint edge pair: a full
twist between edges e and f flips the mod-2 linking number of every link
having e and f in opposite components.  The graph is linklessly embeddable
iff the resulting linear system (one equation per disjoint cycle pair,
right-hand side the pair's linking parity in the book diagram) is
consistent.

Consistency only depends on the row span, and the row of any cycle pair
is the XOR of the rows obtained by splitting a chorded cycle along a
chord (the chord's own crossings and twist variables cancel in pairs).
Induced cycles therefore span the full system, and the solver enumerates
only pairs of vertex-disjoint induced cycles; `all_pairs=True` forces the
literal one-row-per-cycle-pair construction for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import NotAnEdge, NotDisjoint
from .graph import Edge, Graph, bits

# -- the canonical diagram ----------------------------------------------------


def _interleaved(e: Edge, f: Edge) -> bool:
    a, b = e
    c, d = f
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True)
class BookDiagram:
    """Chord diagram of a graph on the identity circular vertex order."""

    n: int
    order: tuple[int, ...]
    crossings: frozenset[tuple[Edge, Edge]]

    @staticmethod
    def over(e: Edge, f: Edge) -> bool:
        """At a crossing of e and f, does e pass over?  Smaller first
        endpoint wins; crossing chords cannot share an endpoint."""
        return e[0] < f[0]

    def lk2(self, c1_edges: Sequence[Edge], c2_edges: Sequence[Edge]) -> int:
        """Parity of crossings where an edge of c1 passes over an edge of c2."""
        total = 0
        for e in c1_edges:
            for f in c2_edges:
                if _interleaved(e, f) and self.over(e, f):
                    total ^= 1
        return total


def build_diagram(g: Graph) -> BookDiagram:
    edges = g.edges()
    crossings = set()
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if _interleaved(e, f):
                crossings.add((e, f))
    return BookDiagram(g.n, tuple(range(g.n)), frozenset(crossings))


def lk2(diagram: BookDiagram, c1: Sequence[Edge], c2: Sequence[Edge]) -> int:
    """Mod-2 linking number of two vertex-disjoint cycles in the diagram."""
    v1 = 0
    for u, v in c1:
        v1 |= (1 << u) | (1 << v)
    v2 = 0
    for u, v in c2:
        v2 |= (1 << u) | (1 << v)
    if v1 & v2:
        raise NotDisjoint("cycles share a vertex")
    return diagram.lk2(c1, c2)


# -- cycle enumeration ----------------------------------------------------------


def _for_each_cycle(
    adj: Sequence[int],
    allowed: int,
    induced: bool,
    visit: Callable[[int, list[int]], bool],
) -> bool:
    """Call visit(mask, vertices) for every simple (or induced) cycle whose
    vertices lie in `allowed`.  Cycles are rooted at their minimum vertex
    with second vertex < last vertex, so each appears exactly once.  A True
    from visit aborts the walk and propagates."""
    rest = allowed
    while rest:
        rbit = rest & -rest
        rest ^= rbit
        r = rbit.bit_length() - 1
        gt = allowed & ~((1 << (r + 1)) - 1)
        adj_r = adj[r]
        path = [r]

        def rec(last: int, pmask: int, interior_ban: int) -> bool:
            # interior_ban = chords to path[1:-1]; adjacency to the root is
            # a cycle edge for path[1] and the closing vertex, a chord for
            # everything between
            cand = adj[last] & gt & ~pmask
            if len(path) >= 2:
                closers = cand & adj_r & ~interior_ban
                second = path[1]
                while closers:
                    low = closers & -closers
                    closers ^= low
                    w = low.bit_length() - 1
                    if second < w:
                        path.append(w)
                        if visit(pmask | low, path):
                            path.pop()
                            return True
                        path.pop()
            if induced:
                ext = cand & ~interior_ban
                if last != r:
                    ext &= ~adj_r
                    interior_ban |= adj[last]
            else:
                ext = cand
            while ext:
                low = ext & -ext
                ext ^= low
                w = low.bit_length() - 1
                path.append(w)
                if rec(w, pmask | low, interior_ban):
                    path.pop()
                    return True
                path.pop()
            return False

        if rec(r, rbit, 0):
            return True
    return False


def _for_each_cycle_through(
    adj: Sequence[int],
    u: int,
    v: int,
    allowed: int,
    visit: Callable[[int, list[int]], bool],
) -> bool:
    """Every cycle formed by a chordless u..v path plus the closing edge uv
    (the closing edge itself need not be present in adj).  visit as in
    _for_each_cycle; the vertex list starts at u and ends at v."""
    vbit = 1 << v
    adj_u = adj[u]
    path = [u]

    def rec(last: int, pmask: int, interior_ban: int) -> bool:
        # interior_ban bans chords to path[1:-1]; chords to u are banned for
        # extensions but not for the closing vertex (uv closes the cycle)
        cand = adj[last] & allowed & ~pmask
        if cand & vbit & ~interior_ban and len(path) >= 2:
            path.append(v)
            if visit(pmask | vbit, path):
                path.pop()
                return True
            path.pop()
        ext = cand & ~interior_ban & ~vbit
        if last != u:
            ext &= ~adj_u
            interior_ban |= adj[last]
            if interior_ban & vbit:
                # some interior vertex is adjacent to v: nothing below here
                # can close without a chord
                return False
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            path.append(w)
            if rec(w, pmask | low, interior_ban):
                path.pop()
                return True
            path.pop()
        return False

    return rec(u, 1 << u, 0)


def simple_cycles(g: Graph, induced: bool = False) -> list[tuple[int, list[Edge]]]:
    """All simple (or induced) cycles as (vertex mask, edge list)."""
    out: list[tuple[int, list[Edge]]] = []

    def visit(mask: int, verts: list[int]) -> bool:
        edges = []
        for i in range(len(verts)):
            a, b = verts[i], verts[(i + 1) % len(verts)]
            edges.append((a, b) if a < b else (b, a))
        out.append((mask, edges))
        return False

    _for_each_cycle(g.adj, g.vertex_mask, induced, visit)
    return out


@dataclass(frozen=True)
class CyclePair:
    """Two vertex-disjoint simple cycles and their linking parity."""

    c1_mask: int
    c1_edges: tuple[Edge, ...]
    c2_mask: int
    c2_edges: tuple[Edge, ...]
    lk2: int


def enumerate_disjoint_cycle_pairs(
    g: Graph, induced: bool = False
) -> Iterator[CyclePair]:
    """Every unordered pair of vertex-disjoint simple cycles, exactly once.

    The first cycle of each pair is the one containing the pair's minimum
    vertex.  lk2 is the pair's linking parity in the canonical diagram.
    """
    diagram = build_diagram(g)
    cycles = simple_cycles(g, induced=induced)
    for mask1, edges1 in cycles:
        rmin = (mask1 & -mask1).bit_length() - 1
        allowed = g.vertex_mask & ~mask1 & ~((1 << (rmin + 1)) - 1)
        for mask2, edges2 in simple_cycles_within(g, allowed, induced=induced):
            yield CyclePair(
                mask1,
                tuple(edges1),
                mask2,
                tuple(edges2),
                diagram.lk2(edges1, edges2),
            )


def simple_cycles_within(
    g: Graph, allowed: int, induced: bool = False
) -> list[tuple[int, list[Edge]]]:
    out: list[tuple[int, list[Edge]]] = []

    def visit(mask: int, verts: list[int]) -> bool:
        edges = []
        for i in range(len(verts)):
            a, b = verts[i], verts[(i + 1) % len(verts)]
            edges.append((a, b) if a < b else (b, a))
        out.append((mask, edges))
        return False

    _for_each_cycle(g.adj, allowed, induced, visit)
    return out


# -- the GF(2) system ------------------------------------------------------------


class Gf2System:
    """Incremental row-echelon basis over GF(2), one int per row.

    Bit 0 is the right-hand side; column bits start at 1.  Rows reducing to
    exactly 1 mark the system inconsistent.
    """

    __slots__ = ("basis", "inconsistent")

    def __init__(self) -> None:
        self.basis: dict[int, int] = {}
        self.inconsistent = False

    def insert(self, row: int) -> bool:
        """Reduce and insert; returns False once the system is inconsistent."""
        basis = self.basis
        while row > 1:
            pivot = row.bit_length() - 1
            existing = basis.get(pivot)
            if existing is None:
                basis[pivot] = row
                return not self.inconsistent
            row ^= existing
        if row == 1:
            self.inconsistent = True
        return not self.inconsistent

    @property
    def rank(self) -> int:
        return len(self.basis)

    def copy(self) -> "Gf2System":
        dup = Gf2System()
        dup.basis = dict(self.basis)
        dup.inconsistent = self.inconsistent
        return dup


class _LinkContext:
    """Per-graph tables: edge ids, twist-variable columns, and per ordered
    edge pair the packed (column | rhs) contribution of a crossing."""

    __slots__ = ("g", "edges", "eid", "ncols", "contrib")

    def __init__(self, g: Graph):
        self.g = g
        self.edges = g.edges()
        m = len(self.edges)
        self.eid = {e: i for i, e in enumerate(self.edges)}
        contrib = [[0] * m for _ in range(m)]
        ncols = 0
        for i in range(m):
            a, b = self.edges[i]
            mask_i = (1 << a) | (1 << b)
            for j in range(i + 1, m):
                c, d = self.edges[j]
                if mask_i & ((1 << c) | (1 << d)):
                    continue
                ncols += 1
                colbit = 1 << ncols
                inter = a < c < b < d or c < a < d < b
                # edges are lex sorted, so edge i is the over strand
                contrib[i][j] = colbit | (1 if inter else 0)
                contrib[j][i] = colbit
        self.ncols = ncols
        self.contrib = contrib

    def row(self, eids1: Sequence[int], eids2: Sequence[int]) -> int:
        contrib = self.contrib
        acc = 0
        for i in eids1:
            ci = contrib[i]
            for j in eids2:
                acc ^= ci[j]
        return acc


def _edge_ids(eid: dict, verts: list[int]) -> list[int]:
    k = len(verts)
    out = []
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        out.append(eid[(a, b) if a < b else (b, a)])
    return out


def _solve_base(ctx: _LinkContext, induced: bool) -> Gf2System | None:
    """Stream all disjoint cycle-pair rows into a fresh system.

    Returns the system, or None as soon as it turns inconsistent.
    """
    g = ctx.g
    adj = g.adj
    system = Gf2System()
    seen: set[int] = set()
    contrib = ctx.contrib
    m = len(ctx.edges)
    full = g.vertex_mask

    def visit_outer(mask1: int, verts1: list[int]) -> bool:
        eids1 = _edge_ids(ctx.eid, verts1)
        rmin = (mask1 & -mask1).bit_length() - 1
        allowed = full & ~mask1 & ~((1 << (rmin + 1)) - 1)
        if allowed.bit_count() < 3:
            return False
        profile = None

        def visit_inner(mask2: int, verts2: list[int]) -> bool:
            nonlocal profile
            if profile is None:
                profile = [0] * m
                for i in eids1:
                    ci = contrib[i]
                    for j in range(m):
                        profile[j] ^= ci[j]
            row = 0
            k = len(verts2)
            for idx in range(k):
                a, b = verts2[idx], verts2[(idx + 1) % k]
                row ^= profile[ctx.eid[(a, b) if a < b else (b, a)]]
            if row and row not in seen:
                seen.add(row)
                if not system.insert(row):
                    return True
            return False

        return _for_each_cycle(adj, allowed, induced, visit_inner)

    aborted = _for_each_cycle(adj, full, induced, visit_outer)
    return None if aborted else system


def is_nil_linking(g: Graph, all_pairs: bool = False) -> bool:
    """Is the graph linklessly embeddable?  GF(2) twist-system route.

    With all_pairs=True the system gets one equation per disjoint pair of
    simple cycles (the literal construction); the default enumerates only
    induced cycles, which span the same row space.
    """
    ctx = _LinkContext(g)
    return _solve_base(ctx, induced=not all_pairs) is not None


def is_maxnil(g: Graph, all_pairs: bool = False) -> bool:
    """Is the graph maxnIL: linklessly embeddable, with every one-edge
    extension on the same vertex set intrinsically linked?

    Complete graphs have no extensions, so for them maxnIL reduces to nIL.
    The extension checks reuse the base system: adding edge uv only adds
    equations for pairs whose first cycle runs through uv.
    """
    if all_pairs:
        if not is_nil_linking(g, all_pairs=True):
            return False
        return all(
            not is_nil_linking(g.with_edge(u, v), all_pairs=True)
            for u, v in g.non_edges()
        )

    ctx = _LinkContext(g)
    base = _solve_base(ctx, induced=True)
    if base is None:
        return False
    for u, v in g.non_edges():
        if _extension_is_nil(ctx, base, u, v):
            return False
    return True


def extension_verdicts(g: Graph) -> list[tuple[Edge, bool]]:
    """(non-edge, is_nil_linking(g + non-edge)) for every non-edge.

    Raises NotAnEdge-free; returns [] for complete graphs.  The base graph
    must be nIL (callers use this on nIL graphs to study near-maximality).
    """
    ctx = _LinkContext(g)
    base = _solve_base(ctx, induced=True)
    if base is None:
        raise ValueError("base graph is intrinsically linked")
    return [((u, v), _extension_is_nil(ctx, base, u, v)) for u, v in g.non_edges()]


def _extension_is_nil(ctx: _LinkContext, base: Gf2System, u: int, v: int) -> bool:
    """Decide is_nil_linking(g + uv) by extending an already consistent base
    system of g with the rows of cycle pairs through the new edge uv."""
    g = ctx.g
    adj = g.adj
    m = len(ctx.edges)
    contrib = ctx.contrib
    a, b = (u, v) if u < v else (v, u)
    new_mask = (1 << a) | (1 << b)
    # twist columns pairing uv with each old disjoint edge, plus uv's own
    # crossings; fresh column ids live above the base context's
    new_contrib = [0] * m
    ncols = ctx.ncols
    for j in range(m):
        c, d = ctx.edges[j]
        if new_mask & ((1 << c) | (1 << d)):
            continue
        ncols += 1
        colbit = 1 << ncols
        inter = a < c < b < d or c < a < d < b
        over_new = inter and a < c
        new_contrib[j] = colbit | (1 if over_new else 0)
    system = base.copy()
    full = g.vertex_mask

    def visit_c1(mask1: int, verts1: list[int]) -> bool:
        # verts1 runs u .. v; cycle edges are the path edges plus uv
        eids1 = []
        for i in range(len(verts1) - 1):
            x, y = verts1[i], verts1[i + 1]
            eids1.append(ctx.eid[(x, y) if x < y else (y, x)])
        allowed = full & ~mask1
        if allowed.bit_count() < 3:
            return False
        profile = None

        def visit_c2(mask2: int, verts2: list[int]) -> bool:
            nonlocal profile
            if profile is None:
                profile = list(new_contrib)
                for i in eids1:
                    ci = contrib[i]
                    for j in range(m):
                        profile[j] ^= ci[j]
            row = 0
            k = len(verts2)
            for idx in range(k):
                x, y = verts2[idx], verts2[(idx + 1) % k]
                row ^= profile[ctx.eid[(x, y) if x < y else (y, x)]]
            if row and not system.insert(row):
                return True
            return False

        return _for_each_cycle(adj, allowed, True, visit_c2)

    aborted = _for_each_cycle_through(adj, a, b, full, visit_c1)
    return not aborted
