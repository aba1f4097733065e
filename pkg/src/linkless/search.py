"""The maxnIL census: sieves, constructions, and the filter pipeline.

A census order is processed as: structural sieve -> K6-minor-free filter
-> maxnIL filter, then the survivors are merged with the two constructive
streams (cones over plane triangulations, degree-3 triangle extensions of
the previous order's maxnIL graphs) and deduplicated by isomorphism.
Graph generation itself is out of scope: sources arrive as graph6 streams
whose declared coverage must match the sieve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import IncompleteSource, NotMaximalPlanar, UnsupportedOrder
from .g6 import encode_g6
from .graph import Graph
from .linking import is_maxnil, is_nil_linking
from .minors import fingerprint, has_k6_minor, is_il_minor, is_isomorphic
from .planarity import classify_maxnil_apex, is_maximal_planar

MIN_ORDER = 3
MAX_ORDER = 13


@dataclass(frozen=True)
class SieveSpec:
    """Structural bounds a census input stream must cover."""

    n: int
    min_edges: int
    max_edges: int
    min_degree: int
    max_degree: Optional[int] = None
    min_connectivity: int = 2
    require_k6_minor_free: bool = True

    def admits(self, g: Graph) -> bool:
        if g.n != self.n:
            return False
        m = g.m
        if not self.min_edges <= m <= self.max_edges:
            return False
        lo, hi, _ = g.degree_profile()
        if lo < self.min_degree:
            return False
        if self.max_degree is not None and hi > self.max_degree:
            return False
        return g.vertex_connectivity_at_least(self.min_connectivity)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "min_edges": self.min_edges,
            "max_edges": self.max_edges,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "min_connectivity": self.min_connectivity,
            "require_k6_minor_free": self.require_k6_minor_free,
        }


def default_sieve(n: int) -> SieveSpec:
    """The per-order search bounds.

    Orders 7..10 use the 2n <= m <= 4n-10 edge window with minimum degree
    3; order 11 is the non-apex phase with degrees in 4..9 and 22..34
    edges (apex and degree-3 graphs come from the constructive streams).
    Orders 3..6 use only what 2-connectivity forces, and 12..13 get the
    edge window with the conservative degree bound 2 (the 3-connectivity
    chain breaks past 11: there is a maxnIL graph of order 12 with a
    degree-2 vertex).
    """
    if not MIN_ORDER <= n <= MAX_ORDER:
        raise UnsupportedOrder(f"census orders are {MIN_ORDER}..{MAX_ORDER}, got {n}")
    if n <= 5:
        return SieveSpec(n, n, n * (n - 1) // 2, 2)
    if n == 6:
        return SieveSpec(6, 6, 14, 2)
    if n <= 10:
        return SieveSpec(n, 2 * n, 4 * n - 10, 3)
    if n == 11:
        return SieveSpec(11, 22, 34, 4, max_degree=9)
    return SieveSpec(n, 2 * n, 4 * n - 10, 2)


class IsoSet:
    """Insertion-ordered set of graphs up to isomorphism."""

    def __init__(self) -> None:
        self._buckets: dict[tuple, list[Graph]] = {}
        self._items: list[Graph] = []

    def add(self, g: Graph) -> bool:
        bucket = self._buckets.setdefault(fingerprint(g), [])
        for h in bucket:
            if is_isomorphic(g, h):
                return False
        bucket.append(g)
        self._items.append(g)
        return True

    def __contains__(self, g: Graph) -> bool:
        bucket = self._buckets.get(fingerprint(g), [])
        return any(is_isomorphic(g, h) for h in bucket)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[Graph]:
        return iter(self._items)


# -- constructive streams --------------------------------------------------------


def apex_maxnil_from_triangulations(triangulations: Iterable[Graph]) -> list[Graph]:
    """Cone every plane triangulation; each gives a distinct apex maxnIL
    graph one order up.  Raises NotMaximalPlanar on a bad input record."""
    out = IsoSet()
    count = 0
    for i, t in enumerate(triangulations):
        if not is_maximal_planar(t):
            raise NotMaximalPlanar(f"input {i} is not a plane triangulation")
        out.add(t.cone())
        count += 1
    cones = list(out)
    if len(cones) != count:
        # isomorphic duplicates can only come from duplicated inputs
        raise NotMaximalPlanar(
            f"{count} triangulations yielded {len(cones)} distinct cones"
        )
    return cones


@dataclass
class Degree3Extensions:
    """Extensions of maxnIL graphs by a degree-3 vertex on a triangle.

    raw_count is the number of (graph, triangle) emissions before
    isomorphism deduplication; graphs is the deduplicated list.
    """

    raw_count: int
    graphs: list[Graph]


def degree3_extensions(maxnil_list: Sequence[Graph]) -> Degree3Extensions:
    seen = IsoSet()
    raw = 0
    for g in maxnil_list:
        for a, b, c in g.triangles():
            raw += 1
            seen.add(_attach(g, a, b, c))
    return Degree3Extensions(raw, list(seen))


def _attach(g: Graph, a: int, b: int, c: int) -> Graph:
    new = g.n
    adj = list(g.adj)
    star = 0
    for v in (a, b, c):
        adj[v] |= 1 << new
        star |= 1 << v
    adj.append(star)
    return Graph(g.n + 1, adj)


# -- the census -------------------------------------------------------------------

SIEVE_REJECT = 0
K6_MINOR = 1
NOT_MAXNIL = 2
MAXNIL = 3

_STAGE_NAMES = {
    SIEVE_REJECT: "sieve_reject",
    K6_MINOR: "k6_minor",
    NOT_MAXNIL: "not_maxnil",
    MAXNIL: "maxnil",
}


def census_disposition(g: Graph, sieve: SieveSpec) -> int:
    """Classify one input graph through the filter chain."""
    if not sieve.admits(g):
        return SIEVE_REJECT
    if sieve.require_k6_minor_free and has_k6_minor(g):
        return K6_MINOR
    if is_maxnil(g):
        return MAXNIL
    return NOT_MAXNIL


@dataclass
class CensusRow:
    """One row of the census table."""

    n: int
    total: int
    apex: int
    edge_histogram: dict[int, int]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "apex": self.apex,
            "edge_histogram": {str(m): c for m, c in sorted(self.edge_histogram.items())},
        }


@dataclass
class CensusResult:
    row: CensusRow
    survivors: list[Graph]
    stage_counts: dict[str, int] = field(default_factory=dict)


def census(
    n: int,
    source: Iterable[Graph],
    sieve: Optional[SieveSpec] = None,
    triangulations: Optional[Iterable[Graph]] = None,
    prev_maxnil: Optional[Sequence[Graph]] = None,
    declared_coverage: Optional[dict] = None,
    dispositions: Optional[Iterable[int]] = None,
) -> CensusResult:
    """Run the order-n census over an externally generated source stream.

    `declared_coverage` is the source's manifest (same keys as
    SieveSpec.as_dict); it must cover the sieve's space or the run aborts
    with IncompleteSource.  `dispositions`, when given, replaces the
    per-graph filter chain (the pipeline layer uses this to run the chain
    in worker processes); it must align 1:1 with `source`.

    The constructive streams are merged in after the filter chain; for
    n <= 10 they are redundant (their graphs pass the main filter too) but
    at n = 11 they supply the apex and minimum-degree-3 graphs the sieve
    deliberately excludes.
    """
    sieve = sieve or default_sieve(n)
    if declared_coverage is not None:
        _check_coverage(sieve, declared_coverage)

    stage = {name: 0 for name in _STAGE_NAMES.values()}
    stage["input"] = 0
    survivors = IsoSet()

    if dispositions is None:
        source = list(source)
        dispositions = [census_disposition(g, sieve) for g in source]
    for g, code in zip(source, dispositions):
        stage["input"] += 1
        stage[_STAGE_NAMES[code]] += 1
        if code == MAXNIL:
            survivors.add(g)

    merged_apex = 0
    if triangulations is not None:
        for cone in apex_maxnil_from_triangulations(triangulations):
            merged_apex += survivors.add(cone)
    merged_deg3 = 0
    if prev_maxnil is not None:
        for ext in degree3_extensions(prev_maxnil).graphs:
            if is_maxnil(ext):
                merged_deg3 += survivors.add(ext)
    stage["merged_apex_stream"] = merged_apex
    stage["merged_degree3_stream"] = merged_deg3

    ordered = sorted(survivors, key=lambda g: (g.m, encode_g6(g)))
    histogram: dict[int, int] = {}
    apex_count = 0
    for g in ordered:
        histogram[g.m] = histogram.get(g.m, 0) + 1
        apex_count += classify_maxnil_apex(g)
    row = CensusRow(n, len(ordered), apex_count, histogram)
    stage["total_after_dedup"] = len(ordered)
    return CensusResult(row, ordered, stage)


def _check_coverage(sieve: SieveSpec, declared: dict) -> None:
    problems = []
    if declared.get("n") != sieve.n:
        problems.append(f"order {declared.get('n')} != {sieve.n}")
    if declared.get("min_edges", 10 ** 9) > sieve.min_edges:
        problems.append("min_edges not covered")
    if declared.get("max_edges", -1) < sieve.max_edges:
        problems.append("max_edges not covered")
    if declared.get("min_degree", 10 ** 9) > sieve.min_degree:
        problems.append("min_degree not covered")
    decl_max_deg = declared.get("max_degree")
    if sieve.max_degree is None:
        if decl_max_deg is not None and decl_max_deg < sieve.n - 1:
            problems.append("max_degree not covered")
    elif decl_max_deg is not None and decl_max_deg < sieve.max_degree:
        problems.append("max_degree not covered")
    if declared.get("min_connectivity", 10 ** 9) > sieve.min_connectivity:
        problems.append("connectivity not covered")
    if problems:
        raise IncompleteSource("; ".join(problems))


# -- complement observations ------------------------------------------------------


@dataclass(frozen=True)
class ComplementVerdict:
    graph: Graph
    complement_il_linking: bool
    complement_il_minor: bool
    complement_k6_minor_free: bool


def complement_verdicts(maxnil_list: Iterable[Graph]) -> list[ComplementVerdict]:
    """IL and K6-minor verdicts for the complement of each maxnIL graph.

    IL is decided by both the linking system and the forbidden-minor
    engine (they must agree; this doubles as an online cross-check).
    Complements may be disconnected, so the K6 test runs per component.
    """
    out = []
    for g in maxnil_list:
        cg = g.complement()
        by_link = not is_nil_linking(cg)
        by_minor = is_il_minor(cg)
        k6free = not _any_component_k6(cg)
        out.append(ComplementVerdict(g, by_link, by_minor, k6free))
    return out


def _any_component_k6(g: Graph) -> bool:
    for comp in g.components():
        if comp.bit_count() < 6:
            continue
        sub, _ = g.induced(comp)
        if has_k6_minor(sub):
            return True
    return False
