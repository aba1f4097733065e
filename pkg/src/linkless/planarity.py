"""Planarity, maximal planarity, and apex classification.

Planarity is decided by Wagner's criterion: a graph is planar iff it has
neither a K5 minor nor a K3,3 minor.  At this package's sizes (n <= 13)
the branch-set engine is fast, so no embedding algorithm is needed.  Both
forbidden minors have minimum degree 3, so components are kernelized
(degree-<=2 reductions) before searching, after the m <= 3n-6 edge-count
prefilter.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import PropositionViolation, TooSmall
from .graph import Graph, complete, complete_bipartite
from .minors import has_minor, min_degree3_kernel

_K5 = complete(5)
_K33 = complete_bipartite(3, 3)


def is_planar(g: Graph) -> bool:
    if g.n <= 4:
        return True
    for comp in g.components():
        if comp.bit_count() <= 4:
            continue
        sub, _ = g.induced(comp)
        if sub.m > 3 * sub.n - 6:
            return False
        kernel = min_degree3_kernel(sub)
        if kernel is None:
            continue
        if kernel.m > 3 * kernel.n - 6:
            return False
        if has_minor(kernel, _K5) or has_minor(kernel, _K33):
            return False
    return True


def is_maximal_planar(g: Graph) -> bool:
    """Planar with the full 3n-6 edge budget (a plane triangulation)."""
    if g.n < 3:
        raise TooSmall(f"maximal planarity needs n >= 3, got n={g.n}")
    return g.m == 3 * g.n - 6 and is_planar(g)


@dataclass(frozen=True)
class ApexReport:
    """Outcome of the 1-apex test: a witness vertex if one exists."""

    is_apex: bool
    witness: Optional[int] = None


def apex_report(g: Graph) -> ApexReport:
    """First vertex (in index order) whose deletion leaves a planar graph."""
    if g.n == 1:
        return ApexReport(True, 0)
    for v in range(g.n):
        if is_planar(g.delete_vertex(v)):
            return ApexReport(True, v)
    return ApexReport(False)


def is_two_apex(g: Graph) -> bool:
    """Can deleting some pair of vertices make the graph planar?"""
    if g.n <= 2:
        return True
    for u, v in combinations(range(g.n), 2):
        mask = g.vertex_mask & ~(1 << u) & ~(1 << v)
        sub, _ = g.induced(mask)
        if is_planar(sub):
            return True
    return False


def classify_maxnil_apex(g: Graph, verify: bool = False) -> bool:
    """Apex status of a graph the caller guarantees to be maxnIL.

    For maxnIL graphs, being apex, having a vertex of degree n-1, and
    being a cone over a maximal planar graph are equivalent, so the cheap
    degree test decides.  With verify=True all three criteria are computed
    and must agree; disagreement means the input was not maxnIL (or a bug)
    and raises PropositionViolation.
    """
    n = g.n
    by_degree = max(g.degrees()) == n - 1 if n >= 2 else True
    if verify:
        by_apex = apex_report(g).is_apex
        by_cone = any(
            g.degree(v) == n - 1 and is_maximal_planar(g.delete_vertex(v))
            for v in range(n)
        ) if n >= 4 else by_degree
        if not (by_degree == by_apex == by_cone):
            raise PropositionViolation(
                f"apex criteria disagree on {g!r}: degree={by_degree} "
                f"apex={by_apex} cone={by_cone}"
            )
    return by_degree
