import random

import pytest

import corpusgen
import oracles
from linkless.errors import PropositionViolation, TooSmall
from linkless.graph import (
    complete,
    complete_bipartite,
    cycle,
    from_edges,
    octahedron,
    petersen,
)
from linkless.planarity import (
    apex_report,
    classify_maxnil_apex,
    is_maximal_planar,
    is_planar,
    is_two_apex,
)


def test_kuratowski_basics():
    assert not is_planar(complete(5))
    assert is_planar(complete(4))
    assert not is_planar(complete_bipartite(3, 3))
    assert is_planar(complete_bipartite(2, 100 // 10))
    assert not is_planar(petersen())


def test_planarity_matches_networkx_on_random_graphs():
    rng = random.Random(21)
    for _ in range(400):
        n = rng.randint(3, 11)
        p = rng.uniform(0.2, 0.8)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        )
        assert is_planar(g) == oracles.nx_planar(g)


def test_maximal_planar():
    assert is_maximal_planar(complete(4))
    assert not is_maximal_planar(cycle(5))
    assert is_maximal_planar(octahedron())
    with pytest.raises(TooSmall):
        is_maximal_planar(complete(2))


def test_order6_triangulation_count(atlas):
    """Exactly two plane triangulations on 6 vertices."""
    hits = [g for g in atlas if g.n == 6 and g.m == 12 and is_maximal_planar(g)]
    assert len(hits) == 2


def test_triangulations_are_maximal_planar(triangulations_by_order):
    for t in triangulations_by_order(9):
        assert is_maximal_planar(t)


def test_apex_examples():
    assert apex_report(complete(5)).is_apex
    assert apex_report(complete(5)).witness == 0
    assert not apex_report(complete(7)).is_apex
    assert not apex_report(petersen()).is_apex


def test_two_apex():
    assert is_two_apex(complete(6))
    assert not is_two_apex(complete(8))
    assert is_two_apex(petersen())


def test_classify_k6_minus_edge():
    """In K6 minus an edge the four untouched vertices keep degree 5 = n-1,
    and deleting one of them must leave a maximal planar graph."""
    g = complete(6).without_edge(0, 1)
    assert sorted(g.degrees()) == [4, 4, 5, 5, 5, 5]
    assert classify_maxnil_apex(g, verify=True)
    v = next(v for v in range(6) if g.degree(v) == 5)
    assert is_maximal_planar(g.delete_vertex(v))


def test_classify_cone_over_triangulation(triangulations_by_order):
    for t in triangulations_by_order(7):
        assert classify_maxnil_apex(t.cone(), verify=True)


def test_classify_detects_inconsistency():
    # C6 is planar (so apex) but has no degree-(n-1) vertex: the three
    # criteria disagree because C6 is nowhere near maxnIL
    with pytest.raises(PropositionViolation):
        classify_maxnil_apex(cycle(6), verify=True)


def test_random_triangulation_plus_apex_is_planar_only_after_deletion():
    rng = random.Random(22)
    for _ in range(20):
        t = corpusgen.random_planar_triangulation(rng, rng.randint(5, 9))
        g = t.cone()
        rep = apex_report(g)
        assert rep.is_apex
        assert is_planar(g.delete_vertex(rep.witness))
