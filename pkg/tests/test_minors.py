import random

import pytest

import oracles
from linkless.errors import NotATriangle, NotConnected, NotDegreeThree
from linkless.graph import (
    complete,
    complete_bipartite,
    cycle,
    from_edges,
    path,
    petersen,
    star,
)
from linkless.minors import (
    generate_petersen_family,
    has_k6_minor,
    has_minor,
    is_il_minor,
    is_isomorphic,
    min_degree3_kernel,
    petersen_minor_witness,
    triangle_y_move,
    y_triangle_move,
)


# -- moves ------------------------------------------------------------------------


def test_triangle_y_on_k4():
    g = triangle_y_move(complete(4), (0, 1, 2))
    assert g.n == 5 and g.m == 6
    assert g.degree(4) == 3


def test_y_triangle_on_star():
    g = y_triangle_move(star(3), 0)
    assert is_isomorphic(g, complete(3))


def test_move_preconditions():
    with pytest.raises(NotATriangle):
        triangle_y_move(cycle(4), (0, 1, 2))
    with pytest.raises(NotDegreeThree):
        y_triangle_move(complete(5), 0)


def test_move_duality():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(4, 10)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        )
        tris = g.triangles()
        if not tris:
            continue
        t = rng.choice(tris)
        h = triangle_y_move(g, t)
        back = y_triangle_move(h, g.n)
        assert back == g


# -- Petersen family ----------------------------------------------------------------


def test_family_member_count(family):
    assert len(family) == 7


def test_family_order_multiset(family):
    # computed by running the closure; the single 9-vertex member matches
    # references to "the graph G_9 in the Petersen family"
    assert sorted(g.n for g in family) == [6, 7, 7, 8, 8, 9, 10]
    assert all(g.m == 15 for g in family)


def test_family_contains_known_members(family):
    assert any(is_isomorphic(g, complete(6)) for g in family)
    assert any(is_isomorphic(g, petersen()) for g in family)
    k331 = complete_bipartite(3, 3).cone()
    assert any(is_isomorphic(g, k331) for g in family)
    k44e = complete_bipartite(4, 4).without_edge(0, 4)
    assert any(is_isomorphic(g, k44e) for g in family)


def test_family_pairwise_nonisomorphic(family):
    members = list(family)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            assert not is_isomorphic(members[i], members[j])


def test_family_closed_under_moves(family):
    def in_family(g):
        return any(is_isomorphic(g, f) for f in family)

    for g in family:
        for t in g.triangles():
            assert in_family(triangle_y_move(g, t))
        for v in range(g.n):
            if g.degree(v) == 3:
                assert in_family(y_triangle_move(g, v))


def test_family_petersen_member_is_cubic_girth5(family):
    p10 = [g for g in family if g.n == 10][0]
    assert all(d == 3 for d in p10.degrees())
    assert p10.triangle_count() == 0
    # no 4-cycles either: any two adjacent vertices share no neighbor and
    # any two non-adjacent vertices share exactly one
    for u in range(10):
        for v in range(u + 1, 10):
            common = (p10.adj[u] & p10.adj[v]).bit_count()
            assert common == (0 if p10.has_edge(u, v) else 1)


def test_family_members_minor_minimal_il(family):
    """Each member is IL but every single-edge deletion is not."""
    for g in family:
        assert is_il_minor(g)
        for e in g.edges():
            assert not is_il_minor(g.without_edge(*e))


# -- isomorphism ---------------------------------------------------------------------


def test_iso_basics():
    c6 = cycle(6)
    two_triangles = from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_isomorphic(c6, two_triangles)
    assert is_isomorphic(petersen(), _kneser_5_2())
    assert not is_isomorphic(path(4), star(3))


def _kneser_5_2():
    pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    edges = []
    for i, p in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            q = pairs[j]
            if not set(p) & set(q):
                edges.append((i, j))
    return from_edges(10, edges)


def test_iso_random_relabels():
    rng = random.Random(6)
    for _ in range(1000):
        n = rng.randint(2, 11)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        )
        perm = list(range(n))
        rng.shuffle(perm)
        assert is_isomorphic(g, g.relabel(perm))


def test_iso_agrees_with_networkx_on_tricky_pairs():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(5, 9)
        p = rng.choice([0.3, 0.5])
        g1 = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        )
        g2 = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        )
        assert is_isomorphic(g1, g2) == oracles.nx_is_isomorphic(g1, g2)


# -- K6 minors ------------------------------------------------------------------------


def test_k6_minor_basics():
    assert has_k6_minor(complete(6))
    assert has_k6_minor(complete(7))
    assert not has_k6_minor(petersen())
    assert not has_k6_minor(complete(5))
    with pytest.raises(NotConnected):
        has_k6_minor(from_edges(7, [(0, 1), (2, 3), (4, 5), (5, 6)]))


def test_k6_minor_mader_threshold_order11():
    """Any graph on 11 vertices with >= 35 edges has a K6 minor."""
    rng = random.Random(8)
    pairs = [(u, v) for u in range(11) for v in range(u + 1, 11)]
    for _ in range(50):
        m = rng.randint(35, 45)
        g = from_edges(11, rng.sample(pairs, m))
        if g.is_connected():
            assert has_k6_minor(g)


def test_k6_engine_matches_bruteforce():
    rng = random.Random(9)
    for _ in range(150):
        n = rng.randint(6, 9)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6]
        )
        if not g.is_connected():
            continue
        assert has_k6_minor(g) == oracles.k6_minor_by_contraction(g)


def test_engines_agree_on_2connected_order8(graphs8):
    """Contraction enumeration vs branch sets on every 2-connected order-8
    graph with enough edges to matter."""
    k6 = complete(6)
    pool = [
        g for g in graphs8
        if g.m >= 15 and g.vertex_connectivity_at_least(2)
    ]
    assert len(pool) > 1000
    for g in pool:
        assert has_k6_minor(g) == has_minor(g, k6)


# -- general minors -------------------------------------------------------------------


def test_has_minor_basics():
    assert has_minor(complete(6), complete(1))
    assert not has_minor(complete(5), complete(6))
    assert has_minor(petersen(), complete(5))
    assert has_minor(petersen(), complete_bipartite(3, 3))
    assert not has_minor(cycle(9), complete(3).cone())


def test_minor_monotonicity():
    rng = random.Random(10)
    for _ in range(50):
        n = rng.randint(6, 9)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6]
        )
        hn = rng.randint(4, n - 1)
        h = from_edges(
            hn,
            [(u, v) for u in range(hn) for v in range(u + 1, hn) if rng.random() < 0.6],
        )
        kn = rng.randint(3, hn)
        k = from_edges(
            kn,
            [(u, v) for u in range(kn) for v in range(u + 1, kn) if rng.random() < 0.6],
        )
        if has_minor(g, h) and has_minor(h, k):
            assert has_minor(g, k)


def test_kernelized_il_matches_direct_family_search():
    """Degree-<=2 reductions must not change which family minors exist."""
    rng = random.Random(11)
    fam = generate_petersen_family()
    checked = 0
    for _ in range(200):
        n = rng.randint(6, 10)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35]
        )
        direct = any(has_minor(g, f) for f in fam if f.n <= g.n)
        assert is_il_minor(g) == direct
        checked += 1
    assert checked == 200


def test_kernel_output_has_min_degree_3():
    rng = random.Random(14)
    for _ in range(200):
        n = rng.randint(4, 12)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
        )
        kernel = min_degree3_kernel(g)
        if kernel is not None:
            assert min(kernel.degrees()) >= 3


# -- IL by forbidden minors ------------------------------------------------------------


def test_il_examples():
    assert is_il_minor(complete(6))
    assert is_il_minor(complete(7))
    assert not is_il_minor(complete(5))
    assert not is_il_minor(complete(6).without_edge(0, 1))
    assert is_il_minor(petersen())
    k44e = complete_bipartite(4, 4).without_edge(0, 4)
    assert is_il_minor(k44e)
    assert petersen_minor_witness(k44e) == "K44e"


def test_k44_minus_perfect_matching_is_nil():
    """The 3-cube: 12 edges, planar, so certainly not IL (the family's
    bipartite order-8 member is K4,4 minus a single edge, not a matching)."""
    g = complete_bipartite(4, 4)
    for i in range(4):
        g = g.without_edge(i, 4 + i)
    assert g.m == 12
    assert not is_il_minor(g)


def test_planar_graphs_are_not_il():
    rng = random.Random(12)
    import corpusgen

    for _ in range(100):
        n = rng.randint(5, 11)
        g = corpusgen.random_planar_triangulation(rng, n)
        assert not is_il_minor(g)


def test_il_disconnected_by_component():
    g6 = complete(6)
    padded = from_edges(9, [(u, v) for u, v in g6.edges()])
    assert is_il_minor(padded)  # K6 plus three isolated vertices
    scattered = from_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)])
    assert not is_il_minor(scattered)


def test_il_subgraph_monotone_under_edge_addition():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(6, 9)
        g = from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        )
        if not is_il_minor(g):
            continue
        non = g.non_edges()
        if non:
            u, v = rng.choice(non)
            assert is_il_minor(g.with_edge(u, v))
