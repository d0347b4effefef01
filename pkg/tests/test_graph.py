import io
import random
from itertools import combinations

import pytest

from minorsat.graph import (
    Graph,
    GraphError,
    complete,
    complete_bipartite,
    compose,
    cycle,
    from_edge_list_text,
    generalized_petersen,
    gp_dihedral_group,
    gp_label,
    is_automorphism,
    make_graph,
    nonedge_orbits,
    parse_gp_label,
    path,
    star,
    to_edge_list_text,
    vertex_connectivity,
    wagner,
)


def test_make_graph_triangle():
    g = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert g.n == 3 and g.m == 3


def test_make_graph_empty_and_dedup():
    assert make_graph(2, []).m == 0
    assert make_graph(4, [(0, 1), (1, 0), (1, 2)]).m == 2


def test_make_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        make_graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        make_graph(3, [(1, 1)])


def test_named_generators():
    assert (complete(6).n, complete(6).m) == (6, 15)
    w = wagner()
    assert (w.n, w.m) == (8, 12)
    assert set(w.degrees()) == {3}
    s = star(4)
    assert (s.n, s.m) == (5, 4)
    assert sorted(s.degrees(), reverse=True) == [4, 1, 1, 1, 1]
    assert path(3).edges == ((0, 1), (1, 2))
    assert cycle(5).m == 5
    assert complete_bipartite(3, 3).m == 9
    with pytest.raises(GraphError):
        cycle(2)
    with pytest.raises(GraphError):
        complete(0)


@pytest.mark.parametrize("n,k,edges", [(8, 3, 24), (13, 5, 39), (19, 7, 57)])
def test_generalized_petersen_counts(n, k, edges):
    g = generalized_petersen(n, k)
    assert g.n == 2 * n
    assert g.m == edges == 3 * n
    assert set(g.degrees()) == {3}


def test_generalized_petersen_structure():
    g = generalized_petersen(8, 3)
    for i in range(8):
        assert g.has_edge(i, (i + 1) % 8)       # outer cycle
        assert g.has_edge(i, 8 + i)             # spokes
        assert g.has_edge(8 + i, 8 + (i + 3) % 8)  # inner skips


def test_generalized_petersen_rejects_bad_params():
    for n, k in [(8, 4), (8, 0), (2, 1), (6, 3), (5, 4)]:
        with pytest.raises(GraphError):
            generalized_petersen(n, k)


def test_gp_labels():
    assert str(gp_label(8, 3)) == "x3"
    assert str(gp_label(8, 12)) == "y4"
    assert parse_gp_label("y12").vertex(13) == 25
    assert parse_gp_label("x0").vertex(8) == 0
    with pytest.raises(GraphError):
        parse_gp_label("z3")


def test_basic_queries():
    assert generalized_petersen(8, 3).is_triangle_free()
    assert not complete(3).is_triangle_free()
    assert star(4).min_degree() == 1
    assert not make_graph(2, []).is_connected()
    assert make_graph(1, []).is_connected()
    comps = make_graph(5, [(0, 1), (3, 4)]).connected_components()
    assert comps == [[0, 1], [2], [3, 4]]


def test_triangle_free_matches_enumeration():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(3, 8)
        g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.4])
        brute = any(
            g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
            for a, b, c in combinations(range(n), 3)
        )
        assert g.is_triangle_free() == (not brute)


def test_vertex_connectivity_known_values():
    assert vertex_connectivity(complete(5)) == 4
    assert vertex_connectivity(cycle(5)) == 2
    assert vertex_connectivity(complete_bipartite(3, 3)) == 3
    assert vertex_connectivity(make_graph(2, [])) == 0
    assert vertex_connectivity(path(2)) == 1
    with pytest.raises(GraphError):
        vertex_connectivity(make_graph(1, []))


def _brute_connectivity(g):
    # independent recomputation over adjacency dicts
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}

    def connected(vertices):
        vertices = set(vertices)
        if not vertices:
            return True
        seen = set()
        stack = [min(vertices)]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v] & vertices - seen)
        return seen == vertices

    for k in range(g.n):
        for cut in combinations(range(g.n), k):
            rest = set(range(g.n)) - set(cut)
            if len(rest) <= 1 or not connected(rest):
                return k
    raise AssertionError


def test_vertex_connectivity_matches_brute_force():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(2, 7)
        g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
        assert vertex_connectivity(g) == _brute_connectivity(g)


def test_is_automorphism():
    g = generalized_petersen(8, 3)
    assert is_automorphism(g, tuple(range(16)))
    rot = [(i + 1) % 8 for i in range(8)] + [8 + (i + 1) % 8 for i in range(8)]
    assert is_automorphism(g, rot)
    s = star(3)  # swapping the center with a leaf breaks degrees
    assert not is_automorphism(s, (1, 0, 2, 3))
    with pytest.raises(GraphError):
        is_automorphism(s, (0, 1, 2))
    with pytest.raises(GraphError):
        is_automorphism(s, (0, 0, 2, 3))


def test_gp_dihedral_group():
    group = gp_dihedral_group(8)
    assert len(group) == 16
    assert len(set(group)) == 16
    g = generalized_petersen(8, 3)
    assert all(is_automorphism(g, p) for p in group)
    assert tuple(range(16)) in group
    members = set(group)
    for p in group[:4]:
        for q in group[:4]:
            assert compose(p, q) in members


@pytest.mark.parametrize("n,k,count", [(8, 3, 10), (13, 5, 16), (19, 7, 25)])
def test_nonedge_orbit_counts(n, k, count):
    g = generalized_petersen(n, k)
    assert len(nonedge_orbits(g, gp_dihedral_group(n))) == count


def test_nonedge_orbits_gp83_exact():
    g = generalized_petersen(8, 3)
    reps = nonedge_orbits(g, gp_dihedral_group(8))
    want = [(0, 2), (0, 3), (0, 4),            # x0x2, x0x3, x0x4
            (0, 9), (0, 10), (0, 11), (0, 12),  # x0y1 .. x0y4
            (8, 9), (8, 10), (8, 12)]           # y0y1, y0y2, y0y4
    assert reps == want


def test_nonedge_orbits_cover_exactly():
    from minorsat.graph import apply_to_pair

    g = generalized_petersen(13, 5)
    group = gp_dihedral_group(13)
    reps = nonedge_orbits(g, group)
    covered = set()
    for rep in reps:
        orbit = {apply_to_pair(p, rep) for p in group}
        assert not orbit & covered, "orbits overlap"
        covered |= orbit
    assert covered == set(g.non_edges())


def test_nonedge_orbits_rejects_non_automorphism():
    g = path(4)
    with pytest.raises(GraphError):
        nonedge_orbits(g, [(1, 0, 2, 3)])


def test_add_edge():
    g = path(3).add_edge(0, 2)
    assert g.m == 3
    gp = generalized_petersen(8, 3)
    assert gp.add_edge(0, 10).m == 25
    assert gp.m == 24  # original unchanged
    with pytest.raises(GraphError):
        gp.add_edge(0, 8)  # spoke already present
    with pytest.raises(GraphError):
        gp.add_edge(2, 2)


def test_edge_list_round_trip():
    rng = random.Random(3)
    graphs = [wagner(), generalized_petersen(8, 3), make_graph(2, []), star(4)]
    for _ in range(20):
        n = rng.randint(1, 9)
        graphs.append(Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.4]))
    for g in graphs:
        assert from_edge_list_text(to_edge_list_text(g)) == g


def test_edge_list_parser_tolerates_noise():
    text = "# comment\n\n  4 3 \n2 1\n# another\n 3   0\n1 0\n"
    g = from_edge_list_text(text)
    assert g == make_graph(4, [(1, 2), (0, 3), (0, 1)])
    with pytest.raises(GraphError):
        from_edge_list_text("3 2\n0 1\n")  # header count mismatch


def test_writer_is_sorted_and_commented():
    text = to_edge_list_text(make_graph(3, [(2, 1), (0, 2)]), comments=["hello"])
    assert text == "# hello\n3 2\n0 2\n1 2\n"
