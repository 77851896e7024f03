"""Plane-graph core: face tracing, Euler identity, cycles, pattern search."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import petersen, random_graph
from dpcolor.generate import PlaneBuilder, random_plane_graph
from dpcolor.graphs import (
    Graph, GraphError, MalformedEmbeddingError, PlaneGraph,
    all_injection_pattern_oracle, contains_pattern, cycle_vertex_sides,
    find_cycle_of_length, has_cycle_of_length, interior_face_ids,
)
from dpcolor.patterns import butterfly_pattern, cluster_pattern


def triangle_with_center():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2)])
    rotation = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]
    return PlaneGraph(g, rotation, [0, 2, 1])


class TestGraph:
    def test_rejects_loop(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(1, 1)])

    def test_rejects_parallel(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 1), (1, 0)])

    def test_degree_and_adjacency(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert g.degree(1) == 2
        assert g.adjacency[0] == frozenset({1})


class TestFaces:
    def test_k4_faces(self):
        pg = triangle_with_center()
        assert len(pg.faces) == 4
        assert pg.euler_check()
        degs = sorted(f.degree for f in pg.faces)
        assert degs == [3, 3, 3, 3]

    def test_outer_face_explicit(self):
        pg = triangle_with_center()
        assert sorted(pg.faces[pg.outer_face].walk) == [0, 1, 2]

    def test_bad_rotation_rejected(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(MalformedEmbeddingError):
            PlaneGraph(g, [[1], [0, 2], [0, 1]])

    def test_face_degree_sum_is_twice_edges(self):
        pg = triangle_with_center()
        assert sum(f.degree for f in pg.faces) == 2 * pg.graph.m

    @given(st.integers(0, 10_000), st.integers(4, 12))
    @settings(max_examples=40, deadline=None)
    def test_builder_embeddings_satisfy_euler(self, seed, target):
        pg = random_plane_graph(seed, target)
        assert pg.euler_check()
        assert sum(f.degree for f in pg.faces) == 2 * pg.graph.m
        # every edge has exactly two face sides
        sides = sum(len(v) for v in pg._edge_faces.values())
        assert sides == 2 * pg.graph.m


class TestCycles:
    def test_c7_found(self):
        g = Graph.from_edges(7, [(i, (i + 1) % 7) for i in range(7)])
        cyc = find_cycle_of_length(g, 7)
        assert cyc is not None and len(cyc) == 7

    def test_c6_has_no_7_cycle(self):
        g = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        assert not has_cycle_of_length(g, 7)

    def test_petersen_has_no_7_cycle(self):
        assert not has_cycle_of_length(petersen(), 7)

    def test_petersen_girth_cycles(self):
        g = petersen()
        assert has_cycle_of_length(g, 5)
        assert has_cycle_of_length(g, 6)
        assert not has_cycle_of_length(g, 3)
        assert not has_cycle_of_length(g, 4)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_cycle_witness_is_a_cycle(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(4, 8), 0.5)
        for length in (3, 5, 7):
            cyc = find_cycle_of_length(g, length)
            if cyc is not None:
                assert len(cyc) == len(set(cyc)) == length
                for i in range(length):
                    assert g.has_edge(cyc[i], cyc[(i + 1) % length])


class TestPatternSearch:
    def test_butterfly_self_match(self):
        pat = butterfly_pattern().graph
        assert contains_pattern(pat, pat) is not None

    def test_witness_maps_edges(self):
        host = cluster_pattern(11).graph
        pat = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        m = contains_pattern(host, pat)
        assert m is not None
        for u, v in pat.edges:
            assert host.has_edge(m[u], m[v])

    @given(st.integers(0, 10**6))
    @settings(max_examples=50, deadline=None)
    def test_matches_naive_oracle(self, seed):
        rng = random.Random(seed)
        host = random_graph(rng, rng.randint(3, 7), 0.5)
        pat = random_graph(rng, rng.randint(2, 4), 0.6)
        fast = contains_pattern(host, pat) is not None
        assert fast == all_injection_pattern_oracle(host, pat)


class TestCycleSides:
    def test_k4_center_is_interior(self):
        pg = triangle_with_center()
        interior, exterior = cycle_vertex_sides(pg, [0, 1, 2])
        assert interior == {3}
        assert exterior == set()

    def test_interior_faces_of_outer_cycle(self):
        pg = triangle_with_center()
        inner = interior_face_ids(pg, list(pg.faces[pg.outer_face].walk))
        assert inner == {f.id for f in pg.interior_faces()}

    def test_non_edge_cycle_rejected(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        pg = PlaneGraph(g, [[1, 3], [2, 0], [3, 1], [0, 2]])
        with pytest.raises(ValueError):
            cycle_vertex_sides(pg, [0, 1, 2])
