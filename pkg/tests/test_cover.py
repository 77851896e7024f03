"""Cover semantics: bijections, straightening, residuals, the solver."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_cover, random_graph, random_sigma
from dpcolor.cover import (
    CoverError, CoverInstance, brute_force_transversal, compose,
    enumerate_matchings, extend_precoloring, find_transversal, identity,
    invert, is_independent, is_straight, residual, straighten,
)
from dpcolor.graphs import Graph


class TestBijections:
    def test_identity(self):
        assert identity(4) == (1, 2, 3, 4)

    def test_invert_compose(self):
        s = (2, 3, 1, 4)
        assert compose(invert(s), s) == identity(4)
        assert compose(s, invert(s)) == identity(4)

    @given(st.permutations(list(range(1, 5))), st.permutations(list(range(1, 5))))
    def test_compose_associates_with_apply(self, a, b):
        a, b = tuple(a), tuple(b)
        for c in range(1, 5):
            assert compose(a, b)[c - 1] == a[b[c - 1] - 1]


class TestInstance:
    def test_sigma_must_cover_edges(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(CoverError):
            CoverInstance(g, 2, (frozenset({1}), frozenset({1})), {})

    def test_sigma_must_be_bijection(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(CoverError):
            CoverInstance(g, 2, (frozenset({1}), frozenset({1})),
                          {(0, 1): (1, 1)})

    def test_edge_map_reverse_is_inverse(self):
        g = Graph.from_edges(2, [(0, 1)])
        inst = CoverInstance.straight(g, 3).with_available([{1, 2}, {1, 2}])
        rng = random.Random(0)
        inst = CoverInstance(g, 3, inst.available, random_sigma(rng, g, 3))
        fwd, bwd = inst.edge_map(0, 1), inst.edge_map(1, 0)
        assert compose(fwd, bwd) == identity(3)

    def test_conflicts_symmetric(self):
        g = Graph.from_edges(2, [(0, 1)])
        inst = CoverInstance(
            g, 2, (frozenset({1, 2}),) * 2, {(0, 1): (2, 1)})
        assert inst.conflicts(0, 1, 1, 2)
        assert inst.conflicts(1, 2, 0, 1)
        assert not inst.conflicts(0, 1, 1, 1)


class TestStraighten:
    def test_cyclic_shift_path(self):
        # path u-v with a cyclic shift becomes identity after straightening
        g = Graph.from_edges(2, [(0, 1)])
        shift = (2, 3, 4, 1)
        inst = CoverInstance(g, 4, (frozenset(range(1, 5)),) * 2,
                             {(0, 1): shift})
        out, _ = straighten(inst, [(0, 1)])
        assert is_straight(out, (0, 1))

    def test_rejects_cycle(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        inst = CoverInstance.straight(g, 2)
        with pytest.raises(CoverError):
            straighten(inst, [(0, 1), (1, 2), (0, 2)])

    @given(st.integers(0, 10**6))
    @settings(max_examples=100, deadline=None)
    def test_tree_edges_become_straight(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(2, 8), 0.6)
        inst = random_cover(rng, g, rng.randint(2, 4))
        tree = _random_forest(rng, g)
        out, pi = straighten(inst, tree)
        for e in tree:
            assert is_straight(out, e)
        # renamed transversals correspond: map a found one back
        t = find_transversal(out)
        if t is not None:
            back = {v: invert(pi[v])[c - 1] for v, c in t.items()}
            assert is_independent(inst, back)


def _random_forest(rng, g):
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    edges = sorted(g.edges)
    rng.shuffle(edges)
    out = []
    for u, v in edges:
        if find(u) != find(v):
            parent[find(u)] = find(v)
            out.append((u, v))
    return out


class TestResidual:
    def test_counts_matched_colors(self):
        g = Graph.from_edges(2, [(0, 1)])
        inst = CoverInstance(
            g, 3, (frozenset({1, 2, 3}),) * 2, {(0, 1): (3, 1, 2)})
        assert residual(inst, {0: 1}, 1) == frozenset({1, 2})

    def test_assigned_vertex_rejected(self):
        g = Graph.from_edges(2, [(0, 1)])
        inst = CoverInstance.straight(g, 2)
        with pytest.raises(CoverError):
            residual(inst, {0: 1}, 0)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_residual_lower_bound(self, seed):
        # |residual| >= |available| - number of assigned neighbors
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(2, 7), 0.5)
        inst = random_cover(rng, g, 4, full_lists=True)
        assigned = {
            v: rng.randint(1, 4) for v in range(g.n) if rng.random() < 0.5
        }
        for v in range(g.n):
            if v in assigned:
                continue
            nbrs = sum(1 for u in g.adjacency[v] if u in assigned)
            assert len(residual(inst, assigned, v)) >= 4 - nbrs


class TestSolver:
    def test_triangle_straight_k2_none(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert find_transversal(CoverInstance.straight(g, 2)) is None

    def test_found_assignment_is_independent(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        inst = CoverInstance.straight(g, 3)
        t = find_transversal(inst)
        assert t is not None and is_independent(inst, t)

    def test_precolor_must_be_independent(self):
        g = Graph.from_edges(2, [(0, 1)])
        inst = CoverInstance.straight(g, 2)
        with pytest.raises(CoverError):
            extend_precoloring(inst, {0: 1, 1: 1})

    def test_extends_partial(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        inst = CoverInstance.straight(g, 2)
        t = extend_precoloring(inst, {1: 2})
        assert t is not None and t[1] == 2 and is_independent(inst, t)

    @given(st.integers(0, 10**6))
    @settings(max_examples=150, deadline=None)
    def test_agrees_with_brute_force(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 5), 0.6)
        inst = random_cover(rng, g, rng.randint(2, 3))
        fast = find_transversal(inst)
        slow = brute_force_transversal(inst)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert is_independent(inst, fast)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_monotone_in_availability(self, seed):
        # enlarging lists never destroys solvability
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(2, 6), 0.5)
        inst = random_cover(rng, g, 4)
        if find_transversal(inst) is None:
            return
        grown = inst.with_available([
            set(a) | {rng.randint(1, 4)} for a in inst.available
        ])
        assert find_transversal(grown) is not None


class TestEnumerateMatchings:
    def test_count_and_uniqueness(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        all_sigma = [
            tuple(sorted(m.items())) for m in enumerate_matchings(g, 3)
        ]
        assert len(all_sigma) == 36
        assert len(set(all_sigma)) == 36

    def test_fixed_edges_respected(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        fixed = {(0, 1): (2, 1, 3)}
        seen = list(enumerate_matchings(g, 3, fixed=fixed))
        assert len(seen) == 6
        assert all(m[(0, 1)] == (2, 1, 3) for m in seen)

    def test_split_partitions_stream(self):
        g = Graph.from_edges(2, [(0, 1)])
        whole = [tuple(sorted(m.items())) for m in enumerate_matchings(g, 3)]
        parts = []
        for i in range(3):
            parts += [
                tuple(sorted(m.items()))
                for m in enumerate_matchings(g, 3, split=(i, 3))
            ]
        assert sorted(parts) == sorted(whole)
