"""Reducibility checker: strategies, golden verdicts, proof-structure facts."""

import itertools
from pathlib import Path

import pytest

from dpcolor.cover import CoverInstance, find_transversal
from dpcolor.graphs import Graph
from dpcolor.io import parse_cover_file
from dpcolor.patterns import builtin_assets_dir
from dpcolor.reduce import (
    INCONCLUSIVE, NOT_REDUCIBLE, REDUCIBLE, Configuration,
    check_greedy_certificate, check_reducible, config_catalog,
    extend_to_bijection, maximal_injections, residual_choices, verify_witness,
)

ASSETS = Path(builtin_assets_dir())
CATALOG = config_catalog()


class TestBuildingBlocks:
    @pytest.mark.parametrize("na,nb,count", [
        (3, 3, 6), (2, 3, 6), (2, 2, 2), (3, 4, 24), (2, 4, 12), (4, 4, 24),
    ])
    def test_maximal_injection_counts(self, na, nb, count):
        a = frozenset(range(1, na + 1))
        b = frozenset(range(1, nb + 1))
        assert len(maximal_injections(a, b)) == count

    def test_injections_are_injective_and_maximal(self):
        a, b = frozenset({1, 2}), frozenset({2, 3, 4})
        for m in maximal_injections(a, b):
            assert len(set(m.values())) == len(m) == 2
            assert set(m) <= a and set(m.values()) <= b

    def test_extend_to_bijection(self):
        full = extend_to_bijection({1: 3, 2: 1})
        assert sorted(full) == [1, 2, 3, 4]
        assert full[0] == 3 and full[1] == 1

    def test_residual_choices_all_canonical_without_tree(self):
        cfg = CATALOG["L4-diamond"]
        choices = list(residual_choices(cfg))
        assert len(choices) == 1
        assert choices[0][cfg.vertex("x")] == frozenset({1, 2})

    def test_residual_choices_vary_tree_non_reps(self):
        cfg = CATALOG["L7-555"]
        choices = list(residual_choices(cfg))
        # tree component {u,v,w,x,y}: rep is canonical, x and y are full
        # (floor 4), so u or w and v vary over floor-sized subsets
        assert len(choices) > 1
        reps = {tuple(sorted(c.items())) for c in choices}
        assert len(reps) == len(choices)


class TestGoldenVerdictsCheap:
    def test_l2(self):
        v = check_reducible(CATALOG["L2"])
        assert v.status == REDUCIBLE

    def test_l4(self):
        v = check_reducible(CATALOG["L4-diamond"])
        assert v.status == REDUCIBLE

    def test_l5(self):
        v = check_reducible(CATALOG["L5-special5"])
        assert v.status == REDUCIBLE

    def test_l6_margin_is_exactly_one(self):
        v = check_reducible(CATALOG["L6-precolor"])
        assert v.status == REDUCIBLE
        # some branch really does lose one color, so the margin is tight
        assert v.stats["worst_bad_colors"] == 1

    def test_budget_exhaustion_is_inconclusive(self):
        v = check_reducible(CATALOG["L4-diamond"], budget=10)
        assert v.status == INCONCLUSIVE
        assert "budget" in v.stats["reason"]

    def test_split_shares_cover_product_space(self):
        whole = check_reducible(CATALOG["L4-diamond"])
        total = 0
        for i in range(3):
            part = check_reducible(CATALOG["L4-diamond"], split=(i, 3))
            assert part.status == REDUCIBLE
            total += part.stats["enumerated"]
        assert total == whole.stats["enumerated"]

    def test_sampled_mode_deterministic(self):
        a = check_reducible(CATALOG["L4-diamond"], mode="sampled", seed=11,
                            count=200)
        b = check_reducible(CATALOG["L4-diamond"], mode="sampled", seed=11,
                            count=200)
        assert a.status == b.status == INCONCLUSIVE


class TestCounterexampleGadgets:
    @pytest.mark.parametrize("name", ["ce6.json", "ce7.json"])
    def test_frozen_witness_has_no_transversal(self, name):
        inst = parse_cover_file(ASSETS / name)
        assert verify_witness(inst)

    @pytest.mark.parametrize("name", ["ce6.json", "ce7.json"])
    def test_straightened_variant_is_colorable(self, name):
        # the twist is essential: identity matchings admit a transversal
        inst = parse_cover_file(ASSETS / name)
        straight = CoverInstance.straight(
            inst.graph, inst.k, inst.available)
        assert find_transversal(straight) is not None

    def test_ce6_floors_match_configuration(self):
        cfg = CATALOG["CE-6"]
        inst = parse_cover_file(ASSETS / "ce6.json")
        assert tuple(len(a) for a in inst.available) == cfg.floors


class TestGreedyCertificate:
    def test_positive_single_vertex(self):
        assert check_greedy_certificate(CATALOG["L2"], ["v"])

    def test_positive_with_pivot(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        cfg = Configuration(
            "path-uvw", g, {"u": 0, "v": 1, "w": 2}, (2, 3, 2), (),
            "product")
        assert check_greedy_certificate(
            cfg, ["w", "u"], pivot=("v", "u", 2))

    def test_negative_bad_order(self):
        # coloring the floor-3 pair first can strand a floor-2 tip
        assert not check_greedy_certificate(
            CATALOG["L4-diamond"], ["u", "v", "x", "y"])

    def test_order_must_cover_vertices(self):
        with pytest.raises(ValueError):
            check_greedy_certificate(CATALOG["L4-diamond"], ["u", "v"])


def _swap12(m):
    tau = {1: 2, 2: 1, 3: 3, 4: 4}
    return {tau[c]: tau[i] for c, i in m.items()}


class TestSevenClusterBlockingPatterns:
    """Structure of matchings that survive the local coloring exits.

    For the 7-face cluster with straight tree uv, vw, vy, yx, residuals
    u,w = {1,2,3}, v = {1,2}, x,y full, classify the maps on the edges uw,
    ux, wx.  A combination is 'escaped' when one of the direct coloring
    exits applies; every non-escaped combination must, after renaming colors
    1 and 2, pin the x-edges to one of exactly two patterns:

      (b)  ux: 2->1, 1->2   and  wx: 2->1, 1->2
      (c)  ux: 2->1, 3->2   and  wx: 2->1, 3->2
    """

    def _classify(self, m_uw, m_ux, m_wx):
        if m_uw[3] != 3:
            return "escape"  # the spare colors of u and w are compatible
        if any(m_ux[i] == i or m_wx[i] == i for i in (1, 2)):
            return "escape"  # (x,i) selectable together with (v,i)
        for m in (m_ux, m_wx):
            for i in (1, 2):
                if i not in m.values():
                    return "escape"  # (x,i) unconstrained on that side
        if m_ux[2] != 1:
            if m_ux[1] != 2:
                return "violation"
            m_uw, m_ux, m_wx = _swap12(m_uw), _swap12(m_ux), _swap12(m_wx)
        if m_ux[1] == 2:  # second x-color pinned by u's low colors
            if m_wx[3] in (1, 2):
                return "escape"
            if m_wx[2] == 1 and m_wx[1] == 2:
                return "b"
            return "violation"
        if m_ux[3] == 2:  # second x-color pinned by u's spare color
            if m_wx[3] == 1 or m_wx[1] == 2:
                return "escape"
            if m_wx[2] == 1 and m_wx[3] == 2:
                return "c"
            return "violation"
        return "violation"

    def test_survivors_match_two_patterns(self):
        uvw = frozenset({1, 2, 3})
        full = frozenset({1, 2, 3, 4})
        seen = {"b": 0, "c": 0, "escape": 0}
        for m_uw in maximal_injections(uvw, uvw):
            for m_ux in maximal_injections(uvw, full):
                for m_wx in maximal_injections(uvw, full):
                    kind = self._classify(m_uw, m_ux, m_wx)
                    assert kind != "violation", (m_uw, m_ux, m_wx)
                    seen[kind] += 1
        # both blocking patterns are realizable, so neither case is vacuous
        assert seen["b"] > 0 and seen["c"] > 0


class TestWitnessContract:
    def test_not_reducible_verdicts_ship_verified_witnesses(self):
        v = check_reducible(CATALOG["CE-6"])
        assert v.status == NOT_REDUCIBLE
        assert v.witness is not None
        assert verify_witness(v.witness)

    def test_expectations_recorded(self):
        assert CATALOG["CE-6"].expect == NOT_REDUCIBLE
        assert CATALOG["L8-556"].expect == REDUCIBLE
