"""File formats, corpus ingestion, and the command-line front end."""

import json
from pathlib import Path

import pytest

from dpcolor import cli
from dpcolor.cover import CoverInstance
from dpcolor.graphs import Graph, PlaneGraph
from dpcolor.io import (
    CorpusStats, FormatError, cover_to_dict, graph_from_dict, graph_to_dict,
    ingest_corpus, parse_cover_file, parse_config_file, parse_graph_file,
    parse_planar_code_line, sigma_from_dict, write_cover_file,
    write_graph_file,
)
from dpcolor.patterns import builtin_assets_dir, butterfly_pattern

ASSETS = Path(builtin_assets_dir())


class TestGraphFiles:
    def test_round_trip_plane(self, tmp_path):
        src = parse_graph_file(ASSETS / "cluster_05.json")
        out = tmp_path / "g.json"
        write_graph_file(out, src)
        again = parse_graph_file(out)
        assert graph_to_dict(again) == graph_to_dict(src)

    def test_asset_round_trip_field_identical(self, tmp_path):
        for name in ("cluster_03.json", "butterfly.json", "c7.json"):
            data = json.loads((ASSETS / name).read_text())
            g = graph_from_dict(data)
            redone = graph_to_dict(
                g, {k: data[k] for k in ("name", "code", "labels")})
            assert redone == data

    def test_loop_edge_rejected(self):
        with pytest.raises(FormatError) as exc:
            graph_from_dict({"n": 2, "edges": [[1, 1]]})
        assert "loop" in str(exc.value)

    def test_missing_rotation_vertex(self):
        with pytest.raises(FormatError):
            graph_from_dict(
                {"n": 2, "edges": [[0, 1]], "rotation": {"0": [1]}})

    def test_graph_without_rotation(self):
        g = graph_from_dict({"n": 2, "edges": [[0, 1]]})
        assert isinstance(g, Graph) and not isinstance(g, PlaneGraph)


class TestCoverFiles:
    def test_round_trip(self, tmp_path):
        inst = parse_cover_file(ASSETS / "ce6.json")
        out = tmp_path / "w.json"
        write_cover_file(out, inst)
        again = parse_cover_file(out)
        assert cover_to_dict(again) == cover_to_dict(inst)

    def test_sigma_key_ordering_enforced(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(FormatError):
            sigma_from_dict({"k": 2, "sigma": {"1-0": [1, 2]}}, g)

    def test_sigma_must_cover_edges(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(FormatError):
            sigma_from_dict({"k": 2, "sigma": {}}, g)


class TestPlanarCode:
    def test_triangle_line(self):
        pg = parse_planar_code_line("3 bc,ca,ab")
        assert pg.graph.m == 3 and len(pg.faces) == 2

    def test_malformed_line(self):
        with pytest.raises(FormatError):
            parse_planar_code_line("3 bc,ca")


class TestConfigFiles:
    def test_parse(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({
            "label": "tip", "n": 2, "edges": [[0, 1]],
            "names": {"u": 0, "v": 1}, "floors": [2, 1],
            "strategy": "product",
        }))
        cfg = parse_config_file(path)
        assert cfg.label == "tip" and cfg.floors == (2, 1)

    def test_missing_strategy(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"n": 1, "edges": [], "floors": [1]}))
        with pytest.raises(FormatError):
            parse_config_file(path)


class TestCorpus:
    def _write_corpus(self, tmp_path):
        d = tmp_path / "corpus"
        d.mkdir()
        from dpcolor.generate import generate_corpus
        for i, pg in enumerate(generate_corpus(6, seed=5, min_n=6, max_n=10)):
            write_graph_file(d / f"g{i}.json", pg)
        write_graph_file(d / "butterfly_host.json",
                         butterfly_pattern().plane)
        (d / "broken.json").write_text("{not json")
        return d

    def test_filters_and_counts(self, tmp_path):
        d = self._write_corpus(tmp_path)
        stats = CorpusStats()
        out = list(ingest_corpus(
            d, ("no-butterfly", "no-7-cycles"), stats, warn=lambda m: None))
        assert stats.read == 7
        assert stats.skipped == 1
        assert stats.rejected.get("no-butterfly", 0) == 1
        assert len(out) == 6

    def test_empty_directory(self, tmp_path):
        d = tmp_path / "empty"
        d.mkdir()
        stats = CorpusStats()
        assert list(ingest_corpus(d, (), stats)) == []
        assert stats.read == 0 and stats.rejected == {}

    def test_multi_record_file(self, tmp_path):
        path = tmp_path / "many.txt"
        path.write_text(
            "3 bc,ca,ab\n"
            + json.dumps({"n": 2, "edges": [[0, 1]]}) + "\n")
        out = list(ingest_corpus(path))
        assert len(out) == 2

    def test_unknown_filter_rejected(self, tmp_path):
        d = tmp_path / "empty2"
        d.mkdir()
        with pytest.raises(ValueError):
            list(ingest_corpus(d, ("no-squares",)))


class TestRunConfig:
    def test_k_bounds(self):
        with pytest.raises(ValueError):
            cli.RunConfig("solve", k=9)

    def test_sampled_needs_seed(self):
        with pytest.raises(ValueError):
            cli.RunConfig("reduce-check", mode="sampled")

    def test_workers_positive(self):
        with pytest.raises(ValueError):
            cli.RunConfig("solve", workers=0)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestCli:
    def test_solve_reports_found(self, capsys):
        code, out = run_cli(
            capsys, "solve", str(ASSETS / "cluster_01.json"), "--k", "4")
        assert code == 0
        assert json.loads(out)["verdict"] == "FOUND"

    def test_solve_straight_triangle_k2_none(self, capsys, tmp_path):
        path = tmp_path / "c3.json"
        path.write_text(json.dumps(
            {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}))
        code, out = run_cli(capsys, "solve", str(path), "--k", "2")
        assert code == 0
        assert json.loads(out)["verdict"] == "NONE"

    def test_detect_cluster_10(self, capsys):
        code, out = run_cli(capsys, "detect", str(ASSETS / "cluster_10.json"))
        assert code == 0
        rep = json.loads(out)
        assert rep["clusters"][0]["code"] == 10
        assert rep["seven_cycle"] is None

    def test_detect_with_assets_dir(self, capsys):
        code, out = run_cli(
            capsys, "detect", str(ASSETS / "butterfly.json"),
            "--assets", str(ASSETS))
        rep = json.loads(out)
        assert rep["asset_patterns"]["butterfly"] is not None
        assert rep["asset_patterns"]["cluster-11"] is None

    def test_reduce_check_lemma(self, capsys):
        code, out = run_cli(capsys, "reduce-check", "--lemma", "L4-diamond")
        rep = json.loads(out)
        assert code == 0 and rep["status"] == "REDUCIBLE"
        assert rep["enumerated"] == 7776

    def test_reduce_check_counterexample_exit_zero(self, capsys):
        code, out = run_cli(capsys, "reduce-check", "--lemma", "CE-6")
        rep = json.loads(out)
        assert code == 0 and rep["status"] == "NOT_REDUCIBLE"
        assert "witness" in rep

    def test_reduce_check_unknown_label(self, capsys):
        code = cli.main(["reduce-check", "--lemma", "nope"])
        assert code == 1

    def test_witness_verify(self, capsys):
        code, out = run_cli(
            capsys, "witness-verify", str(ASSETS / "ce7.json"))
        rep = json.loads(out)
        assert code == 0 and rep["status"] == "CONFIRMED"

    def test_discharge_audit(self, capsys, tmp_path):
        from dpcolor.generate import random_plane_graph
        path = tmp_path / "g.json"
        write_graph_file(path, random_plane_graph(1, 9))
        code, out = run_cli(
            capsys, "discharge", "audit", str(path), "--force-rules")
        rep = json.loads(out)
        assert code == 0
        assert rep["verdict"] == "forced-run-arithmetic-ok"
        assert "accounts" in rep and "outer_identity" in rep

    def test_discharge_explain(self, capsys, tmp_path):
        from dpcolor.generate import random_plane_graph
        path = tmp_path / "g.json"
        write_graph_file(path, random_plane_graph(1, 9))
        code, out = run_cli(
            capsys, "discharge", "explain", str(path), "--element", "OUTER")
        rep = json.loads(out)
        assert code == 0 and rep["element"] == "OUTER"
        assert rep["transfers"]

    def test_corpus_verb(self, capsys, tmp_path):
        d = tmp_path / "c"
        d.mkdir()
        from dpcolor.generate import generate_corpus
        for i, pg in enumerate(generate_corpus(3, seed=9, min_n=6, max_n=9)):
            write_graph_file(d / f"g{i}.json", pg)
        code, out = run_cli(capsys, "corpus", str(d), "--filter",
                            "no-7-cycles")
        rep = json.loads(out)
        assert code == 0 and rep["read"] == 3

    def test_reports_deterministic(self, capsys):
        _, a = run_cli(capsys, "detect", str(ASSETS / "cluster_07.json"))
        _, b = run_cli(capsys, "detect", str(ASSETS / "cluster_07.json"))
        assert a == b

    def test_worker_pool_same_verdict(self, capsys):
        _, solo = run_cli(capsys, "reduce-check", "--lemma", "L4-diamond")
        _, multi = run_cli(capsys, "reduce-check", "--lemma", "L4-diamond",
                           "--workers", "2")
        ra, rb = json.loads(solo), json.loads(multi)
        for key in ("status", "enumerated"):
            assert ra[key] == rb[key]

    def test_text_format(self, capsys):
        code, out = run_cli(
            capsys, "detect", str(ASSETS / "cluster_01.json"),
            "--format", "text")
        assert code == 0 and "clusters" in out and "{" not in out

    def test_unreadable_input_is_operational_error(self, capsys):
        code = cli.main(["solve", "/does/not/exist.json"])
        assert code == 1
