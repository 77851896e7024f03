"""Command-line front end: solve, detect, reduce-check, witness-verify,
discharge, corpus.

Every completed run exits 0 regardless of the mathematical verdict; nonzero
exit codes mean operational failure (bad flags, unreadable files).  Reports
are JSON by default, or aligned text tables with --format text.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import clusters as cl
from . import discharge as dc
from . import io as dio
from . import patterns as pt
from . import reduce as rd
from .cover import CoverInstance, extend_precoloring, find_transversal
from .graphs import Graph, PlaneGraph, contains_pattern, find_cycle_of_length

WORKERS_ENV = "DPCOLOR_WORKERS"


@dataclass
class RunConfig:
    verb: str
    paths: list = field(default_factory=list)
    k: int = 4
    mode: str = "full"
    seed: Optional[int] = None
    workers: int = 1
    budget: Optional[int] = None
    count: int = 1000
    fmt: str = "json"

    def __post_init__(self):
        if not 2 <= self.k <= 8:
            raise ValueError(f"k must be in [2, 8], got {self.k}")
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")
        if self.mode == "sampled" and self.seed is None:
            raise ValueError("sampled mode requires --seed")


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        json.dump(report, sys.stdout, indent=1, default=str)
        sys.stdout.write("\n")
    else:
        _emit_text(report)


def _emit_text(report: dict, indent: str = "") -> None:
    for key, val in report.items():
        if isinstance(val, dict):
            print(f"{indent}{key}:")
            _emit_text(val, indent + "  ")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            cols = sorted({c for row in val for c in row})
            widths = {
                c: max(len(c), *(len(str(r.get(c, ""))) for r in val))
                for c in cols
            }
            print(f"{indent}{key}:")
            line = "  ".join(c.ljust(widths[c]) for c in cols)
            print(f"{indent}  {line}")
            for row in val:
                line = "  ".join(
                    str(row.get(c, "")).ljust(widths[c]) for c in cols
                )
                print(f"{indent}  {line}")
        else:
            print(f"{indent}{key}: {val}")


# ---------------------------------------------------------------------------
# verbs


def _parse_precolor(text: Optional[str]) -> dict[int, int]:
    out: dict[int, int] = {}
    if not text:
        return out
    for part in text.split(","):
        v, c = part.split("=")
        out[int(v)] = int(c)
    return out


def cmd_solve(args) -> dict:
    data = dio._load_json(args.input)
    g = dio.graph_from_dict(data, args.input)
    graph = g.graph if isinstance(g, PlaneGraph) else g
    if "sigma" in data:
        inst = dio.parse_cover_file(args.input)
    elif args.matching:
        k, sigma = dio.sigma_from_dict(
            dio._load_json(args.matching), graph, args.matching)
        inst = CoverInstance(
            graph, k, tuple(frozenset(range(1, k + 1))
                            for _ in range(graph.n)), sigma)
    else:
        inst = CoverInstance.straight(graph, args.k)
    pre = _parse_precolor(args.precolor)
    t0 = time.monotonic()
    found = extend_precoloring(inst, pre) if pre else find_transversal(inst)
    return {
        "verdict": "FOUND" if found is not None else "NONE",
        "assignment": None if found is None else {
            str(v): c for v, c in sorted(found.items())},
        "k": inst.k,
        "seconds": round(time.monotonic() - t0, 3),
    }


def cmd_detect(args) -> dict:
    g = dio.parse_graph_file(args.input)
    graph = g.graph if isinstance(g, PlaneGraph) else g
    report: dict = {"n": graph.n, "m": graph.m}
    seven = find_cycle_of_length(graph, 7)
    bf = pt.contains_butterfly(graph)
    report["seven_cycle"] = seven
    report["butterfly"] = None if bf is None else {
        role: v for role, v in sorted(bf.items())}
    if isinstance(g, PlaneGraph):
        report["faces"] = len(g.faces)
        report["euler_ok"] = g.euler_check()
        outer_walk = set(g.faces[g.outer_face].walk)
        internal = [v not in outer_walk for v in range(graph.n)]
        rows = []
        for c in cl.extract_clusters(g):
            cls = cl.classify_cluster(g, c)
            special, _ = (
                dc.classify_special_cluster(c, g, internal)
                if cls.code else (False, {})
            )
            rows.append({
                "cluster": c.id,
                "faces": c.k,
                "code": cls.code,
                "special": special,
                "roles": ",".join(
                    f"{r}={v}" for r, v in sorted(cls.roles.items())),
                "note": cls.reason,
            })
        report["clusters"] = rows
        report["good_outer_triangle"] = cl.has_good_outer_triangle(g)
    if args.assets:
        found = {}
        for name, pat in sorted(pt.load_assets_dir(args.assets).items()):
            hit = contains_pattern(graph, pat.graph)
            found[name] = None if hit is None else sorted(hit.values())
        report["asset_patterns"] = found
    return report


def _reduce_worker(payload) -> tuple:
    cfg_path, label, mode, seed, count, budget, split = payload
    cfg = (dio.parse_config_file(cfg_path) if cfg_path
           else rd.config_catalog()[label])
    v = rd.check_reducible(cfg, mode=mode, seed=seed or 0, count=count,
                           budget=budget, split=split)
    return v.status, v.witness, v.stats


def _combine_verdicts(parts: list[tuple]) -> tuple:
    statuses = [p[0] for p in parts]
    if rd.NOT_REDUCIBLE in statuses:
        i = statuses.index(rd.NOT_REDUCIBLE)
        status, witness = rd.NOT_REDUCIBLE, parts[i][1]
    elif rd.INCONCLUSIVE in statuses:
        status, witness = rd.INCONCLUSIVE, None
    else:
        status, witness = rd.REDUCIBLE, None
    stats = {"enumerated": sum(p[2].get("enumerated", 0) for p in parts),
             "seconds": max(p[2].get("seconds", 0.0) for p in parts)}
    for p in parts:
        for key in ("pruned", "reason", "worst_bad_colors"):
            if key in p[2]:
                stats[key] = p[2][key]
    return status, witness, stats


def cmd_reduce_check(args, run: RunConfig) -> dict:
    if args.config:
        cfg = dio.parse_config_file(args.config)
        src = (args.config, None)
    else:
        catalog = rd.config_catalog()
        if args.lemma not in catalog:
            raise dio.FormatError(
                f"unknown configuration {args.lemma!r}; "
                f"choices: {', '.join(sorted(catalog))}")
        cfg = catalog[args.lemma]
        src = (None, args.lemma)
    splittable = run.mode == "full" and cfg.strategy in ("product", "eliminate")
    if run.workers > 1 and splittable:
        from concurrent.futures import ProcessPoolExecutor

        payloads = [
            (src[0], src[1], run.mode, run.seed, run.count, run.budget,
             (i, run.workers))
            for i in range(run.workers)
        ]
        with ProcessPoolExecutor(max_workers=run.workers) as pool:
            parts = list(pool.map(_reduce_worker, payloads))
        status, witness, stats = _combine_verdicts(parts)
    else:
        v = rd.check_reducible(cfg, mode=run.mode, seed=run.seed or 0,
                               count=run.count, budget=run.budget)
        status, witness, stats = v.status, v.witness, v.stats
    report = {
        "label": cfg.label,
        "status": status,
        "enumerated": stats.get("enumerated"),
        "pruned": stats.get("pruned", 0),
        "seconds": round(stats.get("seconds", 0.0), 3),
    }
    for key in ("reason", "worst_bad_colors"):
        if key in stats:
            report[key] = stats[key]
    if witness is not None:
        report["witness"] = dio.cover_to_dict(witness)
        if args.save_witness:
            dio.write_cover_file(args.save_witness, witness)
            report["witness_file"] = args.save_witness
    return report


def cmd_witness_verify(args) -> dict:
    inst = dio.parse_cover_file(args.input)
    t0 = time.monotonic()
    confirmed = rd.verify_witness(inst)
    candidates = 1
    for v in range(inst.graph.n):
        candidates *= max(1, len(inst.available[v]))
    return {
        "status": "CONFIRMED" if confirmed else "REFUTED",
        "transversal_exists": not confirmed,
        "candidates": candidates,
        "seconds": round(time.monotonic() - t0, 3),
    }


def cmd_discharge(args) -> dict:
    g = dio.parse_graph_file(args.input)
    if not isinstance(g, PlaneGraph):
        raise dio.FormatError(
            f"{args.input}: discharging needs a rotation system")
    if args.action == "audit":
        rep = dc.audit(g, force_rules=args.force_rules)
        out = rep.to_json()
        if rep.accounts is not None:
            out["accounts"] = {
                name: dc.fmt_quarters(q)
                for name, q in out["accounts"].items()
            }
        return out
    # explain: per-element transfer history (rules run even on precondition
    # failures so the history is always available)
    rep = dc.audit(g, force_rules=True)
    elem = dc.parse_element(args.element)
    history = [
        {"rule": r, "from": dc.element_name(a), "to": dc.element_name(b),
         "amount": dc.fmt_quarters(q)}
        for r, a, b, q in rep.transfers
        if a == elem or b == elem
    ]
    if elem not in rep.accounts:
        raise dio.FormatError(f"no ledger account {args.element!r}")
    return {
        "element": args.element,
        "final": dc.fmt_quarters(rep.accounts[elem]),
        "transfers": history,
    }


def cmd_corpus(args, run: RunConfig) -> dict:
    stats = dio.CorpusStats()
    rows = []
    for g in dio.ingest_corpus(args.input, tuple(args.filter or ()), stats):
        graph = g.graph if isinstance(g, PlaneGraph) else g
        row: dict = {"n": graph.n, "m": graph.m}
        if not args.no_solve:
            inst = CoverInstance.straight(graph, run.k)
            found = find_transversal(inst)
            row["solve"] = "FOUND" if found is not None else "NONE"
        if not args.no_audit and isinstance(g, PlaneGraph):
            rep = dc.audit(g, force_rules=True)
            row["audit"] = rep.verdict
            row["outer"] = dc.fmt_quarters(rep.accounts["OUTER"])
        rows.append(row)
        if args.limit and len(rows) >= args.limit:
            break
    return {
        "read": stats.read,
        "skipped": stats.skipped,
        "rejected": stats.rejected,
        "passed": len(rows),
        "graphs": rows,
    }


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dpcolor",
        description="Correspondence-coloring engine and proof-artifact "
                    "verifier for plane graphs.",
    )
    p.add_argument("--format", choices=("json", "text"), default="json",
                   dest="fmt")
    # accepted both before and after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"),
                        default=argparse.SUPPRESS, dest="fmt")
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("solve", parents=[common],
                        help="find an independent transversal")
    sp.add_argument("input")
    sp.add_argument("--matching", help="matching-assignment file")
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--precolor", help="comma list v=c of fixed colors")

    dp = sub.add_parser("detect", parents=[common], help="substructure and cluster report")
    dp.add_argument("input")
    dp.add_argument("--assets", help="directory of pattern assets to match")

    rp = sub.add_parser("reduce-check", parents=[common], help="configuration reducibility")
    grp = rp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--lemma", help="built-in configuration label")
    grp.add_argument("--config", help="configuration file")
    rp.add_argument("--mode", choices=("full", "sampled"), default="full")
    rp.add_argument("--seed", type=int)
    rp.add_argument("--count", type=int, default=1000)
    rp.add_argument("--budget", type=int)
    rp.add_argument("--workers", type=int, default=_default_workers())
    rp.add_argument("--save-witness", help="write counterexample cover here")

    wp = sub.add_parser("witness-verify", parents=[common],
                        help="exhaustively confirm a no-transversal witness")
    wp.add_argument("input")

    gp = sub.add_parser("discharge", parents=[common], help="charge ledger audit")
    gp.add_argument("action", choices=("audit", "explain"))
    gp.add_argument("input")
    gp.add_argument("--force-rules", action="store_true",
                    help="run the rules even when a precondition fails")
    gp.add_argument("--element", help="account name for explain (v3, f1, "
                                      "H0, OUTER)")

    cp = sub.add_parser("corpus", parents=[common], help="batch solve + audit over a corpus")
    cp.add_argument("input")
    cp.add_argument("--filter", action="append",
                    choices=("no-7-cycles", "no-butterfly",
                             "has-good-triangle"))
    cp.add_argument("--k", type=int, default=4)
    cp.add_argument("--no-solve", action="store_true")
    cp.add_argument("--no-audit", action="store_true")
    cp.add_argument("--limit", type=int)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = RunConfig(
            verb=args.verb,
            k=getattr(args, "k", 4),
            mode=getattr(args, "mode", "full"),
            seed=getattr(args, "seed", None),
            workers=getattr(args, "workers", 1),
            budget=getattr(args, "budget", None),
            count=getattr(args, "count", 1000),
            fmt=args.fmt,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        if args.verb == "solve":
            report = cmd_solve(args)
        elif args.verb == "detect":
            report = cmd_detect(args)
        elif args.verb == "reduce-check":
            report = cmd_reduce_check(args, run)
        elif args.verb == "witness-verify":
            report = cmd_witness_verify(args)
        elif args.verb == "discharge":
            if args.action == "explain" and not args.element:
                parser.error("discharge explain requires --element")
            report = cmd_discharge(args)
        elif args.verb == "corpus":
            report = cmd_corpus(args, run)
        else:  # pragma: no cover - argparse enforces the verb set
            parser.error(f"unknown verb {args.verb}")
    except (dio.FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(report, run.fmt)
    return 0


if __name__ == "__main__":
    sys.exit(main())
