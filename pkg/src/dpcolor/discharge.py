"""Exact quarter-unit discharging with an itemized transfer ledger.

Initial charges: vertex d(v)-4, interior face d(f)-4, outer face d(C)+4
(all stored as integer quarter-units).  Member 3-faces of each cluster are
folded into a per-cluster account up front, so cluster-directed rules credit
a single account.  Outer-cycle vertices participate only in the zeroing
transfer to the outer face; they neither give nor receive through any other
rule.

Rules (amounts in quarter-units):
  R1a  each interior 5+-face pays, per boundary edge, 2 across the edge to
       an adjacent 3-face's cluster, else 1 to each interior endpoint.
  R1b  each internal 4-vertex with at least three edges in one cluster
       passes its R1a income to that cluster.
  R2   clusters of 1..5 faces collect from incident internal 5+-vertices by
       incidence type (2 for qualifying 2-type, 2/4 for 3-type 5-vertices by
       goodness, 2 for 3-type 6+, 6 for 4-type).
  R3   6-face clusters collect 2/4 from bad/good 3-type 5-vertices, 6 from
       4-type 5+ or 3-type 6+, and 8 from a good 4-type 6+-vertex when the
       cluster holds two 3-type 5-vertices.
  R4   7-face clusters collect 6 from 5-vertices and special 6-vertices, 8
       from other 6-vertices, 10 from 7+-vertices.
  R5   the outer face absorbs each boundary vertex's initial charge and pays
       4 to every non-internal 3-face's cluster.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .clusters import (
    Classification, Cluster, classifications, classify_cluster,
    cycle_predicates, extract_clusters, separating_good_triangles,
)
from .graphs import PlaneGraph, find_cycle_of_length
from .patterns import contains_butterfly

OUTER = "OUTER"

RULE_ORDER = ("R5", "R1", "R2", "R3", "R4")


class AuditError(ValueError):
    """Input violates a structural fact a rule relies on."""


@dataclass
class ChargeLedger:
    accounts: dict = field(default_factory=dict)  # element -> quarter-units
    transfers: list = field(default_factory=list)  # (rule, frm, to, quarters)

    def move(self, rule: str, frm, to, quarters: int) -> None:
        if quarters == 0:
            return
        self.accounts[frm] -= quarters
        self.accounts[to] += quarters
        self.transfers.append((rule, frm, to, quarters))

    def total(self) -> int:
        return sum(self.accounts.values())

    def history(self, element) -> list:
        return [t for t in self.transfers if t[1] == element or t[2] == element]


def fmt_quarters(q: int) -> str:
    return str(Fraction(q, 4))


def element_name(elem) -> str:
    """Short name for a ledger account: v17, f3, H0, OUTER."""
    if elem == OUTER:
        return OUTER
    kind, ident = elem
    return f"{kind}{ident}"


def parse_element(name: str):
    """Inverse of element_name."""
    if name == OUTER:
        return OUTER
    if len(name) >= 2 and name[0] in "vfH" and name[1:].isdigit():
        return (name[0], int(name[1:]))
    raise ValueError(
        f"bad element {name!r}: expected OUTER, vN, fN or HN"
    )


@dataclass
class ClusterInfo:
    cluster: Cluster
    classification: Classification
    special: bool
    special_roles: dict  # the role map under which x,y,z are internal 4-vertices


@dataclass
class VertexTyping:
    """Incidence types and flags driving the cluster-directed rules."""

    pg: PlaneGraph
    clusters: list[ClusterInfo]
    internal: list[bool]  # per vertex: not on the outer cycle
    i_type: dict  # (vertex, cluster id) -> number of cluster edges at vertex
    good: dict  # (vertex, cluster id) -> cluster is special
    special6: set  # special 6-vertices

    def memberships(self, v: int) -> list[int]:
        return sorted({h for (u, h) in self.i_type if u == v})


def vertex_elem(v: int) -> tuple:
    return ("v", v)


def face_elem(f: int) -> tuple:
    return ("f", f)


def cluster_elem(h: int) -> tuple:
    return ("H", h)


def initial_charges(pg: PlaneGraph) -> ChargeLedger:
    led = ChargeLedger()
    for v in range(pg.graph.n):
        led.accounts[vertex_elem(v)] = 4 * (pg.graph.degree(v) - 4)
    for f in pg.faces:
        if f.id == pg.outer_face:
            led.accounts[OUTER] = 4 * (f.degree + 4)
        else:
            led.accounts[face_elem(f.id)] = 4 * (f.degree - 4)
    return led


def classify_special_cluster(c: Cluster, pg: PlaneGraph,
                             internal: Optional[list[bool]] = None
                             ) -> tuple[bool, dict]:
    """Special: shape (7), (9), (10) or (11) whose x, y, z roles land on
    internal 4-vertices under some catalog matching."""
    if internal is None:
        outer_walk = set(pg.faces[pg.outer_face].walk)
        internal = [v not in outer_walk for v in range(pg.graph.n)]
    for cls in classifications(pg, c):
        if cls.code not in (7, 9, 10, 11):
            return False, {}
        ok = all(
            internal[cls.roles[r]] and pg.graph.degree(cls.roles[r]) == 4
            for r in ("x", "y", "z")
        )
        if ok:
            return True, cls.roles
    return False, {}


def vertex_typing(pg: PlaneGraph, infos: list[ClusterInfo]) -> VertexTyping:
    outer_walk = set(pg.faces[pg.outer_face].walk)
    internal = [v not in outer_walk for v in range(pg.graph.n)]
    i_type: dict = {}
    good: dict = {}
    for info in infos:
        c = info.cluster
        for v in c.vertices:
            cnt = sum(1 for e in c.edges if v in e)
            i_type[(v, c.id)] = cnt
            good[(v, c.id)] = info.special
    special6: set = set()
    for v in range(pg.graph.n):
        if not internal[v] or pg.graph.degree(v) != 6:
            continue
        has_k1 = has_k2 = False
        for info in infos:
            c = info.cluster
            if v not in c.vertices or not info.special:
                continue
            t = i_type[(v, c.id)]
            cluster_internal = all(internal[u] for u in c.vertices)
            if t == 4 and c.k in (6, 7) and cluster_internal:
                has_k1 = True
            if t == 2 and c.k in (4, 5):
                has_k2 = True
        if has_k1 and has_k2:
            special6.add(v)
    return VertexTyping(pg, infos, internal, i_type, good, special6)


def cluster_infos(pg: PlaneGraph) -> list[ClusterInfo]:
    outer_walk = set(pg.faces[pg.outer_face].walk)
    internal = [v not in outer_walk for v in range(pg.graph.n)]
    out = []
    for c in extract_clusters(pg):
        cls = classify_cluster(pg, c)
        special, roles = (False, {})
        if cls.code:
            special, roles = classify_special_cluster(c, pg, internal)
        out.append(ClusterInfo(c, cls, special, roles))
    return out


def _fold_clusters(led: ChargeLedger, infos: list[ClusterInfo]) -> None:
    for info in infos:
        h = cluster_elem(info.cluster.id)
        led.accounts.setdefault(h, 0)
        for fid in sorted(info.cluster.face_ids):
            led.move("aggregate", face_elem(fid), h,
                     led.accounts[face_elem(fid)])


def _cluster_of_face(infos: list[ClusterInfo]) -> dict[int, int]:
    return {
        fid: info.cluster.id for info in infos for fid in info.cluster.face_ids
    }


def _apply_r5(pg: PlaneGraph, led: ChargeLedger, infos, typing) -> None:
    outer_walk = pg.faces[pg.outer_face].walk
    face_cluster = _cluster_of_face(infos)
    for v in sorted(set(outer_walk)):
        led.move("R5", vertex_elem(v), OUTER, led.accounts[vertex_elem(v)])
    for f in pg.interior_faces():
        if f.degree == 3 and any(not typing.internal[v] for v in f.walk):
            led.move("R5", OUTER, cluster_elem(face_cluster[f.id]), 4)


def _apply_r1(pg: PlaneGraph, led: ChargeLedger, infos, typing) -> None:
    face_cluster = _cluster_of_face(infos)
    r1a_income = [0] * pg.graph.n
    for f in pg.interior_faces():
        if f.degree < 5:
            continue
        walk = f.walk
        for i in range(len(walk)):
            u, v = walk[i], walk[(i + 1) % len(walk)]
            sides = pg.faces_of_edge(u, v)
            others = [g for g in sides if g != f.id]
            other = others[0] if others else f.id
            g = pg.faces[other]
            if other != pg.outer_face and other != f.id and g.degree == 3:
                led.move("R1a", face_elem(f.id),
                         cluster_elem(face_cluster[other]), 2)
            else:
                for end in (u, v):
                    if typing.internal[end]:
                        led.move("R1a", face_elem(f.id), vertex_elem(end), 1)
                        r1a_income[end] += 1
    # pass-through: internal 4-vertices mostly inside one cluster
    for v in range(pg.graph.n):
        if not typing.internal[v] or pg.graph.degree(v) != 4:
            continue
        if r1a_income[v] == 0:
            continue
        for info in infos:
            if typing.i_type.get((v, info.cluster.id), 0) >= 3:
                led.move("R1b", vertex_elem(v),
                         cluster_elem(info.cluster.id), r1a_income[v])
                break


def _adjacent_4face(pg: PlaneGraph, v: int, c: Cluster) -> bool:
    """v lies on a 4-face sharing an edge with the cluster."""
    for f in pg.interior_faces():
        if f.degree != 4 or v not in f.walk:
            continue
        if any(e in c.edges for e in f.walk_edges()):
            return True
    return False


def _cluster_rule_amount(pg: PlaneGraph, typing: VertexTyping,
                         info: ClusterInfo, v: int,
                         flags: list) -> int:
    """Quarters v gives to the cluster under R2/R3/R4 (0 if none)."""
    c = info.cluster
    d = pg.graph.degree(v)
    t = typing.i_type[(v, c.id)]
    good = typing.good[(v, c.id)]
    k = c.k
    if k <= 5:
        if t == 2:
            on4 = _adjacent_4face(pg, v, c)
            if on4 and not good:
                flags.append({
                    "rule": "R2", "vertex": v, "cluster": c.id,
                    "note": "2-type credit granted via the adjacent-4-face branch",
                })
            return 2 if (good or on4) else 0
        if t == 3:
            if d >= 6:
                return 2
            return 4 if good else 2
        if t >= 4:
            return 6
        return 0
    if k == 6:
        three_type_fives = sum(
            1 for u in c.vertices
            if typing.internal[u] and pg.graph.degree(u) == 5
            and typing.i_type[(u, c.id)] == 3
        )
        if t == 3 and d == 5:
            return 4 if good else 2
        if t >= 4 and d >= 6 and good and three_type_fives >= 2:
            return 8
        if t >= 4 or (t == 3 and d >= 6):
            return 6
        return 0
    if k == 7:
        if d == 5 or (d == 6 and v in typing.special6):
            return 6
        if d == 6:
            return 8
        if d >= 7:
            return 10
        return 0
    return 0


def _apply_cluster_rules(pg: PlaneGraph, led: ChargeLedger, infos, typing,
                         which: str, flags: list) -> None:
    for info in infos:
        k = info.cluster.k
        rule = "R2" if k <= 5 else ("R3" if k == 6 else "R4")
        if rule != which:
            continue
        for v in sorted(info.cluster.vertices):
            if not typing.internal[v] or pg.graph.degree(v) < 5:
                continue
            q = _cluster_rule_amount(pg, typing, info, v, flags)
            led.move(rule, vertex_elem(v), cluster_elem(info.cluster.id), q)


def apply_rules(pg: PlaneGraph, infos: list[ClusterInfo],
                typing: VertexTyping, led: ChargeLedger,
                order: tuple[str, ...] = RULE_ORDER) -> list:
    """Run the discharging rules; returns report flags.  Mutates the ledger."""
    _fold_clusters(led, infos)
    flags: list = []
    for rule in order:
        if rule == "R5":
            _apply_r5(pg, led, infos, typing)
        elif rule == "R1":
            _apply_r1(pg, led, infos, typing)
        elif rule in ("R2", "R3", "R4"):
            _apply_cluster_rules(pg, led, infos, typing, rule, flags)
        else:
            raise ValueError(f"unknown rule {rule!r}")
    return flags


def credit_caps_ok(pg: PlaneGraph, led: ChargeLedger,
                   typing: VertexTyping) -> list:
    """Per (vertex, cluster) ceilings on R2-R4 credits; returns violations."""
    totals: dict = {}
    for rule, frm, to, q in led.transfers:
        if rule in ("R2", "R3", "R4") and frm[0] == "v" and to[0] == "H":
            totals[(frm[1], to[1])] = totals.get((frm[1], to[1]), 0) + q
    bad = []
    for (v, h), q in totals.items():
        d = pg.graph.degree(v)
        t = typing.i_type[(v, h)]
        if t == 2:
            cap = 2
        elif t == 3 and d == 5:
            cap = 4
        elif (t >= 4 and d == 5) or (t == 3 and d >= 6):
            cap = 6
        elif t >= 4 and d == 6:
            cap = 8
        else:
            cap = 10
        if q > cap:
            bad.append({"vertex": v, "cluster": h, "given": q, "cap": cap})
    return bad


def outer_identity(pg: PlaneGraph) -> dict:
    walk = pg.faces[pg.outer_face].walk
    on_c = set(walk)
    e = sum(
        1 for u, v in pg.graph.edges
        if (u in on_c) != (v in on_c)
    )
    f3 = sum(
        1 for f in pg.interior_faces()
        if f.degree == 3 and any(v in on_c for v in f.walk)
    )
    return {"e": e, "f3": f3, "value": 1 + e - f3}


# ---------------------------------------------------------------------------
# preconditions and the audit


def diamond_pattern_witness(pg: PlaneGraph,
                            internal: list[bool]) -> Optional[dict]:
    """Two internal all-4-vertex 3-faces sharing one edge, tips non-adjacent."""
    tris = [f for f in pg.interior_faces() if f.degree == 3]
    ok_face = {
        f.id: all(internal[v] and pg.graph.degree(v) == 4 for v in f.walk)
        for f in tris
    }
    for i, f in enumerate(tris):
        if not ok_face[f.id]:
            continue
        for g in tris[i + 1:]:
            if not ok_face[g.id]:
                continue
            shared = set(f.walk_edges()) & set(g.walk_edges())
            if len(shared) != 1:
                continue
            (u, v), = shared
            x = next(a for a in f.walk if a not in (u, v))
            y = next(a for a in g.walk if a not in (u, v))
            if not pg.graph.has_edge(x, y):
                return {"faces": [f.id, g.id], "edge": [u, v], "tips": [x, y]}
    return None


def precondition_report(pg: PlaneGraph, infos: list[ClusterInfo],
                        typing: VertexTyping) -> dict:
    """Structural hypotheses the charge bounds rely on; each with a witness."""
    checks: dict = {}
    seven = find_cycle_of_length(pg.graph, 7)
    checks["no-7-cycle"] = {"ok": seven is None, "witness": seven}
    bf = contains_butterfly(pg.graph)
    checks["no-butterfly"] = {
        "ok": bf is None,
        "witness": None if bf is None else sorted(bf.values()),
    }
    outer = pg.faces[pg.outer_face]
    good_outer = (
        outer.degree == 3 and len(set(outer.walk)) == 3
        and cycle_predicates(pg, list(outer.walk))["good"]
    )
    checks["outer-good-3-cycle"] = {"ok": good_outer, "witness": list(outer.walk)}
    low = [v for v in range(pg.graph.n)
           if typing.internal[v] and pg.graph.degree(v) <= 3]
    checks["internal-min-degree-4"] = {"ok": not low, "witness": low or None}
    seps = separating_good_triangles(pg)
    # the outer cycle itself is never separating here (its exterior is empty)
    checks["no-separating-good-3-cycle"] = {
        "ok": not seps, "witness": seps or None}
    unclassified = [
        info.cluster.id for info in infos if info.classification.code == 0
    ]
    checks["clusters-in-catalog"] = {
        "ok": not unclassified,
        "witness": unclassified or None,
        "reasons": {
            info.cluster.id: info.classification.reason
            for info in infos if info.classification.code == 0
        } or None,
    }
    dia = diamond_pattern_witness(pg, typing.internal)
    checks["no-glued-internal-444-faces"] = {"ok": dia is None, "witness": dia}
    # an internal 5-vertex on two special clusters
    owners: dict[int, list[int]] = {}
    for info in infos:
        if info.special:
            for v in info.cluster.vertices:
                owners.setdefault(v, []).append(info.cluster.id)
    double = [
        {"vertex": v, "clusters": hs} for v, hs in sorted(owners.items())
        if len(hs) >= 2 and typing.internal[v] and pg.graph.degree(v) == 5
    ]
    checks["5-vertex-on-one-special-cluster"] = {
        "ok": not double, "witness": double or None}
    checks["tight-6-cluster-pattern-absent"] = _l7_pattern_check(pg, infos, typing)
    checks["tight-7-cluster-pattern-absent"] = _l8_pattern_check(pg, infos, typing)
    four_face_adj = []
    for info in infos:
        if info.cluster.k < 3:
            continue
        for f in pg.interior_faces():
            if f.degree == 4 and any(e in info.cluster.edges
                                     for e in f.walk_edges()):
                four_face_adj.append({"cluster": info.cluster.id, "face": f.id})
    checks["no-4-face-on-big-cluster"] = {
        "ok": not four_face_adj, "witness": four_face_adj or None}
    return checks


def _l7_pattern_check(pg, infos, typing) -> dict:
    """Internal special 6-cluster with two tight boundary 5-vertices must not
    carry a low third boundary vertex."""
    bad = []
    for info in infos:
        if not (info.special and info.cluster.k == 6):
            continue
        if not all(typing.internal[v] for v in info.cluster.vertices):
            continue
        for cls in classifications(pg, info.cluster):
            r = cls.roles
            if not all(typing.internal[r[t]] and pg.graph.degree(r[t]) == 4
                       for t in ("x", "y", "z")):
                continue
            du, dw = pg.graph.degree(r["u"]), pg.graph.degree(r["w"])
            dv = pg.graph.degree(r["v"])
            if du == 5 and dw == 5 and (
                dv <= 5 or r["v"] in typing.special6
            ):
                bad.append({"cluster": info.cluster.id, "roles": dict(r)})
                break
    return {"ok": not bad, "witness": bad or None}


def _l8_pattern_check(pg, infos, typing) -> dict:
    """An internal 7-cluster with all boundary degrees <= 6 carries at most
    one 5-vertex or special 6-vertex."""
    bad = []
    for info in infos:
        if info.classification.code != 11:
            continue
        c = info.cluster
        if not all(typing.internal[v] for v in c.vertices):
            continue
        for cls in classifications(pg, c):
            r = cls.roles
            if max(pg.graph.degree(r[t]) for t in ("u", "v", "w")) > 6:
                continue
            low = [
                v for v in sorted(c.vertices)
                if pg.graph.degree(v) == 5 or v in typing.special6
            ]
            if len(low) >= 2:
                bad.append({"cluster": c.id, "vertices": low})
            break
    return {"ok": not bad, "witness": bad or None}


@dataclass
class AuditReport:
    preconditions: dict
    ok_to_discharge: bool
    accounts: Optional[dict] = None
    transfers: Optional[list] = None
    outer: Optional[dict] = None
    flags: Optional[list] = None
    cap_violations: Optional[list] = None
    negative: Optional[list] = None
    verdict: Optional[str] = None
    forced: bool = False

    def to_json(self) -> dict:
        class_keys = ("no-7-cycle", "no-butterfly")
        out = {
            "class_checks": {
                k: v for k, v in self.preconditions.items() if k in class_keys
            },
            "lemma_preconditions": {
                k: v for k, v in self.preconditions.items()
                if k not in class_keys
            },
            "ok_to_discharge": self.ok_to_discharge,
            "verdict": self.verdict,
            "forced": self.forced,
        }
        if self.accounts is not None:
            out["accounts"] = {
                element_name(k): q
                for k, q in sorted(self.accounts.items(), key=str)
            }
            out["transfers"] = [
                [r, element_name(a), element_name(b), q]
                for r, a, b, q in self.transfers
            ]
            out["outer_identity"] = self.outer
            out["flags"] = self.flags
            out["cap_violations"] = self.cap_violations
            out["negative_accounts"] = self.negative
        return out


def audit(pg: PlaneGraph, force_rules: bool = False,
          order: tuple[str, ...] = RULE_ORDER) -> AuditReport:
    """Precondition checks, then exact discharging with verdict.

    With force_rules the rules run even when a precondition fails (useful for
    exactness regression on arbitrary inputs); the verdict then reports only
    the ledger arithmetic, not the nonnegativity claim.
    """
    infos = cluster_infos(pg)
    typing = vertex_typing(pg, infos)
    pre = precondition_report(pg, infos, typing)
    ok = all(c["ok"] for c in pre.values())
    if not ok and not force_rules:
        return AuditReport(pre, False, verdict="preconditions-violated")
    led = initial_charges(pg)
    before = led.total()
    flags = apply_rules(pg, infos, typing, led, order)
    after = led.total()
    ident = outer_identity(pg)
    caps = credit_caps_ok(pg, led, typing)
    negative = []
    for k, q in led.accounts.items():
        if k == OUTER:
            continue
        if q < 0:
            negative.append({"element": list(k), "quarters": q})
    conserved = before == 0 and after == 0
    outer_ok = led.accounts[OUTER] == 4 * ident["value"]
    if not conserved:
        verdict = "conservation-violated"
    elif not outer_ok:
        verdict = "outer-identity-violated"
    elif not ok:
        verdict = "forced-run-arithmetic-ok"
    elif negative or caps or led.accounts[OUTER] <= 0:
        verdict = "charge-deficit"
    else:
        verdict = "all-nonnegative"
    return AuditReport(
        pre, ok, dict(led.accounts), list(led.transfers), ident, flags,
        caps, negative, verdict, forced=not ok,
    )
