"""Cluster extraction and classification; 3-cycle good/bad/separating tests.

A cluster is a maximal edge-connected set of interior 3-faces.  Classified
clusters carry a catalog code (1..11) and a role map naming which host vertex
plays each labeled role of the catalog drawing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .graphs import Graph, PlaneGraph, edge_key, interior_face_ids
from .patterns import LabeledPattern, catalog

UNCLASSIFIED = 0


@dataclass(frozen=True)
class Cluster:
    id: int
    face_ids: frozenset[int]
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    @property
    def k(self) -> int:
        return len(self.face_ids)


@dataclass(frozen=True)
class Classification:
    code: int  # 1..11, or UNCLASSIFIED
    roles: dict  # role label -> host vertex id (empty when unclassified)
    reason: str = ""


def extract_clusters(pg: PlaneGraph) -> list[Cluster]:
    """Maximal shared-edge components of interior 3-faces.

    The outer face never joins a cluster even when it is a 3-face.
    """
    tri = [f for f in pg.interior_faces() if f.degree == 3]
    by_edge: dict[tuple[int, int], list[int]] = {}
    for f in tri:
        for e in f.walk_edges():
            by_edge.setdefault(e, []).append(f.id)
    face_by_id = {f.id: f for f in tri}
    seen: set[int] = set()
    out: list[Cluster] = []
    for f in tri:
        if f.id in seen:
            continue
        comp = {f.id}
        stack = [f.id]
        while stack:
            fid = stack.pop()
            for e in face_by_id[fid].walk_edges():
                for nf in by_edge[e]:
                    if nf not in comp and nf in face_by_id:
                        comp.add(nf)
                        stack.append(nf)
        seen |= comp
        verts: set[int] = set()
        edges: set[tuple[int, int]] = set()
        for fid in comp:
            verts |= set(face_by_id[fid].walk)
            edges |= set(face_by_id[fid].walk_edges())
        out.append(Cluster(len(out), frozenset(comp), frozenset(verts), frozenset(edges)))
    return out


def cluster_subgraph(c: Cluster) -> tuple[Graph, list[int]]:
    """Local copy of a cluster's vertices/edges; returns (graph, index->host)."""
    order = sorted(c.vertices)
    index = {v: i for i, v in enumerate(order)}
    g = Graph.from_edges(len(order), [(index[u], index[v]) for u, v in c.edges])
    return g, order


def all_isomorphisms(a: Graph, b: Graph) -> Iterator[dict[int, int]]:
    """All edge-preserving bijections a -> b (graph isomorphisms)."""
    if a.n != b.n or a.m != b.m:
        return
    deg_b: dict[int, list[int]] = {}
    for v in range(b.n):
        deg_b.setdefault(b.degree(v), []).append(v)
    order = sorted(range(a.n), key=a.degree, reverse=True)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def assign(i: int) -> Iterator[dict[int, int]]:
        if i == len(order):
            yield dict(mapping)
            return
        p = order[i]
        for c in deg_b.get(a.degree(p), []):
            if c in used:
                continue
            ok = True
            for q in a.adjacency[p]:
                if q in mapping and not b.has_edge(mapping[q], c):
                    ok = False
                    break
            if ok:
                for q in range(a.n):
                    if q in mapping and not a.has_edge(p, q) and b.has_edge(mapping[q], c):
                        ok = False
                        break
            if ok:
                mapping[p] = c
                used.add(c)
                yield from assign(i + 1)
                del mapping[p]
                used.remove(c)

    yield from assign(0)


def _face_triples(pat: LabeledPattern) -> set[frozenset[int]]:
    return {
        frozenset(f.walk)
        for f in pat.plane.interior_faces()
        if f.degree == 3
    }


def classifications(pg: PlaneGraph, c: Cluster) -> Iterator[Classification]:
    """Every catalog match (code + role map); multiple for symmetric shapes."""
    local, order = cluster_subgraph(c)
    cluster_faces = {
        frozenset(set(pg.faces[fid].walk)) for fid in c.face_ids
    }
    for code, pat in catalog().items():
        pat_faces = _face_triples(pat)
        if len(pat_faces) != c.k:
            continue
        for iso in all_isomorphisms(pat.graph, local):
            mapped_faces = {
                frozenset(order[iso[v]] for v in tri) for tri in pat_faces
            }
            if mapped_faces == cluster_faces:
                roles = {lbl: order[iso[v]] for lbl, v in pat.labels.items()}
                yield Classification(code, roles)


def classify_cluster(pg: PlaneGraph, c: Cluster) -> Classification:
    for cls in classifications(pg, c):
        return cls
    local, order = cluster_subgraph(c)
    if local.n == 4 and local.m == 6:
        reason = (
            "faces share vertices beyond glued edges (complete graph on 4 "
            "vertices); shape outside the distinct-vertex catalog"
        )
    elif c.k > 7:
        reason = f"{c.k} faces exceeds the catalog maximum of 7"
    else:
        reason = "no catalog shape matches the face-incidence structure"
    return Classification(UNCLASSIFIED, {}, reason)


def cycle_predicates(pg: PlaneGraph, cycle: Sequence[int]) -> dict:
    """{'separating', 'bad', 'good'} for a 3-cycle of the embedding.

    Separating: interior and exterior both hold vertices.  Bad: the cycle
    plus its interior consists of seven edge-connected 3-faces (the largest
    catalog shape).  Good: not bad.
    """
    if len(cycle) != 3 or len(set(cycle)) != 3:
        raise ValueError("cycle must be a triangle")
    for i in range(3):
        if not pg.graph.has_edge(cycle[i], cycle[(i + 1) % 3]):
            raise ValueError("cycle vertices are not mutually adjacent")
    from .graphs import cycle_vertex_sides

    interior, exterior = cycle_vertex_sides(pg, cycle)
    inner_faces = interior_face_ids(pg, cycle)
    bad = False
    if inner_faces and all(pg.faces[fid].degree == 3 for fid in inner_faces):
        if len(inner_faces) == 7 and _edge_connected(pg, inner_faces):
            bad = True
    return {
        "separating": bool(interior) and bool(exterior),
        "bad": bad,
        "good": not bad,
    }


def _edge_connected(pg: PlaneGraph, face_ids: set[int]) -> bool:
    ids = set(face_ids)
    start = next(iter(ids))
    comp = {start}
    stack = [start]
    while stack:
        fid = stack.pop()
        for e in pg.faces[fid].walk_edges():
            for nf in pg.faces_of_edge(*e):
                if nf in ids and nf not in comp:
                    comp.add(nf)
                    stack.append(nf)
    return comp == ids


def has_good_outer_triangle(pg: PlaneGraph) -> bool:
    outer = pg.faces[pg.outer_face]
    if outer.degree != 3 or len(set(outer.walk)) != 3:
        return False
    return cycle_predicates(pg, list(outer.walk))["good"]


def separating_good_triangles(pg: PlaneGraph) -> list[tuple[int, int, int]]:
    """All separating good 3-cycles of the embedding."""
    out = []
    g = pg.graph
    for u in range(g.n):
        for v in sorted(g.adjacency[u]):
            if v <= u:
                continue
            for w in sorted(g.adjacency[u] & g.adjacency[v]):
                if w <= v:
                    continue
                pred = cycle_predicates(pg, [u, v, w])
                if pred["separating"] and pred["good"]:
                    out.append((u, v, w))
    return out
