"""Seeded generation of plane graphs with a triangular outer face.

Graphs are grown combinatorially: start from a triangle and repeatedly insert
a new vertex into an interior face, joined to two or three consecutive
boundary vertices of that face.  Each insertion updates the rotation system
directly, so the embedding stays valid by construction.  Insertions that
create a forbidden substructure (a 7-cycle or a butterfly) are rolled back,
which makes it cheap to sample members of the restricted class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graphs import Graph, PlaneGraph, has_cycle_of_length
from .patterns import contains_butterfly


@dataclass
class PlaneBuilder:
    """Grows a plane graph with outer walk (0, 1, 2) by vertex insertion."""

    rotation: list[list[int]] = field(
        default_factory=lambda: [[1, 2], [2, 0], [0, 1]]
    )

    @property
    def n(self) -> int:
        return len(self.rotation)

    def plane(self) -> PlaneGraph:
        edges = {
            (v, u) if u > v else (u, v)
            for v, rot in enumerate(self.rotation) for u in rot
        }
        g = Graph.from_edges(self.n, sorted(edges))
        return PlaneGraph(g, [list(r) for r in self.rotation], [0, 1, 2])

    def insertion_sites(self, pg: PlaneGraph) -> list[tuple[int, int, int]]:
        """(face id, walk start index, arity) choices for a new vertex."""
        sites = []
        for f in pg.interior_faces():
            d = f.degree
            if len(set(f.walk)) != d:
                continue  # skip faces whose walk repeats a vertex
            for t in (2, 3):
                if t > d:
                    continue
                for i in range(d):
                    sites.append((f.id, i, t))
        return sites

    def insert_vertex(self, pg: PlaneGraph, face_id: int, start: int,
                      arity: int) -> None:
        """Join a new vertex to `arity` consecutive walk vertices of a face.

        The new vertex's rotation is the attachment window reversed; at each
        attachment vertex the new neighbor slots in right after that vertex's
        predecessor on the face walk.
        """
        walk = pg.faces[face_id].walk
        d = len(walk)
        window = [walk[(start + j) % d] for j in range(arity)]
        z = self.n
        self.rotation.append(list(reversed(window)))
        for j, w in enumerate(window):
            pred = walk[(start + j - 1) % d]
            rot = self.rotation[w]
            rot.insert(rot.index(pred) + 1, z)


def _forbidden(g: Graph, forbid: Sequence[str]) -> bool:
    if "7-cycle" in forbid and has_cycle_of_length(g, 7):
        return True
    if "butterfly" in forbid and contains_butterfly(g) is not None:
        return True
    return False


def random_plane_graph(
    seed: int,
    target_n: int,
    forbid: Sequence[str] = ("7-cycle", "butterfly"),
    max_tries: int = 400,
) -> PlaneGraph:
    """A plane graph with triangular outer face and about target_n vertices.

    Grown by seeded random vertex insertions; insertions creating a forbidden
    substructure are rolled back.  Returns early if max_tries rejected
    insertions accumulate before the target size is reached.
    """
    rng = random.Random(seed)
    builder = PlaneBuilder()
    tries = 0
    while builder.n < target_n and tries < max_tries:
        pg = builder.plane()
        sites = builder.insertion_sites(pg)
        if not sites:
            break
        face_id, start, arity = rng.choice(sites)
        saved = [list(r) for r in builder.rotation]
        builder.insert_vertex(pg, face_id, start, arity)
        cand = builder.plane()
        if _forbidden(cand.graph, forbid):
            builder.rotation = saved
            tries += 1
            continue
        tries = 0
    return builder.plane()


def generate_corpus(
    count: int,
    seed: int,
    min_n: int = 6,
    max_n: int = 16,
    forbid: Sequence[str] = ("7-cycle", "butterfly"),
) -> list[PlaneGraph]:
    """count seeded plane graphs with sizes spread over [min_n, max_n]."""
    rng = random.Random(seed)
    out = []
    attempt = 0
    while len(out) < count:
        target = rng.randint(min_n, max_n)
        pg = random_plane_graph(rng.randrange(2**31), target, forbid)
        attempt += 1
        if pg.graph.n >= min_n or attempt > 20 * count:
            out.append(pg)
    return out
