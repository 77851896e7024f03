"""Shared helpers: random graphs, covers, and instance builders."""

from __future__ import annotations

import itertools
import random

from dpcolor.cover import CoverInstance
from dpcolor.graphs import Graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def random_sigma(rng: random.Random, g: Graph, k: int):
    colors = list(range(1, k + 1))
    out = {}
    for e in sorted(g.edges):
        perm = colors[:]
        rng.shuffle(perm)
        out[e] = tuple(perm)
    return out


def random_cover(rng: random.Random, g: Graph, k: int,
                 full_lists: bool = False) -> CoverInstance:
    sigma = random_sigma(rng, g, k)
    if full_lists:
        avail = tuple(frozenset(range(1, k + 1)) for _ in range(g.n))
    else:
        avail = tuple(
            frozenset(rng.sample(range(1, k + 1), rng.randint(1, k)))
            for _ in range(g.n)
        )
    return CoverInstance(g, k, avail, sigma)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)
