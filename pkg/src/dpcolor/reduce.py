"""Reducible-configuration checking by exhaustive enumeration.

A configuration is a local graph with per-vertex residual-size floors: the
question is whether, for every choice of residual color sets meeting the
floors and every matching assignment on the local edges, an independent
transversal exists.  Three sound reductions shrink the search:

* Straightening (a designated spanning forest is fixed to the identity):
  every instance is equivalent to one with straight forest edges, because
  per-vertex renamings act transitively on forest matchings.
* Floor-exact residuals with canonical names: shrinking a residual set only
  removes transversals, so floor-sized sets suffice; vertices that retain a
  free renaming (none for straightened-forest vertices except one canonical
  representative per forest component, which a whole-component renaming can
  still normalize) use the fixed set {1..floor}.
* Maximal partial injections per free edge: dropping a cover edge only adds
  transversals, so only injections matching min(|A|,|B|) colors between the
  endpoint residual sets A, B need enumeration.

Strategies: "product" enumerates instances directly; "condition" splits at a
cut vertex and combines per-side blocked-color families; "eliminate" removes
a full-floor pivot vertex and reasons about blocked neighbor-color profiles;
"margin" is the precolor-margin check (at most one blocked pivot color).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from .cover import CoverInstance, find_transversal, identity
from .graphs import Graph, edge_key
from .patterns import cluster_pattern

K = 4
FULL = frozenset(range(1, K + 1))

REDUCIBLE = "REDUCIBLE"
NOT_REDUCIBLE = "NOT_REDUCIBLE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Configuration:
    label: str
    graph: Graph
    names: Mapping[str, int]  # role name -> vertex id
    floors: tuple[int, ...]  # per vertex id
    tree: tuple[tuple[int, int], ...]  # straightened forest (edge keys)
    strategy: str  # product | condition | eliminate | margin
    pivot: Optional[int] = None  # eliminate: the removed full-floor vertex
    cut: Optional[int] = None  # condition: the articulation vertex
    margin_vertex: Optional[int] = None  # margin: the precolored vertex
    expect: str = REDUCIBLE
    note: str = ""

    def vertex(self, name: str) -> int:
        return self.names[name]

    def role_of(self, v: int) -> str:
        for name, w in self.names.items():
            if w == v:
                return name
        raise KeyError(v)


@dataclass
class Verdict:
    status: str
    witness: Optional[CoverInstance] = None
    stats: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# catalog


def _cfg_from_pattern(code: int, label: str, floors_by_role: Mapping[str, int],
                      tree_roles: Sequence[tuple[str, str]], strategy: str,
                      pivot_role: Optional[str] = None,
                      expect: str = REDUCIBLE, note: str = "") -> Configuration:
    pat = cluster_pattern(code)
    names = dict(pat.labels)
    floors = [0] * pat.graph.n
    for role, f in floors_by_role.items():
        floors[names[role]] = f
    tree = tuple(edge_key(names[a], names[b]) for a, b in tree_roles)
    return Configuration(
        label, pat.graph, names, tuple(floors), tree, strategy,
        pivot=None if pivot_role is None else names[pivot_role],
        expect=expect, note=note,
    )


def config_catalog() -> dict[str, Configuration]:
    out: dict[str, Configuration] = {}

    g1 = Graph.from_edges(1, [])
    out["L2"] = Configuration(
        "L2", g1, {"v": 0}, (1,), (), "product",
        note="an isolated low-degree vertex always keeps a residual color",
    )

    g4 = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    out["L4-diamond"] = Configuration(
        "L4-diamond", g4, {"u": 0, "v": 1, "x": 2, "y": 3},
        (3, 3, 2, 2), (), "product",
        note="two triangles glued on uv, xy not an edge",
    )

    # two disjoint glued triangles v1v2v12 and v3v4v34 joined through v
    g5 = Graph.from_edges(
        7,
        [(6, 0), (6, 1), (6, 2), (6, 3),
         (0, 1), (0, 4), (1, 4),
         (2, 3), (2, 5), (3, 5)],
    )
    out["L5-special5"] = Configuration(
        "L5-special5", g5,
        {"v1": 0, "v2": 1, "v3": 2, "v4": 3, "v12": 4, "v34": 5, "v": 6},
        (3, 3, 3, 3, 2, 2, 3), (), "condition", cut=6,
        note="the two glued triangles meet only through v",
    )

    g6 = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    out["L6-precolor"] = Configuration(
        "L6-precolor", g6, {"v": 0, "xp": 1, "yp": 2, "zp": 3},
        (4, 2, 3, 3), (), "margin", margin_vertex=0,
        note="precoloring v must leave the triangle xp,yp,zp colorable "
             "for all but at most one of v's colors",
    )

    out["L7-555"] = _cfg_from_pattern(
        10, "L7-555",
        {"u": 2, "x": 4, "y": 4, "w": 2, "z": 4, "v": 3},
        [("u", "v"), ("v", "w"), ("v", "y"), ("y", "x")],
        "eliminate", pivot_role="z",
        note="6-face cluster with two tight boundary vertices",
    )

    out["L8-556"] = _cfg_from_pattern(
        11, "L8-556",
        {"v": 2, "x": 4, "y": 4, "z": 4, "u": 3, "w": 3},
        [("u", "v"), ("v", "w"), ("v", "y"), ("y", "x")],
        "eliminate", pivot_role="z",
        note="7-face cluster with one tight boundary vertex",
    )

    out["CE-6"] = _cfg_from_pattern(
        10, "CE-6",
        {"u": 2, "x": 4, "y": 4, "w": 2, "z": 4, "v": 2},
        [("u", "v"), ("v", "w"), ("v", "y"), ("y", "x")],
        "eliminate", pivot_role="z", expect=NOT_REDUCIBLE,
        note="tightness gadget: one boundary floor lowered from 3 to 2",
    )

    out["CE-7"] = _cfg_from_pattern(
        11, "CE-7",
        {"v": 2, "x": 4, "y": 4, "z": 4, "u": 3, "w": 2},
        [("u", "v"), ("v", "w"), ("v", "y"), ("y", "x")],
        "eliminate", pivot_role="z", expect=NOT_REDUCIBLE,
        note="tightness gadget: one boundary floor lowered from 3 to 2",
    )

    return out


# ---------------------------------------------------------------------------
# enumeration building blocks


def maximal_injections(a: frozenset[int], b: frozenset[int]) -> list[dict[int, int]]:
    """All partial injections a->b matching min(|a|,|b|) colors, sorted."""
    la, lb = sorted(a), sorted(b)
    out = []
    if len(la) <= len(lb):
        for images in itertools.permutations(lb, len(la)):
            out.append(dict(zip(la, images)))
    else:
        for sources in itertools.permutations(la, len(lb)):
            out.append(dict(zip(sources, lb)))
    return out


def extend_to_bijection(partial: Mapping[int, int]) -> tuple[int, ...]:
    """Deterministic completion of an injective partial map to a bijection."""
    free_src = [c for c in range(1, K + 1) if c not in partial]
    free_dst = [c for c in range(1, K + 1) if c not in set(partial.values())]
    full = dict(partial)
    full.update(zip(free_src, free_dst))
    return tuple(full[c] for c in range(1, K + 1))


def _tree_components(cfg: Configuration) -> list[set[int]]:
    parent = list(range(cfg.graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in cfg.tree:
        parent[find(u)] = find(v)
    comps: dict[int, set[int]] = {}
    for v in range(cfg.graph.n):
        comps.setdefault(find(v), set()).add(v)
    return [c for c in comps.values() if len(c) > 1]


def residual_choices(cfg: Configuration,
                     skip: Sequence[int] = ()) -> Iterator[dict[int, frozenset[int]]]:
    """Residual-set choices meeting the floors exactly, symmetry-reduced.

    Vertices outside the straightened forest keep a free renaming, so their
    set is fixed to {1..floor}.  Within each forest component one designated
    vertex (lowest floor, then lowest id) is likewise canonical via a
    whole-component renaming; the rest range over all floor-sized subsets.
    """
    in_tree: set[int] = set()
    for u, v in cfg.tree:
        in_tree.update((u, v))
    canonical: set[int] = set(range(cfg.graph.n)) - in_tree
    for comp in _tree_components(cfg):
        rep = min(comp, key=lambda v: (cfg.floors[v], v))
        canonical.add(rep)
    vary = [v for v in range(cfg.graph.n)
            if v not in canonical and v not in skip and cfg.floors[v] < K]
    base = {
        v: frozenset(range(1, cfg.floors[v] + 1))
        for v in range(cfg.graph.n) if v not in skip
    }
    subsets = {
        v: [frozenset(s) for s in itertools.combinations(range(1, K + 1),
                                                         cfg.floors[v])]
        for v in vary
    }
    for combo in itertools.product(*(subsets[v] for v in vary)):
        choice = dict(base)
        choice.update(dict(zip(vary, combo)))
        yield choice


def local_solve(
    vertices: Sequence[int],
    avail: Mapping[int, frozenset[int]],
    constraints: Sequence[tuple[int, int, Mapping[int, int]]],
) -> Optional[dict[int, int]]:
    """Tiny exact solver: constraint (a, b, m) forbids m[t_a] == t_b.

    Colors of a outside m's domain conflict with nothing across that edge.
    """
    order = sorted(vertices, key=lambda v: (len(avail[v]), v))
    by_vertex: dict[int, list[tuple[int, int, Mapping[int, int], bool]]] = {
        v: [] for v in order
    }
    for a, b, m in constraints:
        by_vertex[a].append((a, b, m, True))
        by_vertex[b].append((a, b, m, False))
    assignment: dict[int, int] = {}

    def ok(v: int, c: int) -> bool:
        for a, b, m, forward in by_vertex[v]:
            if forward:  # v == a
                if b in assignment and m.get(c) == assignment[b]:
                    return False
            else:  # v == b
                if a in assignment and m.get(assignment[a]) == c:
                    return False
        return True

    def solve(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(avail[v]):
            if ok(v, c):
                assignment[v] = c
                if solve(i + 1):
                    return True
                del assignment[v]
        return False

    return dict(assignment) if solve(0) else None


def build_witness(
    cfg: Configuration,
    residuals: Mapping[int, frozenset[int]],
    edge_maps: Mapping[tuple[int, int], Mapping[int, int]],
) -> CoverInstance:
    """Concrete cover instance from a branch of the enumeration.

    edge_maps are partial injections oriented along the (min, max) edge key;
    unspecified edges (the straightened forest) get the identity.
    """
    sigma = {}
    for e in cfg.graph.edges:
        if e in edge_maps:
            sigma[e] = extend_to_bijection(edge_maps[e])
        else:
            sigma[e] = identity(K)
    avail = tuple(
        residuals.get(v, FULL) for v in range(cfg.graph.n)
    )
    return CoverInstance(cfg.graph, K, avail, sigma)


def _free_edges(cfg: Configuration, exclude_vertex: Optional[int] = None) -> list:
    tree = set(cfg.tree)
    return [
        e for e in sorted(cfg.graph.edges)
        if e not in tree and exclude_vertex not in e
    ]


def _straight_constraints(cfg: Configuration) -> list:
    ident = {c: c for c in range(1, K + 1)}
    return [(u, v, ident) for u, v in cfg.tree]


# ---------------------------------------------------------------------------
# strategies


def _check_product(cfg: Configuration, budget: Optional[int],
                   split: Optional[tuple[int, int]] = None) -> Verdict:
    verts = list(range(cfg.graph.n))
    straight = _straight_constraints(cfg)
    free = _free_edges(cfg)
    enumerated = 0
    t0 = time.monotonic()
    for ri, residuals in enumerate(residual_choices(cfg)):
        if split is not None and ri % split[1] != split[0]:
            continue
        options = [maximal_injections(residuals[u], residuals[v]) for u, v in free]
        for combo in itertools.product(*options):
            enumerated += 1
            if budget is not None and enumerated > budget:
                return Verdict(INCONCLUSIVE, stats={
                    "enumerated": enumerated, "reason": "budget exhausted",
                    "seconds": time.monotonic() - t0})
            cons = straight + [
                (u, v, m) for (u, v), m in zip(free, combo)
            ]
            if local_solve(verts, residuals, cons) is None:
                witness = build_witness(
                    cfg, residuals, dict(zip(free, combo)))
                return Verdict(NOT_REDUCIBLE, witness, {
                    "enumerated": enumerated,
                    "seconds": time.monotonic() - t0})
    return Verdict(REDUCIBLE, stats={
        "enumerated": enumerated, "seconds": time.monotonic() - t0})


def _side_blocked_families(
    cfg: Configuration, side: list[int], cut: int,
    cut_residual: frozenset[int], budget_state: list,
) -> set[frozenset[int]] | Verdict:
    """All realizable sets of cut colors whose choice leaves `side` uncolorable.

    Returns the family of blocked-color sets over every residual/matching
    choice on the side (including its edges to the cut vertex), keyed so the
    caller can test whether two sides can jointly block every cut color.
    Each family member remembers one realizing branch for witness assembly.
    """
    sub_cfg_edges = [
        e for e in sorted(cfg.graph.edges)
        if (e[0] in side or e[0] == cut) and (e[1] in side or e[1] == cut)
    ]
    side_edges = [e for e in sub_cfg_edges if cut not in e]
    cut_edges = [e for e in sub_cfg_edges if cut in e]
    families: dict[frozenset[int], tuple] = {}
    floor_sets = {
        v: frozenset(range(1, cfg.floors[v] + 1)) for v in side
    }
    options = [maximal_injections(floor_sets[u], floor_sets[v])
               for u, v in side_edges]
    cut_options = []
    for u, v in cut_edges:
        a = cut_residual if u == cut else floor_sets[u]
        b = cut_residual if v == cut else floor_sets[v]
        cut_options.append(maximal_injections(a, b))
    for combo in itertools.product(*options):
        for cut_combo in itertools.product(*cut_options):
            budget_state[0] += 1
            cons = [(u, v, m) for (u, v), m in zip(side_edges, combo)]
            blocked = set()
            for c in sorted(cut_residual):
                cut_cons = cons + [
                    (u, v, m) for (u, v), m in zip(cut_edges, cut_combo)
                ]
                avail = dict(floor_sets)
                avail[cut] = frozenset({c})
                if local_solve(side + [cut], avail, cut_cons) is None:
                    blocked.add(c)
            key = frozenset(blocked)
            if key not in families:
                families[key] = (
                    dict(zip(side_edges, combo)) | dict(zip(cut_edges, cut_combo))
                )
    return families


def _check_condition(cfg: Configuration, budget: Optional[int]) -> Verdict:
    cut = cfg.cut
    assert cut is not None and not cfg.tree
    # components of the local graph minus the cut vertex
    comps: list[list[int]] = []
    seen: set[int] = {cut}
    for v in range(cfg.graph.n):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            u = stack.pop()
            for w in cfg.graph.adjacency[u]:
                if w not in seen and w != cut:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    if len(comps) != 2:
        raise ValueError(
            f"condition strategy needs exactly two sides, got {len(comps)}")
    cut_residual = frozenset(range(1, cfg.floors[cut] + 1))
    t0 = time.monotonic()
    state = [0]
    fam = [
        _side_blocked_families(cfg, comp, cut, cut_residual, state)
        for comp in comps
    ]
    stats = {"enumerated": state[0], "seconds": time.monotonic() - t0}
    if budget is not None and state[0] > budget:
        stats["reason"] = "budget exhausted"
        return Verdict(INCONCLUSIVE, stats=stats)
    for bad_a, maps_a in fam[0].items():
        for bad_b, maps_b in fam[1].items():
            if bad_a | bad_b >= cut_residual:
                residuals = {
                    v: frozenset(range(1, cfg.floors[v] + 1))
                    for v in range(cfg.graph.n)
                }
                witness = build_witness(cfg, residuals, maps_a | maps_b)
                stats["blocking_pair"] = (sorted(bad_a), sorted(bad_b))
                return Verdict(NOT_REDUCIBLE, witness, stats)
    stats["families"] = [sorted(map(sorted, f)) for f in fam]
    return Verdict(REDUCIBLE, stats=stats)


def _check_margin(cfg: Configuration, budget: Optional[int]) -> Verdict:
    """REDUCIBLE iff at most one color of the precolored vertex is ever bad."""
    v = cfg.margin_vertex
    assert v is not None
    others = [x for x in range(cfg.graph.n) if x != v]
    floor_sets = {
        x: frozenset(range(1, cfg.floors[x] + 1)) for x in range(cfg.graph.n)
    }
    inner_edges = [e for e in sorted(cfg.graph.edges) if v not in e]
    v_edges = [e for e in sorted(cfg.graph.edges) if v in e]
    options = [maximal_injections(floor_sets[a], floor_sets[b])
               for a, b in inner_edges]
    v_options = [maximal_injections(floor_sets[a], floor_sets[b])
                 for a, b in v_edges]
    enumerated = 0
    worst = 0
    t0 = time.monotonic()
    for combo in itertools.product(*options):
        inner_cons = [(a, b, m) for (a, b), m in zip(inner_edges, combo)]
        for v_combo in itertools.product(*v_options):
            enumerated += 1
            if budget is not None and enumerated > budget:
                return Verdict(INCONCLUSIVE, stats={
                    "enumerated": enumerated, "reason": "budget exhausted",
                    "seconds": time.monotonic() - t0})
            cons = inner_cons + [
                (a, b, m) for (a, b), m in zip(v_edges, v_combo)
            ]
            bad = []
            for c in sorted(floor_sets[v]):
                avail = dict(floor_sets)
                avail[v] = frozenset({c})
                if local_solve([v] + others, avail, cons) is None:
                    bad.append(c)
            if len(bad) > worst:
                worst = len(bad)
            if len(bad) > 1:
                witness = build_witness(
                    cfg, floor_sets,
                    dict(zip(inner_edges, combo)) | dict(zip(v_edges, v_combo)))
                return Verdict(NOT_REDUCIBLE, witness, {
                    "enumerated": enumerated, "bad_colors": bad,
                    "seconds": time.monotonic() - t0})
    return Verdict(REDUCIBLE, stats={
        "enumerated": enumerated, "worst_bad_colors": worst,
        "seconds": time.monotonic() - t0})


def check_precolor_margin(cfg: Configuration) -> bool:
    """True iff in every instance at most one precolor choice is blocked."""
    return _check_margin(cfg, None).status == REDUCIBLE


def _adversary_blocks(
    profiles: list[tuple[int, ...]],
    residuals: Sequence[frozenset[int]],
) -> Optional[list[dict[int, int]]]:
    """Pivot-edge maps making every profile hit four distinct colors, or None.

    profiles[i] lists one color per pivot neighbor (fixed order); residuals
    gives each neighbor's residual set.  A profile is blocked when its mapped
    images are pairwise distinct (then they exhaust the pivot's four colors).
    """
    n = len(residuals)
    # Two profiles differing in exactly one coordinate cannot both be
    # blocked: their other images coincide, so the remaining color is the
    # same, forcing one injection to repeat a value.  Reject cheaply.
    for a in range(len(profiles)):
        pa = profiles[a]
        for b in range(a + 1, len(profiles)):
            pb = profiles[b]
            if sum(1 for x, y in zip(pa, pb) if x != y) == 1:
                return None
    # variables (i, c): the image of color c at neighbor i.  Constraints are
    # all binary inequalities: same-neighbor variables differ (injectivity)
    # and each profile's four variables differ (its images then exhaust the
    # pivot's colors).  Blocking maps exist iff this conflict graph has a
    # proper coloring with colors 1..4.
    variables = [(i, c) for i in range(n) for c in sorted(residuals[i])]
    index = {v: j for j, v in enumerate(variables)}
    adj: list[set[int]] = [set() for _ in variables]

    def link(a, b):
        adj[index[a]].add(index[b])
        adj[index[b]].add(index[a])

    for i in range(n):
        cs = sorted(residuals[i])
        for a in range(len(cs)):
            for b in range(a + 1, len(cs)):
                link((i, cs[a]), (i, cs[b]))
    for p in profiles:
        for a in range(n):
            for b in range(a + 1, n):
                if (a, p[a]) != (b, p[b]):
                    link((a, p[a]), (b, p[b]))
    value: dict[int, int] = {}

    def solve() -> bool:
        best, best_dom = None, None
        for j in range(len(variables)):
            if j in value:
                continue
            dom = [c for c in range(1, K + 1)
                   if all(value.get(nb) != c for nb in adj[j])]
            if best_dom is None or len(dom) < len(best_dom):
                best, best_dom = j, dom
                if not dom:
                    return False
        if best is None:
            return True
        for c in best_dom:
            value[best] = c
            if solve():
                return True
            del value[best]
        return False

    if not solve():
        return None
    out: list[dict[int, int]] = []
    for i in range(n):
        out.append({c: value[index[(i, c)]] for c in sorted(residuals[i])})
    return out


def _check_eliminate(cfg: Configuration, budget: Optional[int],
                     split: Optional[tuple[int, int]] = None) -> Verdict:
    import numpy as np

    z = cfg.pivot
    assert z is not None
    if cfg.floors[z] != K:
        raise ValueError("eliminate strategy needs a full-floor pivot")
    nbrs = sorted(cfg.graph.adjacency[z])
    if len(nbrs) != K:
        raise ValueError("eliminate strategy needs a degree-4 pivot")
    others = [v for v in range(cfg.graph.n) if v != z]
    non_nbrs = [v for v in others if v not in nbrs]
    if len(non_nbrs) != len(others) - K:
        raise AssertionError
    # candidate index order: pivot neighbors outermost, non-neighbors
    # innermost, so candidates grouped by neighbor-color profile
    cand_order = nbrs + non_nbrs
    straight = [e for e in cfg.tree]
    free = _free_edges(cfg, exclude_vertex=z)
    if any(z in e for e in straight):
        raise ValueError("straightened forest must avoid the pivot")
    t0 = time.monotonic()
    enumerated = 0
    adversary_cache: dict = {}
    for ri, residuals in enumerate(residual_choices(cfg, skip=(z,))):
        if split is not None and ri % split[1] != split[0]:
            continue
        domains = [sorted(residuals[v]) for v in cand_order]
        sizes = [len(d) for d in domains]
        ncand = 1
        for s in sizes:
            ncand *= s
        # per-candidate color arrays
        grids = np.meshgrid(*[np.array(d) for d in domains], indexing="ij")
        color = {v: g.reshape(-1) for v, g in zip(cand_order, grids)}
        base = np.ones(ncand, dtype=bool)
        for u, v in straight:
            base &= color[u] != color[v]
        # profile grouping: non-neighbor vertices vary fastest
        group = 1
        for v in non_nbrs:
            group *= len(residuals[v])
        nprof = ncand // group
        starts = np.arange(0, ncand, group)
        prof_residuals = [residuals[v] for v in nbrs]
        prof_table = [
            combo for combo in itertools.product(
                *(sorted(residuals[v]) for v in nbrs))
        ]
        assert len(prof_table) == nprof
        res_key = tuple(tuple(sorted(r)) for r in prof_residuals)

        def edge_mask(e, m) -> np.ndarray:
            u, v = e
            mu = np.array([m.get(c, 0) for c in domains[cand_order.index(u)]])
            return mu[_axis_index(e)] != color[v]

        def _axis_index(e):
            # index of u's color within its domain, per candidate
            u = e[0]
            ax = cand_order.index(u)
            reps_after = 1
            for s in sizes[ax + 1:]:
                reps_after *= s
            idx = (np.arange(ncand) // reps_after) % sizes[ax]
            return idx

        masks = []
        for e in free:
            u, v = e
            opts = maximal_injections(residuals[u], residuals[v])
            arr = np.empty((len(opts), ncand), dtype=bool)
            for i, m in enumerate(opts):
                arr[i] = edge_mask(e, m)
            masks.append((e, opts, arr))
        # vectorize over the edge with the most options
        masks.sort(key=lambda t: len(t[1]))
        outer, last = masks[:-1], masks[-1] if masks else None

        def handle(prof_alive: np.ndarray, chosen_maps: dict) -> Optional[Verdict]:
            nonlocal enumerated
            enumerated += 1
            if budget is not None and enumerated > budget:
                return Verdict(INCONCLUSIVE, stats={
                    "enumerated": enumerated, "reason": "budget exhausted",
                    "seconds": time.monotonic() - t0})
            if int(prof_alive.sum()) > 24:
                return None  # more live profiles than any pivot maps can block
            profiles = [prof_table[pid] for pid in np.nonzero(prof_alive)[0]]
            key = (res_key, frozenset(profiles))
            if key in adversary_cache:
                fs = adversary_cache[key]
            else:
                fs = _adversary_blocks(profiles, prof_residuals)
                adversary_cache[key] = fs
            if fs is None:
                return None
            pivot_maps = {
                edge_key(nb, z): (f if edge_key(nb, z) == (nb, z)
                                  else {img: c for c, img in f.items()})
                for nb, f in zip(nbrs, fs)
            }
            witness = build_witness(cfg, residuals, chosen_maps | pivot_maps)
            return Verdict(NOT_REDUCIBLE, witness, {
                "enumerated": enumerated,
                "profiles": sorted(profiles),
                "seconds": time.monotonic() - t0})

        if last is None:
            v = handle(np.logical_or.reduceat(base, starts), {})
            if v is not None:
                return v
            continue
        le, lopts, larr = last

        def recurse(i: int, acc: np.ndarray, chosen: dict) -> Optional[Verdict]:
            if i == len(outer):
                alive = larr & acc[None, :]
                prof = np.logical_or.reduceat(alive, starts, axis=1)
                counts = prof.sum(axis=1)
                for j in np.nonzero(counts <= 24)[0]:
                    v = handle(prof[j], chosen | {le: lopts[j]})
                    if v is not None:
                        return v
                nonlocal enumerated
                enumerated += int((counts > 24).sum())
                return None
            e, opts, arr = outer[i]
            for j, m in enumerate(opts):
                v = recurse(i + 1, acc & arr[j], chosen | {e: m})
                if v is not None:
                    return v
            return None

        v = recurse(0, base, {})
        if v is not None:
            return v
    return Verdict(REDUCIBLE, stats={
        "enumerated": enumerated, "seconds": time.monotonic() - t0})


def _check_sampled(cfg: Configuration, seed: int, count: int) -> Verdict:
    import random

    rng = random.Random(seed)
    verts = list(range(cfg.graph.n))
    straight = _straight_constraints(cfg)
    free = _free_edges(cfg)
    t0 = time.monotonic()
    for _ in range(count):
        residuals = {
            v: frozenset(rng.sample(range(1, K + 1), cfg.floors[v]))
            for v in verts
        }
        maps = {}
        for e in free:
            u, v = e
            opts = maximal_injections(residuals[u], residuals[v])
            maps[e] = rng.choice(opts)
        cons = straight + [(u, v, m) for (u, v), m in maps.items()]
        if local_solve(verts, residuals, cons) is None:
            witness = build_witness(cfg, residuals, maps)
            return Verdict(NOT_REDUCIBLE, witness, {
                "enumerated": count, "seconds": time.monotonic() - t0})
    return Verdict(INCONCLUSIVE, stats={
        "enumerated": count, "reason": "sampled run found no counterexample",
        "seconds": time.monotonic() - t0})


def check_reducible(
    cfg: Configuration,
    mode: str = "full",
    seed: int = 0,
    count: int = 1000,
    budget: Optional[int] = None,
    split: Optional[tuple[int, int]] = None,
) -> Verdict:
    """Exhaustive (mode='full') or seeded-sample (mode='sampled') check."""
    if mode == "sampled":
        return _check_sampled(cfg, seed, count)
    if mode != "full":
        raise ValueError(f"unknown mode {mode!r}")
    if cfg.strategy == "product":
        verdict = _check_product(cfg, budget, split)
    elif cfg.strategy == "condition":
        verdict = _check_condition(cfg, budget)
    elif cfg.strategy == "eliminate":
        verdict = _check_eliminate(cfg, budget, split)
    elif cfg.strategy == "margin":
        verdict = _check_margin(cfg, budget)
    else:
        raise ValueError(f"unknown strategy {cfg.strategy!r}")
    if verdict.status == NOT_REDUCIBLE:
        assert verdict.witness is not None
        if not verify_witness(verdict.witness):
            raise AssertionError(
                "internal error: counterexample witness admits a transversal")
    return verdict


def check_greedy_certificate(
    cfg: Configuration,
    order: Sequence[str],
    pivot: Optional[tuple[str, str, int]] = None,
) -> bool:
    """Validate a 'color ... in order' proof step over the full enumeration.

    pivot = (pivot_role, protected_role, threshold): first choose a pivot
    color leaving the protected vertex at least `threshold` residual colors;
    then the remaining vertices, in `order`, must be colorable no matter
    which residual color each greedy step picks.
    """
    verts = list(range(cfg.graph.n))
    straight = _straight_constraints(cfg)
    free = _free_edges(cfg)
    order_ids = [cfg.vertex(r) for r in order]
    pivot_id = protected_id = None
    threshold = 0
    if pivot is not None:
        pivot_id, protected_id, threshold = (
            cfg.vertex(pivot[0]), cfg.vertex(pivot[1]), pivot[2])
        if set(order_ids) | {pivot_id} != set(verts):
            raise ValueError("order plus pivot must cover all vertices")
    elif set(order_ids) != set(verts):
        raise ValueError("order must cover all vertices")

    def residual_of(v, assignment, residuals, cons):
        out = set(residuals[v])
        for a, b, m in cons:
            if a == v and b in assignment:
                out -= {c for c in out if m.get(c) == assignment[b]}
            elif b == v and a in assignment:
                out.discard(m.get(assignment[a]))
        return out

    def greedy_all_choices(i, assignment, residuals, cons) -> bool:
        if i == len(order_ids):
            return True
        v = order_ids[i]
        cs = residual_of(v, assignment, residuals, cons)
        if not cs:
            return False
        for c in cs:
            assignment[v] = c
            if not greedy_all_choices(i + 1, assignment, residuals, cons):
                del assignment[v]
                return False
            del assignment[v]
        return True

    for residuals in residual_choices(cfg):
        options = [maximal_injections(residuals[u], residuals[v]) for u, v in free]
        for combo in itertools.product(*options):
            cons = straight + [(u, v, m) for (u, v), m in zip(free, combo)]
            if pivot_id is None:
                if not greedy_all_choices(0, {}, residuals, cons):
                    return False
                continue
            found = False
            for c in sorted(residuals[pivot_id]):
                assignment = {pivot_id: c}
                if len(residual_of(protected_id, assignment, residuals,
                                   cons)) < threshold:
                    continue
                if greedy_all_choices(0, assignment, residuals, cons):
                    found = True
                    break
            if not found:
                return False
    return True


def verify_witness(w: CoverInstance) -> bool:
    """True iff exhaustive search over complete assignments finds no transversal."""
    from .cover import brute_force_transversal

    return brute_force_transversal(w) is None
