"""Full automorphism groups of rose window graphs, computed two independent ways.

``generic`` is a partition-refinement backtrack that only sees the abstract
graph: vertices are first coloured by degree and then refined by neighbour
colours, so maps that swap rim and hub vertices are found like any other.
``paper`` (Method.FAMILY) assembles the known generating sets for Families 2, 3 and 4.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import autos
from .errors import ApplicabilityError, CapacityError
from .graph import EdgeKind, RoseWindowParams, RWGraph, build, is_automorphism, kind_label, tau_map
from .perm import Permutation, PermutationGroup, enum_cap, schreier_sims

GENERIC_MAX_DEGREE = 200


class Method(str, enum.Enum):
    GENERIC = "generic"
    FAMILY = "paper"  # CLI spelling


# ---------------------------------------------------------------------------
# colour refinement


def _refine(adj: Sequence[frozenset[int]], colours: list[int]) -> list[int]:
    """Coarsest equitable refinement; colour ids are ranks of invariant signatures."""
    k = len(set(colours))
    while True:
        sig = [(colours[v], tuple(sorted(colours[u] for u in adj[v]))) for v in range(len(adj))]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == k:
            return new
        colours, k = new, len(ranks)


def _individualize(adj, colours: list[int], v: int) -> list[int]:
    keyed = [(c, 0 if u == v else 1) for u, c in enumerate(colours)]
    ranks = {s: i for i, s in enumerate(sorted(set(keyed)))}
    return _refine(adj, [ranks[s] for s in keyed])


def _invariant(adj, colours: list[int]) -> tuple:
    """Cell sizes plus the neighbour-colour profile of each cell (equitable partitions)."""
    seen: dict[int, tuple] = {}
    sizes: dict[int, int] = {}
    for v, c in enumerate(colours):
        sizes[c] = sizes.get(c, 0) + 1
        if c not in seen:
            seen[c] = tuple(sorted(colours[u] for u in adj[v]))
    return tuple((c, sizes[c], seen[c]) for c in sorted(sizes))


def _target_cell(colours: list[int]) -> int | None:
    """Colour of the smallest non-singleton cell, lowest colour on ties."""
    sizes: dict[int, int] = {}
    for c in colours:
        sizes[c] = sizes.get(c, 0) + 1
    best = None
    for c in sorted(sizes):
        s = sizes[c]
        if s > 1 and (best is None or s < sizes[best]):
            best = c
    return best


def _cell(colours: list[int], c: int) -> list[int]:
    return [v for v, x in enumerate(colours) if x == c]


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    generators: int = 0


def generic_automorphism_generators(g: RWGraph, stats: SearchStats | None = None) -> list[Permutation]:
    """Generators of Aut(g) by individualization-refinement with orbit pruning."""
    adj = g.adjacency
    deg = g.order
    edges = g.edge_set
    stats = stats if stats is not None else SearchStats()

    root = _refine(adj, [len(adj[v]) for v in range(deg)])
    # first path
    path_cols = [root]
    path_pts: list[int] = []
    path_cells: list[int] = []
    cur = root
    while True:
        c = _target_cell(cur)
        if c is None:
            break
        v = _cell(cur, c)[0]
        path_cells.append(c)
        path_pts.append(v)
        cur = _individualize(adj, cur, v)
        path_cols.append(cur)
        stats.nodes += 1
    first_leaf = cur
    by_colour = {c: v for v, c in enumerate(first_leaf)}
    invariants = [_invariant(adj, cols) for cols in path_cols]

    def leaf_map(leaf: list[int]) -> Permutation | None:
        images = [0] * deg
        for v, c in enumerate(leaf):
            images[by_colour[c]] = v
        perm = Permutation._raw(images)
        for u, v in edges:
            x, y = perm[u], perm[v]
            if ((x, y) if x < y else (y, x)) not in edges:
                return None
        return perm

    def dive(cols: list[int], level: int) -> Permutation | None:
        # cols corresponds to path level `level`; try to reach a leaf matching an automorphism
        stats.nodes += 1
        if level == len(path_pts):
            stats.leaves += 1
            return leaf_map(cols)
        c = path_cells[level]
        for u in _cell(cols, c):
            nxt = _individualize(adj, cols, u)
            if _invariant(adj, nxt) != invariants[level + 1]:
                continue
            found = dive(nxt, level + 1)
            if found is not None:
                return found
        return None

    gens: list[Permutation] = []
    for level in range(len(path_pts) - 1, -1, -1):
        cols = path_cols[level]
        b = path_pts[level]
        cell = _cell(cols, path_cells[level])
        level_gens = list(gens)
        orbit = _orbit(level_gens, b, deg)
        for w in cell:
            if w in orbit:
                continue
            nxt = _individualize(adj, cols, w)
            if _invariant(adj, nxt) != invariants[level + 1]:
                continue
            found = dive(nxt, level + 1)
            if found is not None:
                gens.append(found)
                stats.generators += 1
                orbit = _orbit(gens, b, deg)
    return gens


def _orbit(gens: Sequence[Permutation], point: int, degree: int) -> set[int]:
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for s in gens:
            y = s[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


# ---------------------------------------------------------------------------
# generators from the family descriptions


def family_generators(params: RoseWindowParams) -> tuple[str, list[Permutation]]:
    """Known generating set of the full group for Family 2, 3 or 4 members."""
    p = params
    if autos.family2_sign(p) is not None:
        return "F2", [autos.rho(p), autos.mu(p), autos.explicit_automorphism(autos.Kind.GAMMA_F2, p)]
    m = autos.family3_m(p)
    if m is not None:
        q = p if p.a == m - 2 else RoseWindowParams(p.n, m - 2, p.r)
        gens = [autos.rho(q), autos.mu(q)]
        gens += [autos.explicit_automorphism((autos.Kind.EPSILON, i), q) for i in range(m)]
        if q != p:
            gens = list(autos._conjugate(gens, tau_map(p.n)))
        return "F3", gens
    info = autos.family4_d(p)
    if info is not None:
        q, m, d, flip = autos.family4_canonical(p)
        gens = [autos.rho(q), autos.mu(q), autos.explicit_automorphism(autos.Kind.SIGMA_F4, q)]
        if m % 4 == 2:
            gens.append(autos.explicit_automorphism(autos.Kind.OMEGA_F4, q))
        if flip:
            gens = list(autos._conjugate(gens, tau_map(p.n)))
        return "F4", gens
    raise ApplicabilityError(f"{p}: no known full-group generators outside Families 2-4")


# ---------------------------------------------------------------------------
# results


@dataclass
class AutGroupResult:
    params: RoseWindowParams
    group: PermutationGroup
    method: Method
    generators: list[Permutation]
    vertex_orbits: list[list[int]] = field(default_factory=list)
    edge_orbits: list[list[tuple[int, int]]] = field(default_factory=list)
    stats: SearchStats | None = None

    @property
    def order(self) -> int:
        return self.group.order()


def _edge_orbits(gens: Sequence[Permutation], g: RWGraph) -> list[list[tuple[int, int]]]:
    edges = sorted(g.edges)
    index = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in gens:
        for i, (u, v) in enumerate(edges):
            x, y = s[u], s[v]
            j = index[(x, y) if x < y else (y, x)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[tuple[int, int]]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), []).append(e)
    return sorted(groups.values())


def automorphism_group(g: RWGraph, method: Method | str = Method.GENERIC,
                       max_degree: int = GENERIC_MAX_DEGREE) -> AutGroupResult:
    method = Method(method)
    stats = None
    if method is Method.GENERIC:
        if g.order > max_degree:
            raise CapacityError(f"generic search is capped at {max_degree} vertices; {g.params} has {g.order}")
        stats = SearchStats()
        gens = generic_automorphism_generators(g, stats)
    else:
        _, gens = family_generators(g.params)
    for s in gens:
        if not is_automorphism(s, g):
            raise AssertionError(f"non-automorphism among generators for {g.params}")
    group = schreier_sims(gens, degree=g.order)
    return AutGroupResult(g.params, group, method, list(gens), group.orbits(),
                          _edge_orbits(gens, g), stats)


def edge_orbit_count(res: AutGroupResult, g: RWGraph) -> tuple[int, list[str]]:
    """Number of edge orbits, and the kind label set of each orbit."""
    orbits = res.edge_orbits or _edge_orbits(res.generators, g)
    labels = []
    for orb in orbits:
        kinds: set[EdgeKind] = set()
        for e in orb:
            kinds |= g.edges[e]
        labels.append(kind_label(kinds))
    return len(orbits), labels


def is_vertex_transitive_computed(res: AutGroupResult) -> bool:
    return len(res.vertex_orbits) == 1


def rim_hub_conditions(params: RoseWindowParams) -> tuple[bool, bool, bool]:
    """The three arithmetic conditions for a rim/hub swapping automorphism."""
    n, a, r = params.n, params.a, params.r
    r2 = (r * r) % n
    ra_ok = (r * a - a) % n == 0 or (r * a + a) % n == 0
    half = 2 * a == n
    c1 = not half and r2 == 1 and ra_ok
    c2 = half and r2 in (1, n - 1) and ra_ok
    c3 = n % 4 == 0 and math.gcd(n, r) == 1 and half and (r * r + n // 2) % n in (1, n - 1)
    return c1, c2, c3


def rim_hub_swap_exists(params: RoseWindowParams, res: AutGroupResult,
                        cap: int | None = None) -> tuple[bool, bool]:
    """(arithmetic prediction, computed answer) for an automorphism exchanging rim and hub edges."""
    arithmetic = any(rim_hub_conditions(params))
    g = build(params)
    rim = g.edges_of_kind(EdgeKind.RIM)
    hub = g.edges_of_kind(EdgeKind.HUB)
    shared = any(any(e in rim for e in orb) and any(e in hub for e in orb) for orb in res.edge_orbits)
    if not shared or len(rim) != len(hub):
        return arithmetic, False
    cap = enum_cap() if cap is None else cap
    for x in res.group.elements(cap):
        ok = True
        for u, v in rim:
            a, b = x[u], x[v]
            if ((a, b) if a < b else (b, a)) not in hub:
                ok = False
                break
        if ok:
            return arithmetic, True
    return arithmetic, False


def aut_order(params: RoseWindowParams, method: Method | str = Method.GENERIC) -> int:
    return automorphism_group(build(params), method).order
