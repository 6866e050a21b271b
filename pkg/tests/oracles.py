"""Independent reference computations used only by the tests."""

from __future__ import annotations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher


def to_networkx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges)
    return h


def automorphism_count(g) -> int:
    h = to_networkx(g)
    return sum(1 for _ in GraphMatcher(h, h).isomorphisms_iter())


def automorphisms(g) -> list[tuple[int, ...]]:
    h = to_networkx(g)
    return [tuple(m[v] for v in range(g.order)) for m in GraphMatcher(h, h).isomorphisms_iter()]


def closure_size(gens, degree: int) -> int:
    ident = tuple(range(degree))
    seen = {ident}
    todo = [ident]
    while todo:
        x = todo.pop()
        for s in gens:
            y = tuple(s[i] for i in x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen)


def edge_orbit_count(g, perms) -> int:
    edges = set(g.edges)
    orbits = 0
    seen = set()
    for e in sorted(edges):
        if e in seen:
            continue
        orbits += 1
        for p in perms:
            u, v = p[e[0]], p[e[1]]
            seen.add((min(u, v), max(u, v)))
    return orbits
