"""Rose window graphs R_n(a, r).

Vertex encoding (public contract): rim vertex ``A_i`` is ``i`` and hub vertex
``B_i`` is ``n + i``, indices taken mod n.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ParameterError
from .perm import Permutation


class EdgeKind(str, enum.Enum):
    RIM = "rim"
    INSPOKE = "inspoke"
    OUTSPOKE = "outspoke"
    HUB = "hub"

    def __str__(self) -> str:
        return self.value


_KIND_ORDER = {k: i for i, k in enumerate(EdgeKind)}


def kind_label(kinds) -> str:
    """Stable text label for a tag set, e.g. ``'rim'`` or ``'rim+hub'``."""
    return "+".join(k.value for k in sorted(kinds, key=_KIND_ORDER.__getitem__))


@dataclass(frozen=True, order=True)
class RoseWindowParams:
    n: int
    a: int
    r: int

    def __post_init__(self):
        for name in ("n", "a", "r"):
            if not isinstance(getattr(self, name), int):
                raise ParameterError(f"{name} must be an integer")
        if self.n < 3:
            raise ParameterError(f"n must be >= 3, got {self.n}")
        if not 1 <= self.a <= self.n - 1:
            raise ParameterError(f"a must lie in [1, {self.n - 1}], got {self.a}")
        if not 1 <= self.r <= self.n - 1:
            raise ParameterError(f"r must lie in [1, {self.n - 1}], got {self.r}")

    @property
    def degree(self) -> int:
        """Number of vertices, 2n."""
        return 2 * self.n

    @property
    def degenerate(self) -> bool:
        """True when 2r = 0 mod n, so the hub edges collapse to a matching."""
        return (2 * self.r) % self.n == 0

    def A(self, i: int) -> int:
        return i % self.n

    def B(self, i: int) -> int:
        return self.n + i % self.n

    def label(self, v: int) -> str:
        return f"A{v}" if v < self.n else f"B{v - self.n}"

    def representatives(self) -> list["RoseWindowParams"]:
        """The four sign representatives (+-a, +-r), deduplicated, in lexicographic order."""
        n = self.n
        reps = {RoseWindowParams(n, a, r) for a in (self.a, n - self.a) for r in (self.r, n - self.r)}
        return sorted(reps)

    def __str__(self) -> str:
        return f"R_{self.n}({self.a},{self.r})"


def make_params(n: int, a: int, r: int) -> RoseWindowParams:
    return RoseWindowParams(n, a, r)


@dataclass(frozen=True)
class RWGraph:
    params: RoseWindowParams
    adjacency: tuple[frozenset[int], ...]
    edges: dict[tuple[int, int], frozenset[EdgeKind]] = field(compare=False)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def order(self) -> int:
        return len(self.adjacency)

    @property
    def degenerate(self) -> bool:
        return self.params.degenerate

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def is_regular(self, k: int = 4) -> bool:
        return all(len(nb) == k for nb in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def edges_of_kind(self, kind: EdgeKind) -> frozenset[tuple[int, int]]:
        return frozenset(e for e, ks in self.edges.items() if kind in ks)

    def to_dot(self) -> str:
        p = self.params
        lines = [f"graph R_{p.n}_{p.a}_{p.r} {{"]
        for v in range(self.order):
            lines.append(f"  {p.label(v)};")
        for (u, v), kinds in sorted(self.edges.items()):
            lines.append(f"  {p.label(u)} -- {p.label(v)} [kind={kind_label(kinds)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "a": p.a,
            "r": p.r,
            "degenerate": p.degenerate,
            "edges": [[u, v, kind_label(k)] for (u, v), k in sorted(self.edges.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True) + "\n"


def build(params: RoseWindowParams) -> RWGraph:
    """Construct R_n(a, r); coincident edges are stored once with every tag."""
    n, a, r = params.n, params.a, params.r
    tags: dict[tuple[int, int], set[EdgeKind]] = {}

    def add(u: int, v: int, kind: EdgeKind) -> None:
        if u == v:
            raise ParameterError(f"{params} would contain a loop at {params.label(u)}")
        key = (u, v) if u < v else (v, u)
        tags.setdefault(key, set()).add(kind)

    for i in range(n):
        add(params.A(i), params.A(i + 1), EdgeKind.RIM)
        add(params.A(i), params.B(i), EdgeKind.INSPOKE)
        add(params.A(i + a), params.B(i), EdgeKind.OUTSPOKE)
        add(params.B(i), params.B(i + r), EdgeKind.HUB)

    adj: list[set[int]] = [set() for _ in range(2 * n)]
    for u, v in tags:
        adj[u].add(v)
        adj[v].add(u)
    edges = {e: frozenset(tags[e]) for e in sorted(tags)}
    return RWGraph(params, tuple(frozenset(s) for s in adj), edges)


def edge_kind(g: RWGraph, u: int, v: int) -> frozenset[EdgeKind]:
    key = (u, v) if u < v else (v, u)
    try:
        return g.edges[key]
    except KeyError:
        raise ParameterError(
            f"{g.params.label(u)}{g.params.label(v)} is not an edge of {g.params}"
        ) from None


TAU = "tau"  # R_n(a,r) ~ R_n(-a,r) via i -> -i
HUB_REFLECTION = "hub_reflection"  # R_n(a,r) = R_n(a,-r) identically


def normalize(params: RoseWindowParams) -> tuple[RoseWindowParams, tuple[str, ...]]:
    """Lexicographically least (a', r') in {a, n-a} x {r, n-r}, plus the substitutions used."""
    n = params.n
    a2 = min(params.a, n - params.a)
    r2 = min(params.r, n - params.r)
    prov = []
    if a2 != params.a:
        prov.append(TAU)
    if r2 != params.r:
        prov.append(HUB_REFLECTION)
    return RoseWindowParams(n, a2, r2), tuple(prov)


def tau_map(n: int) -> Permutation:
    """A_i -> A_{-i}, B_i -> B_{-i}."""
    return Permutation._raw([(-i) % n for i in range(n)] + [n + (-i) % n for i in range(n)])


def normalization_map(params: RoseWindowParams, provenance: tuple[str, ...]) -> Permutation:
    """Isomorphism build(params) -> build(normalized) for a recorded provenance."""
    if TAU in provenance:
        return tau_map(params.n)
    return Permutation.identity(params.degree)


def zeta_map(params: RoseWindowParams) -> tuple[Permutation, RoseWindowParams]:
    """A_i -> B_{-i/r}, B_i -> A_{-i/r}; an isomorphism onto R_n(a/r, 1/r).

    Requires gcd(n, r) = 1.
    """
    n, a, r = params.n, params.a, params.r
    if math.gcd(n, r) != 1:
        raise ParameterError(f"zeta needs gcd(n, r) = 1, got gcd({n}, {r}) = {math.gcd(n, r)}")
    s = pow(r, -1, n)
    images = [n + (-i * s) % n for i in range(n)] + [(-i * s) % n for i in range(n)]
    return Permutation._raw(images), RoseWindowParams(n, (a * s) % n, s)


def is_isomorphism(perm: Permutation, source: RWGraph, target: RWGraph) -> bool:
    if len(perm) != source.order or source.order != target.order:
        return False
    if len(source.edges) != len(target.edges):
        return False
    tgt = target.edge_set
    for u, v in source.edges:
        x, y = perm[u], perm[v]
        if ((x, y) if x < y else (y, x)) not in tgt:
            return False
    return True


def is_automorphism(perm: Permutation, g: RWGraph) -> bool:
    return is_isomorphism(perm, g, g)


def all_params(max_n: int, min_n: int = 3, normalized_only: bool = False,
               include_degenerate: bool = False):
    """Every valid (n, a, r) with min_n <= n <= max_n, ordered by (n, a, r)."""
    for n in range(min_n, max_n + 1):
        for a in range(1, n):
            for r in range(1, n):
                p = RoseWindowParams(n, a, r)
                if not include_degenerate and p.degenerate:
                    continue
                if normalized_only and normalize(p)[0] != p:
                    continue
                yield p
