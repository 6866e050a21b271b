"""Cayley recognition: search the automorphism group for a regular subgroup.

A graph is Cayley exactly when some subgroup of its automorphism group acts
regularly on the vertices.  Every non-identity element of such a subgroup is
a derangement, so the search only ever touches derangements.
"""

from __future__ import annotations

import json
import logging
import math
import os
import random
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .autgroup import GENERIC_MAX_DEGREE, automorphism_group
from .autos import Case, RegularWitness
from .errors import CapacityError, ParameterError
from .graph import RoseWindowParams, build, is_automorphism, normalize, normalization_map
from .perm import Permutation, PermutationGroup, enum_cap, is_regular_action, schreier_sims

log = logging.getLogger(__name__)

DEFAULT_CACHE_DIR = "./.rw-cache"
CACHE_VERSION = 1


@dataclass
class SearchStatistics:
    group_order: int = 0
    derangements: int = 0
    nodes: int = 0
    closures: int = 0


@dataclass
class CayleyVerdict:
    params: RoseWindowParams
    is_cayley: bool
    witness: RegularWitness | None = None
    stats: SearchStatistics = field(default_factory=SearchStatistics)
    from_cache: bool = False

    def to_json_obj(self) -> dict:
        return {
            "n": self.params.n,
            "a": self.params.a,
            "r": self.params.r,
            "is_cayley": self.is_cayley,
            "witness": None if self.witness is None else self.witness.to_json_obj(),
            "stats": vars(self.stats).copy(),
        }


def _mul(p: tuple, q: tuple) -> tuple:
    # p * q: q first
    return tuple(p[x] for x in q)


def _has_fixed_point(p: tuple) -> bool:
    return any(i == x for i, x in enumerate(p))


def _close(base: frozenset, gens: Sequence[tuple], new: tuple, limit: int) -> frozenset | None:
    """<base, new> if it stays fixed-point-free off the identity and within ``limit``."""
    elems = set(base)
    todo = [new]
    elems.add(new)
    allgens = list(gens) + [new]
    while todo:
        x = todo.pop()
        for s in allgens:
            for y in (_mul(x, s), _mul(s, x)):
                if y in elems:
                    continue
                if _has_fixed_point(y) and any(i != v for i, v in enumerate(y)):
                    return None
                elems.add(y)
                if len(elems) > limit:
                    return None
                todo.append(y)
    return frozenset(elems)


class _Coset:
    """Derangements g with g(0) = v, produced lazily as t_v * s for s fixing 0."""

    def __init__(self, t: Permutation, stab: PermutationGroup, budget: list[int], stats):
        self.items: list[tuple] = []
        self._src = (tuple(t[x] for x in s) for s in stab.elements(cap=stab.order()))
        self._done = False
        self._budget = budget
        self._stats = stats

    def _pull(self) -> bool:
        for x in self._src:
            self._budget[0] -= 1
            if self._budget[0] < 0:
                raise CapacityError("regular-subgroup search exceeded the enumeration cap")
            if not _has_fixed_point(x):
                self._stats.derangements += 1
                self.items.append(x)
                return True
        self._done = True
        return False

    def materialize(self) -> list[tuple]:
        while not self._done:
            self._pull()
        return self.items

    def __iter__(self):
        i = 0
        while True:
            if i < len(self.items):
                yield self.items[i]
                i += 1
            elif self._done or not self._pull():
                return


def find_regular_subgroup(group: PermutationGroup, degree: int, cap: int | None = None,
                          seed: int | None = None,
                          stats: SearchStatistics | None = None) -> list[Permutation] | None:
    """Generators of a regular subgroup of ``group`` of order ``degree``, or None.

    The search builds {h_v} with h_v(0) = v one vertex at a time, always
    extending at the smallest uncovered vertex, so every regular subgroup
    containing the current partial subgroup stays reachable.  Candidates for
    h_v are the derangements in the coset of elements sending 0 to v; cosets
    are enumerated lazily and ``cap`` bounds the total number of elements
    materialized.  ``seed`` shuffles the candidate order; the verdict does not
    depend on it.
    """
    stats = stats if stats is not None else SearchStatistics()
    cap = enum_cap() if cap is None else cap
    stats.group_order = group.order()
    if group.order() % degree or not group.is_transitive():
        return None
    rebased = schreier_sims(group.generators, degree, base_prefix=(0,))
    transversal = rebased._levels[0].transversal
    stab = rebased.stabilizer(0)
    budget = [cap]
    cosets: dict[int, _Coset] = {}

    def candidates(v: int):
        c = cosets.get(v)
        if c is None:
            c = cosets[v] = _Coset(transversal[v], stab, budget, stats)
            if seed is not None:
                random.Random(seed * 7919 + v).shuffle(c.materialize())
        return c

    identity = tuple(range(degree))
    seen: set[frozenset] = set()

    def search(sub: frozenset, gens: list[tuple]):
        stats.nodes += 1
        if len(sub) == degree:
            return gens
        covered = {x[0] for x in sub}
        v = next(i for i in range(degree) if i not in covered)
        for h in candidates(v):
            stats.closures += 1
            nxt = _close(sub, gens, h, degree)
            if nxt is None or degree % len(nxt) or nxt in seen:
                continue
            seen.add(nxt)
            found = search(nxt, gens + [h])
            if found is not None:
                return found
        return None

    result = search(frozenset([identity]), [])
    if result is None:
        return None
    return [Permutation._raw(x) for x in result]


# ---------------------------------------------------------------------------
# cache


def cache_dir() -> Path:
    return Path(os.environ.get("RW_CACHE_DIR", DEFAULT_CACHE_DIR))


def _cache_path(key: RoseWindowParams) -> Path:
    return cache_dir() / f"R_{key.n}_{key.a}_{key.r}.json"


def load_cached(key: RoseWindowParams) -> CayleyVerdict | None:
    path = _cache_path(key)
    try:
        obj = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if obj.get("version") != CACHE_VERSION or [obj.get("n"), obj.get("a"), obj.get("r")] != [key.n, key.a, key.r]:
        return None
    witness = None
    if obj.get("witness") is not None:
        witness = RegularWitness.from_json_obj(obj["witness"])
        g = build(key)
        if not (all(is_automorphism(x, g) for x in witness.generators) and witness.is_regular()):
            log.warning("discarding invalid cached witness at %s", path)
            return None
    stats = SearchStatistics(**obj.get("stats", {}))
    return CayleyVerdict(key, bool(obj["is_cayley"]), witness, stats, from_cache=True)


def store_cached(verdict: CayleyVerdict) -> None:
    path = _cache_path(verdict.params)
    path.parent.mkdir(parents=True, exist_ok=True)
    obj = verdict.to_json_obj()
    obj["version"] = CACHE_VERSION
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(obj, fh, sort_keys=True)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------


def is_cayley_search(params: RoseWindowParams, use_cache: bool = True, seed: int | None = None,
                     max_degree: int = GENERIC_MAX_DEGREE) -> CayleyVerdict:
    """Exhaustive verdict for params; searches on the normalized representative.

    A witness found there is carried back to ``params`` by the normalizing
    isomorphism, so it always acts on build(params).
    """
    if params.degenerate:
        raise ParameterError(f"{params} is degenerate; the Cayley search needs a 4-regular graph")
    key, prov = normalize(params)
    verdict = load_cached(key) if use_cache else None
    if verdict is None:
        g = build(key)
        res = automorphism_group(g, max_degree=max_degree)
        stats = SearchStatistics()
        gens = find_regular_subgroup(res.group, g.order, seed=seed, stats=stats)
        witness = None
        if gens is not None:
            witness = RegularWitness(Case.SEARCH_FOUND, key, tuple(gens),
                                     tuple(f"h{i}" for i in range(len(gens))))
        verdict = CayleyVerdict(key, gens is not None, witness, stats)
        if use_cache:
            store_cached(verdict)
    if key == params:
        return verdict
    witness = verdict.witness
    if witness is not None:
        phi = normalization_map(params, prov)
        inv = ~phi
        gens = tuple(inv * x * phi for x in witness.generators)
        witness = RegularWitness(Case.SEARCH_FOUND, params, gens, witness.names)
    return CayleyVerdict(params, verdict.is_cayley, witness, verdict.stats, verdict.from_cache)


# ---------------------------------------------------------------------------
# independent oracle for small graphs


def brute_force_regular_subgroup(group: PermutationGroup, degree: int,
                                 cap: int | None = None) -> list[Permutation] | None:
    """Level-by-level walk of the semiregular subgroups generated by derangements.

    Unlike :func:`find_regular_subgroup` there is no per-vertex transversal:
    every semiregular subgroup reached so far is extended by every derangement
    outside it.  Each extension at least doubles the order, so floor(log2 degree)
    levels reach every subgroup of order ``degree``.
    """
    cap = enum_cap() if cap is None else cap
    elements = [tuple(x) for x in group.elements(cap)]
    identity = tuple(range(degree))
    moving = [x for x in elements if not _has_fixed_point(x)]

    def closure(gens):
        elems = {identity}
        todo = [identity]
        while todo:
            x = todo.pop()
            for s in gens:
                y = _mul(s, x)
                if y not in elems:
                    elems.add(y)
                    todo.append(y)
        return frozenset(elems)

    def semiregular(sub):
        return all(x == identity or not _has_fixed_point(x) for x in sub)

    frontier = {frozenset([identity]): ()}
    for _ in range(max(1, int(math.log2(degree)))):
        nxt: dict[frozenset, tuple] = {}
        for sub, gens in frontier.items():
            for d in moving:
                if d in sub:
                    continue
                new_gens = gens + (d,)
                t = closure(new_gens)
                if t in nxt or len(t) > degree or not semiregular(t):
                    continue
                if len(t) == degree and len({x[0] for x in t}) == degree:
                    return [Permutation._raw(x) for x in new_gens]
                nxt[t] = new_gens
        frontier = nxt
        if not frontier:
            break
    return None


def is_cayley_brute_force(params: RoseWindowParams, max_n: int = 8) -> bool:
    if params.n > max_n:
        raise ParameterError(f"brute-force oracle is limited to n <= {max_n}")
    g = build(params)
    res = automorphism_group(g)
    if not res.group.is_transitive():
        return False
    return brute_force_regular_subgroup(res.group, g.order) is not None


def verify_witness(witness: RegularWitness) -> bool:
    g = build(witness.params)
    if not all(is_automorphism(x, g) for x in witness.generators):
        return False
    grp = schreier_sims(list(witness.generators), degree=g.order)
    return grp.order() == g.order and is_regular_action(grp)
