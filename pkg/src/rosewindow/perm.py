"""Permutations and permutation groups.

Composition convention: ``p * q`` (and ``compose(p, q)``) applies ``q`` first,
then ``p``, i.e. ``(p * q)(x) == p(q(x))``. Every word and relation in the
package is read with this convention.
"""

from __future__ import annotations

import math
import os
import re
from collections import deque
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DegreeMismatch, ParameterError

DEFAULT_ENUM_CAP = 10**6


def enum_cap() -> int:
    """Current element-enumeration cap (``RW_ENUM_CAP`` overrides the default)."""
    raw = os.environ.get("RW_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"RW_ENUM_CAP must be an integer, got {raw!r}") from None


class Permutation(tuple):
    """A bijection of ``{0, ..., degree-1}`` stored as its image list."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ParameterError(f"not a permutation: {list(images)}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images: Iterable[int]) -> "Permutation":
        # no validation; internal use only
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for k, x in enumerate(cycle):
                if not 0 <= x < degree or x in seen:
                    raise ParameterError(f"bad cycle {tuple(cycle)} for degree {degree}")
                seen.add(x)
                images[x] = cycle[(k + 1) % len(cycle)]
        return cls._raw(images)

    @classmethod
    def from_mapping(cls, mapping: dict[int, int], degree: int) -> "Permutation":
        return cls([mapping.get(i, i) for i in range(degree)])

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, point: int) -> int:
        return self[point]

    def __mul__(self, other: "Permutation") -> "Permutation":  # type: ignore[override]
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __repr__(self) -> str:
        return f"Permutation({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self) if i == x]

    def is_derangement(self) -> bool:
        return all(i != x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            x = self[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p * q``: apply ``q`` first, then ``p``."""
    if len(p) != len(q):
        raise DegreeMismatch(f"degrees {len(p)} and {len(q)} differ")
    return Permutation._raw(map(p.__getitem__, q))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return Permutation._raw(inv)


def element_order(p: Permutation) -> int:
    """Least k >= 1 with p**k the identity (lcm of the cycle lengths)."""
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)


_ONE_LINE = re.compile(r"^\s*\[\s*(\d+(\s*,\s*\d+)*)?\s*\]\s*$")
_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse ``[i0,i1,...]`` or cycle notation ``(0 1 2)(3 4)``.

    Cycle notation needs ``degree``; one-line notation infers it.
    """
    if _ONE_LINE.match(text):
        body = text.strip()[1:-1]
        images = [int(x) for x in body.split(",")] if body.strip() else []
        perm = Permutation(images)
        if degree is not None and len(perm) != degree:
            raise DegreeMismatch(f"expected degree {degree}, got {len(perm)}")
        return perm
    if degree is None:
        raise ParameterError("cycle notation requires an explicit degree")
    stripped = _CYCLE.sub("", text).strip()
    if stripped:
        raise ParameterError(f"cannot parse permutation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        parts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
        cycles.append(parts)
    return Permutation.from_cycles(cycles, degree)


class _Level:
    __slots__ = ("point", "gens", "transversal", "orbit", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        # transversal[beta] maps `point` to beta
        self.transversal: dict[int, Permutation] = {}
        self.orbit: list[int] = []
        self.checked: set[tuple[int, int]] = set()


class PermutationGroup:
    """A permutation group given by generators, with a base and strong generating set.

    Build instances with :func:`schreier_sims`.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int, levels: list[_Level]):
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self._levels = levels
        self._order = math.prod(len(lv.orbit) for lv in levels)

    # BSGS views
    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lv.point for lv in self._levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        out: dict[Permutation, None] = {}
        for lv in self._levels:
            out.update(dict.fromkeys(lv.gens))
        return tuple(sorted(out))

    def basic_orbit_lengths(self) -> tuple[int, ...]:
        return tuple(len(lv.orbit) for lv in self._levels)

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        """Strip ``p`` through the chain; return the residue and the level it stopped at."""
        return _strip(self._levels, p, 0)

    def __contains__(self, p: Permutation) -> bool:
        if len(p) != self.degree:
            raise DegreeMismatch(f"group degree {self.degree}, permutation degree {len(p)}")
        residue, _ = self.sift(p)
        return residue.is_identity()

    def orbit(self, point: int) -> set[int]:
        if not 0 <= point < self.degree:
            raise ParameterError(f"point {point} out of range")
        return set(orbit_of(self.generators, point))

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for v in range(self.degree):
            if v not in seen:
                orb = sorted(orbit_of(self.generators, v))
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> "PermutationGroup":
        """Point stabilizer, read off a chain whose first base point is ``point``."""
        if not 0 <= point < self.degree:
            raise ParameterError(f"point {point} out of range")
        rebased = schreier_sims(self.generators, self.degree, base_prefix=(point,))
        lv = rebased._levels
        if lv and lv[0].point == point:
            gens = lv[1].gens if len(lv) > 1 else []
            return PermutationGroup(sorted(set(gens)), self.degree, lv[1:])
        # trivial orbit: the whole group fixes the point
        return rebased

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        """Iterate all elements; raises CapacityError when the order exceeds ``cap``."""
        cap = enum_cap() if cap is None else cap
        if self._order > cap:
            raise CapacityError(f"group order {self._order} exceeds enumeration cap {cap}")
        transversals = [list(lv.transversal.values()) for lv in self._levels]

        # element = u_0 * u_1 * ... * u_{k-1}
        def build(i: int, acc: Permutation) -> Iterator[Permutation]:
            if i == len(transversals):
                yield acc
                return
            for u in transversals[i]:
                yield from build(i + 1, compose(acc, u))

        yield from build(0, self.identity())

    def random_element(self, rng) -> Permutation:
        acc = self.identity()
        for lv in self._levels:
            acc = compose(acc, lv.transversal[rng.choice(lv.orbit)])
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self._order == other._order
            and all(g in other for g in self.generators)
        )

    def __hash__(self) -> int:
        return hash((self.degree, self._order))

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, order={self._order}, ngens={len(self.generators)})"


def _extend_orbit(level: _Level) -> None:
    """Grow the level's orbit/transversal under its current generators."""
    queue = deque(level.orbit)
    trans = level.transversal
    while queue:
        beta = queue.popleft()
        u = trans[beta]
        for s in level.gens:
            gamma = s[beta]
            if gamma not in trans:
                trans[gamma] = compose(s, u)
                level.orbit.append(gamma)
                queue.append(gamma)


def _strip(levels: list[_Level], p: Permutation, start: int) -> tuple[Permutation, int]:
    h = p
    for j in range(start, len(levels)):
        lv = levels[j]
        beta = h[lv.point]
        if beta == lv.point:
            continue
        u = lv.transversal.get(beta)
        if u is None:
            return h, j
        h = compose(inverse(u), h)
    return h, len(levels)


def schreier_sims(
    gens: Iterable[Permutation],
    degree: int | None = None,
    base_prefix: Sequence[int] = (),
) -> PermutationGroup:
    """Deterministic Schreier-Sims.

    The base is ``base_prefix`` followed by the remaining points in ascending
    order; points with a trivial basic orbit are pruned from the result.
    Generators are deduplicated, the identity dropped, and the rest sorted.
    """
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ParameterError("degree is required for an empty generator list")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatch(f"generator of degree {len(g)} in a degree-{degree} group")
    ident = Permutation.identity(degree)
    gens = sorted({Permutation._raw(g) for g in gens} - {ident})

    order_pts = list(dict.fromkeys(list(base_prefix) + list(range(degree))))
    levels = []
    for pt in order_pts:
        lv = _Level(pt)
        lv.orbit.append(pt)
        lv.transversal[pt] = ident
        levels.append(lv)

    def add_gen(h: Permutation, upto: int, start: int = 0) -> None:
        # h fixes the base points of levels [0, upto); it belongs to S_start..S_upto
        for l in range(start, upto + 1):
            levels[l].gens.append(h)
            _extend_orbit(levels[l])

    for g in gens:
        first = next(j for j, lv in enumerate(levels) if g[lv.point] != lv.point)
        add_gen(g, first)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        found = None
        for beta in list(lv.orbit):
            u_beta = lv.transversal[beta]
            for si, s in enumerate(lv.gens):
                key = (beta, si)
                if key in lv.checked:
                    continue
                lv.checked.add(key)
                u_sb = lv.transversal[s[beta]]
                schreier_gen = compose(inverse(u_sb), compose(s, u_beta))
                h, j = _strip(levels, schreier_gen, i + 1)
                if not h.is_identity():
                    found = (h, j)
                    break
            if found:
                break
        if found:
            h, j = found
            add_gen(h, j, start=i + 1)
            i = j
        else:
            i -= 1

    kept = [lv for lv in levels if len(lv.orbit) > 1]
    return PermutationGroup(gens, degree, kept)


def trivial_group(degree: int) -> PermutationGroup:
    return schreier_sims([], degree)


def orbit_of(gens: Sequence[Permutation], point: int) -> list[int]:
    seen = {point}
    out = [point]
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def membership(group: PermutationGroup, p: Permutation) -> bool:
    return p in group


def orbit(group: PermutationGroup, point: int) -> set[int]:
    return group.orbit(point)


def point_stabilizer(group: PermutationGroup, point: int) -> PermutationGroup:
    return group.stabilizer(point)


def is_regular_action(group: PermutationGroup) -> bool:
    """Transitive with order equal to the degree; the stabilizer of 0 is also checked."""
    if group.order() != group.degree or not group.is_transitive():
        return False
    return group.stabilizer(0).order() == 1


def closure(gens: Sequence[Permutation], degree: int, cap: int | None = None) -> set[Permutation]:
    """All elements of <gens> by breadth-first multiplication (no BSGS)."""
    cap = enum_cap() if cap is None else cap
    ident = Permutation.identity(degree)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elems:
                    elems.add(y)
                    if len(elems) > cap:
                        raise CapacityError(f"closure exceeds cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return elems
