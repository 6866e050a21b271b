"""Arithmetic classification of rose window graphs.

Family numbering follows the vertex-transitivity classification:
1 r^2 = +-1 and ra = +-a; 2 R_4m(2m, r); 3 R_2m(m+-2, m+-1);
4 R_12m(+-(3m+2), +-(3m-1)) and R_12m(+-(3m-2), +-(3m+1)); 5 R_2m(2b, r).
Membership is tested on all four sign representatives (+-a, +-r).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from . import autos
from .graph import RoseWindowParams, normalize


@dataclass(frozen=True)
class FamilyDetail:
    family: int
    representative: RoseWindowParams
    details: tuple[tuple[str, Any], ...] = ()

    def get(self, name, default=None):
        return dict(self.details).get(name, default)

    @property
    def label(self) -> str:
        sign = self.get("sign")
        if sign is None:
            return f"F{self.family}"
        return f"F{self.family}({'+' if sign > 0 else '-'})"

    def to_json_obj(self) -> dict:
        p = self.representative
        return {"family": self.family, "label": self.label,
                "representative": [p.n, p.a, p.r], **dict(self.details)}


def _pm1(x: int, n: int) -> int | None:
    x %= n
    if x == 1 % n:
        return 1
    if x == (n - 1) % n:
        return -1
    return None


def _family1(p: RoseWindowParams) -> FamilyDetail | None:
    n, a, r = p.n, p.a, p.r
    s1 = _pm1(r * r, n)
    if s1 is None:
        return None
    if (r * a - a) % n == 0:
        s2 = 1
    elif (r * a + a) % n == 0:
        s2 = -1
    else:
        return None
    return FamilyDetail(1, p, (("r2_sign", s1), ("ra_sign", s2)))


def _family2(p: RoseWindowParams) -> FamilyDetail | None:
    sign = autos.family2_sign(p)
    if sign is None:
        return None
    return FamilyDetail(2, p, (("m", p.n // 4), ("sign", sign)))


def _family3(p: RoseWindowParams) -> FamilyDetail | None:
    m = autos.family3_m(p)
    if m is None:
        return None
    return FamilyDetail(3, p, (("m", m),))


def _family4(p: RoseWindowParams) -> FamilyDetail | None:
    info = autos.family4_d(p)
    if info is None:
        return None
    m, d, flip = info
    return FamilyDetail(4, p, (("m", m), ("d", d), ("l", m // 12), ("m_mod_12", m % 12)))


def _family5(p: RoseWindowParams) -> FamilyDetail | None:
    n, a, r = p.n, p.a, p.r
    if n % 2 or a % 2:
        return None
    m, b = n // 2, a // 2
    if not 2 <= a <= m:
        return None
    sign = _pm1(b * b, m) if m > 1 else None
    if sign is None:
        return None
    if r % 2 == 0 or r not in (1, m - 1):
        return None
    return FamilyDetail(5, p, (("m", m), ("b", b), ("b2_sign", sign)))


_TESTS = (_family1, _family2, _family3, _family4, _family5)


def family_memberships(params: RoseWindowParams) -> list[FamilyDetail]:
    """All matching families; each reported once, on its first matching representative."""
    out = []
    reps = params.representatives()
    for test in _TESTS:
        for rep in reps:
            hit = test(rep)
            if hit is not None:
                out.append(hit)
                break
    return out


def _is_rn21(p: RoseWindowParams) -> bool:
    return any(q.a == 2 and q.r == 1 for q in p.representatives())


def et_by_theorem(params: RoseWindowParams) -> bool:
    """Edge-transitive families: R_n(2,1), and VT families 3, 4, 5."""
    if _is_rn21(params):
        return True
    return any(f.family in (3, 4, 5) for f in family_memberships(params))


def vt_by_theorem(params: RoseWindowParams) -> bool:
    return bool(family_memberships(params))


def cayley_condition(f: FamilyDetail) -> bool:
    if f.family == 2:
        return f.get("sign") == 1
    if f.family == 3:
        m = f.get("m")
        return m % 2 == 0 or m % 3 == 0
    if f.family == 4:
        return f.get("m") % 4 != 0
    return True


def cayley_by_theorem(params: RoseWindowParams) -> bool:
    """Union semantics: Cayley iff some matching family meets its Cayley condition."""
    return any(cayley_condition(f) for f in family_memberships(params))


def rim_hub_theorem(params: RoseWindowParams) -> bool:
    from .autgroup import rim_hub_conditions
    return any(rim_hub_conditions(params))


# ---------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    params: RoseWindowParams
    normalized: RoseWindowParams
    provenance: tuple[str, ...]
    families: list[FamilyDetail]
    et_theorem: bool
    vt_theorem: bool
    cayley_theorem: bool
    et_search: bool | None = None
    vt_search: bool | None = None
    cayley_search: bool | None = None
    aut_order: int | None = None
    edge_orbits: int | None = None
    edge_orbit_kinds: list[str] | None = None
    witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return self.params.degenerate

    @property
    def has_search(self) -> bool:
        return self.vt_search is not None

    def disagreements(self) -> list[str]:
        out = []
        for name in ("et", "vt", "cayley"):
            s = getattr(self, f"{name}_search")
            if s is not None and s != getattr(self, f"{name}_theorem"):
                out.append(name)
        return out

    def to_json_obj(self) -> dict:
        p, q = self.params, self.normalized
        obj: dict[str, Any] = {
            "n": p.n, "a": p.a, "r": p.r,
            "normalized": [q.n, q.a, q.r],
            "provenance": list(self.provenance),
            "degenerate": p.degenerate,
            "families": [f.to_json_obj() for f in self.families],
            "et_theorem": self.et_theorem,
            "vt_theorem": self.vt_theorem,
            "cayley_theorem": self.cayley_theorem,
        }
        if self.has_search:
            obj.update({
                "et_search": self.et_search,
                "vt_search": self.vt_search,
                "cayley_search": self.cayley_search,
                "aut_order": self.aut_order,
                "edge_orbits": self.edge_orbits,
                "edge_orbit_kinds": self.edge_orbit_kinds,
                "witness": self.witness,
                "disagreements": self.disagreements(),
            })
        if self.notes:
            obj["notes"] = list(self.notes)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def classify(params: RoseWindowParams, search: bool = False, use_cache: bool = True) -> ClassificationReport:
    """Theorem verdicts, plus computed ones when ``search`` is set.

    The computed side runs on the normalized representative, which is
    isomorphic to params.  Degenerate tuples never get search fields.
    """
    q, prov = normalize(params)
    fams = family_memberships(params)
    rep = ClassificationReport(
        params, q, prov, fams,
        et_theorem=et_by_theorem(params),
        vt_theorem=bool(fams),
        cayley_theorem=any(cayley_condition(f) for f in fams),
    )
    if search and not params.degenerate:
        from .autgroup import automorphism_group, edge_orbit_count
        from .cayley import is_cayley_search
        from .graph import build

        g = build(q)
        res = automorphism_group(g)
        count, kinds = edge_orbit_count(res, g)
        rep.aut_order = res.order
        rep.edge_orbits = count
        rep.edge_orbit_kinds = kinds
        rep.vt_search = len(res.vertex_orbits) == 1
        rep.et_search = count == 1
        verdict = is_cayley_search(q, use_cache=use_cache)
        rep.cayley_search = verdict.is_cayley
        if verdict.witness is not None:
            rep.witness = {"case": verdict.witness.case.value, "key": [q.n, q.a, q.r],
                           "generators": len(verdict.witness.generators)}
        if (any(f.family == 2 and f.get("sign") == -1 for f in fams)
                and len(fams) > 1 and rep.cayley_theorem):
            rep.notes.append("Family-2 sign -1 overlaps a Cayley family")
    return rep
