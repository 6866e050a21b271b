"""Labelled checks of the classification results, shared by ``rw verify-paper`` and the tests.

Each ``criterion_*`` function returns a :class:`CheckResult`.  Checks that
recompute searches never read the witness cache.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import autos
from .autgroup import automorphism_group, edge_orbit_count, is_vertex_transitive_computed
from .autos import Case, evaluate_word
from .cayley import brute_force_regular_subgroup, find_regular_subgroup, is_cayley_search
from .classify import cayley_by_theorem, family_memberships, vt_by_theorem
from .graph import RoseWindowParams, all_params, build, normalize
from .perm import element_order, is_regular_action


@dataclass
class CheckResult:
    label: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.label}  ({self.seconds:.2f}s)  {self.detail}"


def _timed(label: str, fn: Callable[[], tuple[bool, str, list[str]]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail, failures = fn()
    except Exception as exc:  # a crash is a failed check, not a crashed run
        ok, detail, failures = False, f"{type(exc).__name__}: {exc}", [repr(exc)]
    return CheckResult(label, ok, detail, time.perf_counter() - t0, failures)


def P(n: int, a: int, r: int) -> RoseWindowParams:
    return RoseWindowParams(n, a, r)


# ---------------------------------------------------------------------------
# relation suite


@dataclass
class RelationBlock:
    name: str
    params: tuple[RoseWindowParams, ...]
    env: Callable[[RoseWindowParams], dict]
    relations: Callable[[RoseWindowParams], list[tuple]]
    # each relation: ("eq", lhs, rhs) or ("order", word, k)


def _generic_env(p):
    return {"rho": autos.rho(p), "mu": autos.mu(p), "tau": autos.tau(p)}


def _f1_plus_env(p):
    return {"rho": autos.rho(p), "delta": autos.explicit_automorphism(autos.Kind.DELTA, p)}


def _f1_plus_rels(p):
    rr = autos.family1_hub_offset(p)
    return [("eq", "delta rho delta", f"rho^{rr}"), ("eq", "delta^2", "id")]


def _f1_minus_env(p):
    return autos.regular_subgroup_generators(Case.F1_MINUS, p).assignment()


def _f1_minus_rels(p):
    rr = autos.family1_hub_offset(p)
    return [("eq", "beta alpha", "alpha^-1 beta"),
            ("eq", "gamma alpha", f"alpha^{-rr} gamma"),
            ("eq", "gamma^2", f"alpha^{(p.a - 1) // 2} beta")]


def _f2_env(p):
    # the maps exactly as displayed: alpha = rho^2, beta = rho mu, sigma from its formula
    return {"alpha": autos.rho(p, 2), "beta": autos.rho(p) * autos.mu(p),
            "sigma": autos.formula_map(autos.Kind.SIGMA_F2, p)}


def _f2_rels(p):
    return [("eq", "beta alpha beta", "alpha^-1"),
            ("eq", "sigma alpha sigma", f"alpha^{p.r}"),
            ("eq", "(beta sigma)^2", f"alpha^{(p.a - p.r + 1) // 2}")]


def _f3_env(p):
    m = autos.family3_m(p)
    env = {"rho": autos.rho(p), "mu": autos.mu(p)}
    for i in range(m):
        env[f"eps_{i}"] = autos.explicit_automorphism((autos.Kind.EPSILON, i), p)
    return env


def _f3_rels(p):
    m = autos.family3_m(p)
    rels = []
    for i in range(m):
        for j in range(i + 1, m):
            rels.append(("eq", f"eps_{i} eps_{j}", f"eps_{j} eps_{i}"))
        rels.append(("eq", f"eps_{i} rho^{m}", f"rho^{m} eps_{i}"))
        rels.append(("eq", f"mu eps_{i}", f"eps_{m - 1 - i} mu"))
        rels.append(("eq", f"rho eps_{i}", f"eps_{(i + 1) % m} rho"))
        rels.append(("order", f"rho eps_{i}", m))
        rels.append(("order", f"mu rho^{i}", 2))
    rels.append(("eq", " ".join(f"eps_{i}" for i in range(m)), f"rho^{m}"))
    return rels


def _f4_env(p):
    env = {"rho": autos.rho(p), "mu": autos.mu(p),
           "sigma": autos.explicit_automorphism(autos.Kind.SIGMA_F4, p)}
    m = p.n // 12
    if m % 4 == 2:
        env["omega"] = autos.explicit_automorphism(autos.Kind.OMEGA_F4, p)
        env["gamma"] = evaluate_word(env, f"(rho^{8 * m} sigma rho^2 omega)^{autos.f4_two_mod4_gamma_power(m)}")
        env["alpha"] = evaluate_word(env, f"omega sigma rho^{4 * m} omega sigma")
        env["beta"] = evaluate_word(env, f"rho^{3 * m // 2}")
    return env


def _f4_sigma_rels(p):
    m = p.n // 12
    return [("eq", "(rho sigma)^3", f"rho^{3 * (m + 1)}"),
            ("eq", "(rho sigma rho)^3", f"rho^{9 * m + 6}")]


def _f4_omega_rels(p):
    return [("eq", "omega rho", "sigma rho omega"),
            ("eq", "omega mu", "mu omega sigma"),
            ("order", "omega mu", 4)]


def _gamma_sq_rels(p):
    m = p.n // 12
    rhs = "rho^12" if m % 12 == 10 else f"rho^{4 * m + 4}"
    return [("eq", "gamma^2", rhs)]


def _gamma_m_rels(p):
    m = p.n // 12
    return [("eq", f"gamma^{m}", autos.gamma_m_expected(m))]


def _f4(m: int) -> RoseWindowParams:
    return P(12 * m, 3 * m + 2, 9 * m + 1)


def _f3(m: int) -> RoseWindowParams:
    return P(2 * m, m - 2, m - 1)


# smallest two (normalized) parameter values in each relation's domain
RELATION_BLOCKS: tuple[RelationBlock, ...] = (
    RelationBlock("generic: mu rho mu = rho^-1, tau^2 = id", (P(3, 1, 1), P(4, 1, 1)), _generic_env,
                  lambda p: [("eq", "mu rho mu", "rho^-1"), ("eq", "tau^2", "id")]),
    RelationBlock("family 1, r^2 = 1: delta rho delta = rho^r", (P(3, 1, 1), P(4, 1, 1)),
                  _f1_plus_env, _f1_plus_rels),
    RelationBlock("family 1, r^2 = -1: alpha/beta/gamma relations", (P(10, 5, 3), P(26, 13, 5)),
                  _f1_minus_env, _f1_minus_rels),
    RelationBlock("family 2, sign +1: alpha/beta/sigma relations", (P(16, 8, 3), P(16, 8, 5)),
                  _f2_env, _f2_rels),
    RelationBlock("family 3: epsilon relations and product = rho^m", (_f3(3), _f3(4)), _f3_env, _f3_rels),
    RelationBlock("family 4: (rho sigma)^3 and (rho sigma rho)^3", (_f4(1), _f4(2)), _f4_env, _f4_sigma_rels),
    RelationBlock("family 4, m = 2 mod 4: omega relations", (_f4(2), _f4(6)), _f4_env, _f4_omega_rels),
    RelationBlock("family 4: gamma^2 = rho^(4m+4), m = 2, 6 mod 12", (_f4(2), _f4(6)), _f4_env, _gamma_sq_rels),
    RelationBlock("family 4: gamma^2 = rho^12, m = 10 mod 12", (_f4(10), _f4(22)), _f4_env, _gamma_sq_rels),
    RelationBlock("family 4: gamma^m = alpha^2 beta^4, m = 6 mod 12", (_f4(6), _f4(18)), _f4_env, _gamma_m_rels),
    RelationBlock("family 4: gamma^m = beta^4, m = 2, 10 mod 12", (_f4(2), _f4(10)), _f4_env, _gamma_m_rels),
)


def _eval_relation(env, rel) -> bool:
    if rel[0] == "order":
        return element_order(evaluate_word(env, rel[1])) == rel[2]
    return evaluate_word(env, rel[1]) == evaluate_word(env, rel[2])


def _rel_text(rel) -> str:
    if rel[0] == "order":
        return f"order({rel[1]}) = {rel[2]}"
    return f"{rel[1]} = {rel[2]}"


def relation_results(blocks: Iterable[RelationBlock] = RELATION_BLOCKS) -> list[CheckResult]:
    out = []
    for block in blocks:
        def run(block=block):
            failures, total = [], 0
            for p in block.params:
                env = block.env(p)
                for rel in block.relations(p):
                    total += 1
                    if not _eval_relation(env, rel):
                        failures.append(f"{p}: {_rel_text(rel)}")
            return not failures, f"{total - len(failures)}/{total} hold on {', '.join(map(str, block.params))}", failures
        out.append(_timed(block.name, run))
    return out


# ---------------------------------------------------------------------------
# criteria


def sweep(max_n: int = 16, use_cache: bool = False) -> tuple[int, list[str]]:
    """(tuples checked, disagreements) between theorem and search verdicts."""
    memo: dict[RoseWindowParams, tuple[bool, bool]] = {}
    bad, count = [], 0
    for p in all_params(max_n):
        count += 1
        key, _ = normalize(p)
        if key not in memo:
            res = automorphism_group(build(key))
            memo[key] = (is_vertex_transitive_computed(res), is_cayley_search(key, use_cache=use_cache).is_cayley)
        vt, cay = memo[key]
        if vt != vt_by_theorem(p):
            bad.append(f"{p}: vt theorem {vt_by_theorem(p)} search {vt}")
        if cay != cayley_by_theorem(p):
            bad.append(f"{p}: cayley theorem {cayley_by_theorem(p)} search {cay}")
    return count, bad


def criterion_1(max_n: int = 16) -> CheckResult:
    def run():
        t0 = time.perf_counter()
        count, bad = sweep(max_n)
        dt = time.perf_counter() - t0
        return (not bad and dt < 600), f"{count} tuples, {len(bad)} disagreements, {dt:.1f}s", bad
    return _timed(f"classification sweep 3 <= n <= {max_n}", run)


def _search_fresh(p: RoseWindowParams):
    return is_cayley_search(p, use_cache=False)


def criterion_2() -> CheckResult:
    def run():
        t0 = time.perf_counter()
        v = _search_fresh(P(36, 11, 28))
        dt = time.perf_counter() - t0
        ok = v.is_cayley and v.witness is not None and v.witness.order == 72 and is_regular_action(v.witness.group())
        order = v.witness.order if v.witness else None
        return ok and dt < 120, f"cayley={v.is_cayley} witness order={order} in {dt:.1f}s", []
    return _timed("R_36(11,28) has a regular subgroup of order 72", run)


def criterion_3() -> CheckResult:
    def run():
        p = P(20, 10, 3)
        g = build(p)
        res = automorphism_group(g)
        count, kinds = edge_orbit_count(res, g)
        v = _search_fresh(p)
        vt = is_vertex_transitive_computed(res)
        ok = vt and not v.is_cayley and res.order == 160 and count == 2 and "rim+hub" in kinds
        return ok, f"vt={vt} cayley={v.is_cayley} |Aut|={res.order} edge orbits={count} {kinds}", []
    return _timed("R_20(10,3) vertex-transitive, not Cayley, |Aut| = 160, rim+hub orbit", run)


def criterion_4() -> CheckResult:
    def run():
        p = P(10, 3, 4)
        res = automorphism_group(build(p))
        v = _search_fresh(p)
        return (not v.is_cayley and res.order == 320), f"cayley={v.is_cayley} |Aut|={res.order}", []
    return _timed("R_10(3,4) not Cayley, |Aut| = 320", run)


def criterion_5() -> CheckResult:
    def run():
        t0 = time.perf_counter()
        p = P(48, 14, 37)
        res = automorphism_group(build(p))
        gens = find_regular_subgroup(res.group, p.degree)
        dt = time.perf_counter() - t0
        ok = res.order == 384 and gens is None and dt < 600
        return ok, f"|Aut|={res.order} regular subgroup found={gens is not None} in {dt:.1f}s", []
    return _timed("R_48(14,37) |Aut| = 384, exhaustive search finds no regular subgroup", run)


WITNESS_SAMPLES: tuple[tuple[Case, RoseWindowParams], ...] = (
    (Case.F1_PLUS, P(8, 2, 3)), (Case.F1_PLUS, P(12, 2, 5)),
    (Case.F1_MINUS, P(10, 5, 3)),
    (Case.F2_PLUS, P(16, 8, 3)),
    (Case.F3_MULT3, P(6, 1, 2)), (Case.F3_MULT3, P(18, 7, 8)),
    (Case.F4_ODD, P(12, 5, 10)), (Case.F4_ODD, P(60, 17, 46)),
    (Case.F4_TWO_MOD4, P(24, 8, 19)),
)


def criterion_6() -> CheckResult:
    def run():
        failures = []
        for case, p in WITNESS_SAMPLES:
            w = autos.regular_subgroup_generators(case, p)
            if not (w.order == p.degree and w.is_regular()):
                failures.append(f"{case.value} on {p}: order {w.order}")
        return not failures, f"{len(WITNESS_SAMPLES) - len(failures)}/{len(WITNESS_SAMPLES)} regular of order 2n", failures
    return _timed("regular-witness constructors", run)


def criterion_7() -> CheckResult:
    def run():
        results = relation_results()
        failures = [f for r in results for f in r.failures]
        bad_blocks = [r.label for r in results if not r.passed]
        detail = f"{len(results) - len(bad_blocks)}/{len(results)} blocks hold"
        if failures:
            detail += f"; first failure: {failures[0]}"
        return not failures, detail, failures
    return _timed("displayed relations", run)


# (family, params, expected edge orbits); family 1 and 2 samples avoid the edge-transitive families
EDGE_ORBIT_SAMPLES: tuple[tuple[int, RoseWindowParams, int], ...] = (
    (1, P(10, 5, 3), 2), (1, P(7, 3, 1), 2), (1, P(9, 3, 1), 2),
    (2, P(20, 10, 3), 2), (2, P(16, 8, 3), 2),
    (3, P(6, 1, 2), 1), (3, P(10, 3, 4), 1), (3, P(8, 2, 3), 1),
    (4, P(12, 5, 10), 1), (4, P(48, 14, 37), 1),
    (5, P(12, 2, 5), 1), (5, P(20, 6, 9), 1),
)


def criterion_8() -> CheckResult:
    def run():
        failures = []
        for fam, p, want in EDGE_ORBIT_SAMPLES:
            if fam not in [f.family for f in family_memberships(p)]:
                failures.append(f"{p} is not a family-{fam} member")
                continue
            g = build(p)
            count, kinds = edge_orbit_count(automorphism_group(g), g)
            if count != want:
                failures.append(f"family {fam} {p}: {count} edge orbits {kinds}")
        n = len(EDGE_ORBIT_SAMPLES)
        return not failures, f"{n - len(failures)}/{n} samples match", failures
    return _timed("edge-orbit counts by family", run)


def criterion_9(max_n: int = 8) -> CheckResult:
    def run():
        failures, count = [], 0
        for p in all_params(max_n):
            count += 1
            g = build(p)
            res = automorphism_group(g)
            transversal = find_regular_subgroup(res.group, g.order) is not None
            brute = res.group.is_transitive() and brute_force_regular_subgroup(res.group, g.order) is not None
            if transversal != brute:
                failures.append(f"{p}: transversal {transversal} brute force {brute}")
        return not failures, f"{count} tuples, {len(failures)} disagreements", failures
    return _timed(f"brute-force oracle agrees with transversal search, n <= {max_n}", run)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9)


def run_all() -> list[CheckResult]:
    return [c() for c in CRITERIA]
