"""Named automorphisms of rose window graphs and regular-subgroup witnesses.

Every constructor is checked edge by edge against :func:`graph.build` before it
is returned.  A map that is requested inside its domain but fails that check
raises :class:`TranscriptionError`; a request outside the domain raises
:class:`ApplicabilityError`.

Words such as ``"rho^8 sigma rho^2 omega"`` are products with the rightmost
factor acting first, matching :func:`perm.compose`.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .errors import ApplicabilityError, ParameterError, TranscriptionError
from .graph import RoseWindowParams, RWGraph, build, is_automorphism, tau_map
from .perm import Permutation, PermutationGroup, is_regular_action, schreier_sims


class UnboundSymbol(ParameterError, KeyError):
    """A relation word uses a letter with no permutation assigned."""


class Kind(str, enum.Enum):
    RHO = "Rho"
    MU = "Mu"
    TAU = "Tau"
    ZETA = "Zeta"
    DELTA = "Delta"
    GAMMA_F2 = "GammaF2"
    SIGMA_F2 = "SigmaF2"
    EPSILON = "Epsilon"
    SIGMA_CAP_F3 = "SigmaCapF3"
    SIGMA_F4 = "SigmaF4"
    OMEGA_F4 = "OmegaF4"


_INDEXED = {Kind.EPSILON, Kind.SIGMA_CAP_F3}


@dataclass(frozen=True)
class AutomorphismKind:
    tag: Kind
    index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "tag", Kind(self.tag))
        if (self.tag in _INDEXED) != (self.index is not None):
            raise ParameterError(f"{self.tag.value} index mismatch: {self.index!r}")

    def __str__(self) -> str:
        return self.tag.value if self.index is None else f"{self.tag.value}({self.index})"


def _as_kind(kind) -> AutomorphismKind:
    if isinstance(kind, AutomorphismKind):
        return kind
    if isinstance(kind, tuple):
        return AutomorphismKind(Kind(kind[0]), kind[1])
    return AutomorphismKind(Kind(kind))


# ---------------------------------------------------------------------------
# arithmetic helpers shared with classify


def mod(x: int, n: int) -> int:
    return x % n


def family1_hub_offset(p: RoseWindowParams) -> int:
    """Hub offset r' in {r, -r} with r'a = -a (mod n); raises if neither works."""
    n, a, r = p.n, p.a, p.r
    if (r * r) % n not in (1, n - 1):
        raise ApplicabilityError(f"{p}: r^2 is not +-1 mod n")
    for cand in (r, n - r):
        if (cand * a + a) % n == 0:
            return cand
    raise ApplicabilityError(f"{p}: ra is not +-a mod n")


def family2_sign(p: RoseWindowParams) -> int | None:
    """+1 or -1 if p has the Family-2 shape with (r^2 + n/2) = +-1, else None."""
    n, a, r = p.n, p.a, p.r
    if n % 4 or a != n // 2 or r % 2 == 0:
        return None
    v = (r * r + n // 2) % n
    if v == 1:
        return 1
    if v == n - 1:
        return -1
    return None


def family3_m(p: RoseWindowParams) -> int | None:
    """m when p is R_2m(m+-2, m+-1) for some signs, else None."""
    if p.n % 2:
        return None
    m = p.n // 2
    if m < 3:
        return None
    if p.a in (m - 2, m + 2) and p.r in (m - 1, m + 1):
        return m
    return None


def family4_d(p: RoseWindowParams) -> tuple[int, int, bool] | None:
    """(m, d, needs_tau) for Family-4 members, with d = +-m fixing the canonical form.

    The canonical form is R_12m(3d+2, 9d+1); ``needs_tau`` says the outspoke
    offset must be negated to reach it.  The hub offset is always matched up
    to sign, which leaves the graph unchanged.
    """
    n, a, r = p.n, p.a, p.r
    if n % 12:
        return None
    m = n // 12
    for d in (m, -m):
        ca, cr = (3 * d + 2) % n, (9 * d + 1) % n
        if r not in (cr, (-cr) % n):
            continue
        if a == ca:
            return m, d, False
        if a == (-ca) % n:
            return m, d, True
    return None


def family4_canonical(p: RoseWindowParams) -> tuple[RoseWindowParams, int, int, bool]:
    info = family4_d(p)
    if info is None:
        raise ApplicabilityError(f"{p} is not a Family-4 member")
    m, d, flip = info
    n = p.n
    return RoseWindowParams(n, (3 * d + 2) % n, (9 * d + 1) % n), m, d, flip


# ---------------------------------------------------------------------------
# formulas


def _side_map(p: RoseWindowParams, fa: Callable[[int], tuple[str, int]],
              fb: Callable[[int], tuple[str, int]]) -> Permutation:
    n = p.n

    def enc(side: str, j: int) -> int:
        return j % n if side == "A" else n + j % n

    images = [enc(*fa(i)) for i in range(n)] + [enc(*fb(i)) for i in range(n)]
    return Permutation(images)


def rho(p: RoseWindowParams, power: int = 1) -> Permutation:
    return _side_map(p, lambda i: ("A", i + power), lambda i: ("B", i + power))


def mu(p: RoseWindowParams) -> Permutation:
    a = p.a
    return _side_map(p, lambda i: ("A", -i), lambda i: ("B", -a - i))


def tau(p: RoseWindowParams) -> Permutation:
    return tau_map(p.n)


def zeta(p: RoseWindowParams) -> Permutation:
    n, r = p.n, p.r
    if math.gcd(n, r) != 1:
        raise ApplicabilityError(f"Zeta needs gcd(n, r) = 1; gcd({n}, {r}) = {math.gcd(n, r)}")
    s = pow(r, -1, n)
    return _side_map(p, lambda i: ("B", -i * s), lambda i: ("A", -i * s))


def delta(p: RoseWindowParams) -> Permutation:
    rr = family1_hub_offset(p)
    return _side_map(p, lambda i: ("B", rr * i), lambda i: ("A", rr * i))


def _require_f2(p: RoseWindowParams, plus_only: bool) -> int:
    sign = family2_sign(p)
    if sign is None or (plus_only and sign != 1):
        want = "(r^2 + n/2) = 1" if plus_only else "(r^2 + n/2) = +-1"
        raise ApplicabilityError(f"{p}: needs 4 | n, a = n/2, r odd and {want} mod n")
    return sign


def gamma_f2(p: RoseWindowParams, hub: int | None = None) -> Permutation:
    """A_i -> B_{ri}, B_i -> A_{(r+a)i}; ``hub`` overrides r by its negative if given."""
    _require_f2(p, plus_only=False)
    r = p.r if hub is None else hub
    a = p.a
    return _side_map(p, lambda i: ("B", r * i), lambda i: ("A", (r + a) * i))


def sigma_f2(p: RoseWindowParams) -> Permutation:
    """A_i -> B_{(r+a)i}, B_i -> A_{ri}, as printed (not checked here)."""
    _require_f2(p, plus_only=True)
    r, a = p.r, p.a
    return _side_map(p, lambda i: ("B", (r + a) * i), lambda i: ("A", r * i))


def _require_f3(p: RoseWindowParams) -> int:
    m = p.n // 2
    if p.n % 2 or m < 3 or p.a != m - 2 or p.r not in (m - 1, m + 1):
        raise ApplicabilityError(f"{p}: needs n = 2m, a = m-2, r = m-1 (up to sign)")
    return m


def epsilon_printed(p: RoseWindowParams, i: int) -> Permutation:
    """(A_i,B_{i-1})(A_{i+m},B_{i-1+m})(A_{i+1},B_{i+m})(A_{i+1+m},B_i), unchecked.

    This preserves adjacency of R_2m(m+2, m+-1) rather than R_2m(m-2, m-1).
    """
    if p.n % 2:
        raise ApplicabilityError(f"{p}: epsilon needs n even")
    m = p.n // 2
    A, B = p.A, p.B
    cyc = [(A(i), B(i - 1)), (A(i + m), B(i - 1 + m)), (A(i + 1), B(i + m)), (A(i + 1 + m), B(i))]
    return Permutation.from_cycles(cyc, p.n * 2)


def epsilon(p: RoseWindowParams, i: int) -> Permutation:
    """The involution above with every hub index shifted by -a.

    The shift moves it onto R_2m(m-2, m-1) and keeps the index relations intact.
    """
    m = _require_f3(p)
    A, B = p.A, p.B
    s = -p.a
    cyc = [(A(i), B(i - 1 + s)), (A(i + m), B(i - 1 + m + s)),
           (A(i + 1), B(i + m + s)), (A(i + 1 + m), B(i + s))]
    return Permutation.from_cycles(cyc, 2 * p.n)


def sigma_cap_f3(p: RoseWindowParams, i: int) -> Permutation:
    """Product of every epsilon_j with j != i (mod 3)."""
    m = _require_f3(p)
    if m % 3:
        raise ApplicabilityError(f"{p}: SigmaCapF3 needs 3 | m, got m = {m}")
    out = Permutation.identity(p.degree)
    for j in range(m):
        if (j - i) % 3:
            out = out * epsilon(p, j)
    return out


def _require_f4_canonical(p: RoseWindowParams) -> tuple[int, int]:
    info = family4_d(p)
    if info is None or info[2]:
        raise ApplicabilityError(f"{p}: needs the form R_12m(3d+2, 9d+1) with d = +-m")
    return info[0], info[1]


def sigma_f4(p: RoseWindowParams) -> Permutation:
    _, d = _require_f4_canonical(p)

    def fa(i):
        return [("A", i), ("B", i - 1), ("B", i - 1 - 3 * d)][i % 3]

    def fb(i):
        return [("A", i + 1), ("A", i + 3 * d + 1), ("B", i + 6 * d)][i % 3]

    return _side_map(p, fa, fb)


OMEGA_RULES = ("A0", "A1", "A2", "B0", "B1", "B2")


def omega_f4_rules(p: RoseWindowParams) -> dict[str, dict[int, int]]:
    """Printed piecewise images keyed by side and residue of i mod 3."""
    m, d = _require_f4_canonical(p)
    if m % 4 != 2:
        raise ApplicabilityError(f"{p}: OmegaF4 needs m = 2 (mod 4), got m = {m}")
    b = d + 1
    images = {
        "A0": lambda i: p.A(b * i),
        "A1": lambda i: p.B(b * i - b),
        "A2": lambda i: p.B(b + b * i - 1),
        "B0": lambda i: p.A(b * i + 1),
        "B1": lambda i: p.A(4 + b * i - 4 * b),
        "B2": lambda i: p.B(b + b * i - 1),
    }
    out = {}
    for key, f in images.items():
        side, res = key[0], int(key[1])
        enc = p.A if side == "A" else p.B
        out[key] = {enc(i): f(i) for i in range(p.n) if i % 3 == res}
    return out


def omega_f4_partial(p: RoseWindowParams) -> dict[int, int]:
    """The printed images of A_i, B_i with i = 0, 1 (mod 3)."""
    rules = omega_f4_rules(p)
    out: dict[int, int] = {}
    for key in ("A0", "A1", "B0", "B1"):
        out.update(rules[key])
    return out


@dataclass(frozen=True)
class OmegaRecovery:
    perm: Permutation
    kept: tuple[str, ...]
    dropped: tuple[str, ...]


def recover_omega(p: RoseWindowParams) -> OmegaRecovery:
    """Complete omega from the largest set of printed cases that admits one completion.

    The i = 0, 1 cases are tried first.  If they clash, every subset of the
    six printed cases is tried from largest to smallest; a size is accepted
    only when all of its consistent subsets force the same automorphism.
    """
    rules = omega_f4_rules(p)
    g = _graph(p)

    def attempt(keys):
        partial: dict[int, int] = {}
        for k in keys:
            partial.update(rules[k])
        try:
            return complete_automorphism(g, partial)
        except TranscriptionError:
            return None

    first = ("A0", "A1", "B0", "B1")
    got = attempt(first)
    if got is not None:
        return OmegaRecovery(got, first, tuple(k for k in OMEGA_RULES if k not in first))
    for size in range(len(OMEGA_RULES), 1, -1):
        found = {}
        for keys in itertools.combinations(OMEGA_RULES, size):
            perm = attempt(keys)
            if perm is not None:
                found[keys] = perm
        if not found:
            continue
        perms = set(found.values())
        if len(perms) > 1:
            raise TranscriptionError(f"omega on {p}: printed cases admit {len(perms)} readings")
        kept = min(found)
        return OmegaRecovery(perms.pop(), kept, tuple(k for k in OMEGA_RULES if k not in kept))
    raise TranscriptionError(f"omega on {p}: no consistent subset of printed cases")


def complete_automorphism(g: RWGraph, partial: Mapping[int, int]) -> Permutation:
    """Unique automorphism of g extending ``partial``; raises if none or several exist."""
    deg = g.order
    adj = g.adjacency
    fixed = dict(partial)
    if len(set(fixed.values())) != len(fixed):
        raise TranscriptionError("partial map is not injective")
    for u, x in fixed.items():
        for v in adj[u]:
            if v in fixed and fixed[v] not in adj[x]:
                raise TranscriptionError(
                    f"partial map breaks edge {g.params.label(u)}{g.params.label(v)}")
    free = [v for v in range(deg) if v not in fixed]
    solutions: list[dict[int, int]] = []

    def candidates(v, cur, used):
        cand = None
        for u in adj[v]:
            if u in cur:
                nb = adj[cur[u]]
                cand = set(nb) if cand is None else cand & nb
        if cand is None:
            cand = set(range(deg))
        return [x for x in sorted(cand - used) if len(adj[x]) == len(adj[v])]

    def extend(cur, used):
        if len(solutions) > 1:
            return
        pending = [v for v in free if v not in cur]
        if not pending:
            solutions.append(dict(cur))
            return
        best = None
        for v in pending:
            c = candidates(v, cur, used)
            if best is None or len(c) < len(best[1]):
                best = (v, c)
                if len(c) <= 1:
                    break
        v, cands = best
        for x in cands:
            ok = all(cur[u] in adj[x] for u in adj[v] if u in cur)
            if not ok:
                continue
            cur[v] = x
            used.add(x)
            extend(cur, used)
            del cur[v]
            used.discard(x)

    extend(dict(fixed), set(fixed.values()))
    if not solutions:
        raise TranscriptionError(f"no automorphism of {g.params} extends the partial map")
    if len(solutions) > 1:
        raise TranscriptionError(f"the partial map on {g.params} has several completions")
    sol = solutions[0]
    return Permutation([sol[v] for v in range(deg)])


@lru_cache(maxsize=32)
def omega_f4(p: RoseWindowParams) -> Permutation:
    return recover_omega(p).perm


_FORMULAS: dict[Kind, Callable] = {
    Kind.RHO: rho,
    Kind.MU: mu,
    Kind.TAU: tau,
    Kind.ZETA: zeta,
    Kind.DELTA: delta,
    Kind.GAMMA_F2: gamma_f2,
    Kind.SIGMA_F2: sigma_f2,
    Kind.EPSILON: epsilon,
    Kind.SIGMA_CAP_F3: sigma_cap_f3,
    Kind.SIGMA_F4: sigma_f4,
    Kind.OMEGA_F4: omega_f4,
}


@lru_cache(maxsize=256)
def _graph(p: RoseWindowParams) -> RWGraph:
    return build(p)


def formula_map(kind, params: RoseWindowParams) -> Permutation:
    """The permutation given by a kind's formula, with domain checks but no adjacency check."""
    k = _as_kind(kind)
    fn = _FORMULAS[k.tag]
    return fn(params) if k.index is None else fn(params, k.index)


def explicit_automorphism(kind, params: RoseWindowParams) -> Permutation:
    """Construct a named automorphism and verify it edge by edge."""
    k = _as_kind(kind)
    perm = formula_map(k, params)
    if not is_automorphism(perm, _graph(params)):
        raise TranscriptionError(f"{k} on {params} does not preserve adjacency")
    return perm


# ---------------------------------------------------------------------------
# words and relations

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<pow>\^\s*(?:\(\s*)?-?\d+(?:\s*\))?)"
                    r"|(?P<open>\()|(?P<close>\))|(?P<star>\*))")


def _tokenize(word: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    word = word.strip()
    while pos < len(word):
        mt = _TOKEN.match(word, pos)
        if not mt or mt.end() == pos:
            raise ParameterError(f"cannot parse word {word!r} at position {pos}")
        pos = mt.end()
        kind = mt.lastgroup
        out.append((kind, mt.group(kind)))
    return out


def evaluate_word(assignment: Mapping[str, Permutation], word: str,
                  degree: int | None = None) -> Permutation:
    """Evaluate a product word; ``id`` is the identity, ``x^k`` allows negative k."""
    if degree is None:
        if not assignment:
            raise ParameterError("degree needed for an empty assignment")
        degree = len(next(iter(assignment.values())))
    ident = Permutation.identity(degree)
    tokens = _tokenize(word)
    pos = 0

    def parse_seq(close: bool) -> Permutation:
        nonlocal pos
        acc = ident
        while pos < len(tokens):
            kind, text = tokens[pos]
            if kind == "close":
                if not close:
                    raise ParameterError(f"unbalanced ')' in {word!r}")
                pos += 1
                return acc
            if kind == "star":
                pos += 1
                continue
            if kind == "pow":
                raise ParameterError(f"exponent without base in {word!r}")
            pos += 1
            if kind == "open":
                factor = parse_seq(close=True)
            elif text == "id":
                factor = ident
            else:
                if text not in assignment:
                    raise UnboundSymbol(text)
                factor = assignment[text]
            while pos < len(tokens) and tokens[pos][0] == "pow":
                k = int(re.sub(r"[\^\s()]", "", tokens[pos][1]))
                factor = factor ** k
                pos += 1
            acc = acc * factor
        if close:
            raise ParameterError(f"unbalanced '(' in {word!r}")
        return acc

    return parse_seq(close=False)


def check_relation(assignment: Mapping[str, Permutation], lhs: str, rhs: str) -> bool:
    """True iff both words evaluate to the same permutation."""
    return evaluate_word(assignment, lhs) == evaluate_word(assignment, rhs)


# ---------------------------------------------------------------------------
# regular witnesses


class Case(str, enum.Enum):
    F1_PLUS = "F1Plus"
    F1_MINUS = "F1Minus"
    F2_PLUS = "F2Plus"
    F3_EVEN = "F3Even"
    F3_MULT3 = "F3Mult3"
    F4_ODD = "F4Odd"
    F4_TWO_MOD4 = "F4TwoMod4"
    SEARCH_FOUND = "SearchFound"


@dataclass
class RegularWitness:
    case: Case
    params: RoseWindowParams
    generators: tuple[Permutation, ...]
    names: tuple[str, ...] = ()
    relations: tuple[tuple[str, str], ...] = ()
    note: str = ""
    _group: PermutationGroup | None = field(default=None, repr=False, compare=False)

    @property
    def expected_order(self) -> int:
        return self.params.degree

    def group(self) -> PermutationGroup:
        if self._group is None:
            self._group = schreier_sims(list(self.generators), degree=self.params.degree)
        return self._group

    @property
    def order(self) -> int:
        return self.group().order()

    def assignment(self) -> dict[str, Permutation]:
        return dict(zip(self.names, self.generators))

    def failed_relations(self) -> list[tuple[str, str]]:
        env = self.assignment()
        return [(l, r) for l, r in self.relations if not check_relation(env, l, r)]

    def is_regular(self) -> bool:
        return self.order == self.expected_order and is_regular_action(self.group())

    def verify(self) -> bool:
        g = _graph(self.params)
        return (all(is_automorphism(x, g) for x in self.generators)
                and self.is_regular() and not self.failed_relations())

    def to_json_obj(self) -> dict:
        return {
            "case": self.case.value,
            "n": self.params.n,
            "a": self.params.a,
            "r": self.params.r,
            "generators": [list(x) for x in self.generators],
            "order": self.order,
            "relations_checked": [f"{l} = {r}" for l, r in self.relations],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RegularWitness":
        p = RoseWindowParams(obj["n"], obj["a"], obj["r"])
        gens = tuple(Permutation(x) for x in obj["generators"])
        rels = []
        for text in obj.get("relations_checked", []):
            l, r = text.split(" = ", 1)
            rels.append((l, r))
        names = tuple(f"g{i}" for i in range(len(gens))) if not rels else ()
        return cls(Case(obj["case"]), p, gens, names, tuple(rels))


def _conjugate(perms, phi: Permutation):
    """phi^-1 x phi: moves maps on phi's target back to its source."""
    inv = ~phi
    return tuple(inv * x * phi for x in perms)


def _witness(case, p, names, gens, relations, note="") -> RegularWitness:
    w = RegularWitness(Case(case), p, tuple(gens), tuple(names), tuple(relations), note)
    g = _graph(p)
    for name, x in zip(names, gens):
        if not is_automorphism(x, g):
            raise TranscriptionError(f"{case} generator {name} is not an automorphism of {p}")
    return w


def _f1_plus(p):
    n = p.n
    if (p.r * p.r) % n != 1:
        raise ApplicabilityError(f"{p}: F1Plus needs r^2 = 1 mod n")
    rr = family1_hub_offset(p)
    names = ("rho", "delta")
    gens = (rho(p), explicit_automorphism(Kind.DELTA, p))
    rels = [(f"rho^{n}", "id"), ("delta^2", "id"), ("delta rho delta", f"rho^{rr}")]
    return _witness(Case.F1_PLUS, p, names, gens, rels, note=f"hub offset {rr}")


def _f1_minus(p):
    n, a = p.n, p.a
    if (p.r * p.r) % n != n - 1:
        raise ApplicabilityError(f"{p}: F1Minus needs r^2 = -1 mod n")
    rr = family1_hub_offset(p)
    if a % 2 == 0 or n != 2 * a:
        raise ApplicabilityError(f"{p}: F1Minus needs a odd and n = 2a")
    d = explicit_automorphism(Kind.DELTA, p)
    al, be, ga = rho(p, 2), rho(p) * d * d, mu(p) * d
    names = ("alpha", "beta", "gamma")
    rels = [
        (f"alpha^{n // 2}", "id"), ("beta^2", "id"), ("gamma^4", "id"),
        ("beta alpha", "alpha^-1 beta"),
        ("gamma alpha", f"alpha^{-rr} gamma"),
        ("gamma^2", f"alpha^{(a - 1) // 2} beta"),
    ]
    return _witness(Case.F1_MINUS, p, names, (al, be, ga), rels, note=f"hub offset {rr}")


def _f2_plus(p):
    _require_f2(p, plus_only=True)
    n, a = p.n, p.a
    # of the two hub signs exactly one is 3 mod 4; the construction needs that one
    rr = p.r if p.r % 4 == 3 else n - p.r
    q = n // 4
    ga = gamma_f2(p, hub=rr)
    kappa = tau(p) * mu(p)  # A_i -> A_i, B_i -> B_{i+a}
    al, be = rho(p, 2) * kappa, rho(p) * mu(p)
    names = ("alpha", "beta", "sigma")
    rels = [
        (f"alpha^{n // 2}", "id"), ("beta^2", "id"), ("sigma^2", "id"),
        ("beta alpha beta", "alpha^-1"),
        ("sigma alpha sigma", f"alpha^{(rr + q) % (n // 2)}"),
        ("(beta sigma)^2", f"alpha^{((a - rr + 1) // 2 + q) % (n // 2)}"),
    ]
    return _witness(Case.F2_PLUS, p, names, (al, be, ga), rels,
                    note=f"hub offset {rr}; alpha = rho^2 tau mu")


def _f3_even(p):
    m = family3_m(p)
    if m is None or m % 2:
        raise ApplicabilityError(f"{p}: F3Even needs a Family-3 member with m even")
    w = _f1_plus(p)
    w.case = Case.F3_EVEN
    return w


def _f3_canonical(p):
    m = family3_m(p)
    if m is None:
        raise ApplicabilityError(f"{p} is not a Family-3 member")
    if p.a == m - 2:
        return p, None, m
    q = RoseWindowParams(p.n, m - 2, p.r)
    return q, tau_map(p.n), m


def _f3_mult3(p):
    q, phi, m = _f3_canonical(p)
    if m % 2 == 0 or m % 3:
        raise ApplicabilityError(f"{p}: F3Mult3 needs m an odd multiple of 3, got m = {m}")
    gens = (rho(q, 2), explicit_automorphism((Kind.SIGMA_CAP_F3, 0), q),
            explicit_automorphism((Kind.SIGMA_CAP_F3, 1), q))
    if phi is not None:
        gens = _conjugate(gens, phi)
    names = ("alpha", "beta", "gamma")
    rels = [(f"alpha^{m}", "id"), ("beta^2", "id"), ("gamma^2", "id"),
            ("beta alpha", "alpha gamma"), ("gamma alpha", "alpha beta gamma"),
            ("beta gamma", "gamma beta")]
    return _witness(Case.F3_MULT3, p, names, gens, rels)


def _f4_setup(p):
    q, m, d, flip = family4_canonical(p)
    phi = tau_map(p.n) if flip else None
    return q, m, d, phi


def _f4_odd(p):
    q, m, d, phi = _f4_setup(p)
    if m % 2 == 0 or m == 3:
        raise ApplicabilityError(f"{p}: F4Odd needs m odd and m != 3, got m = {m}")
    s = explicit_automorphism(Kind.SIGMA_F4, q)
    r1 = rho(q)
    # rho^2 mu sigma together with (rho sigma)^2 generates twice too many
    # elements; rho^2 in its place gives a regular group of order 24m
    gens = ((r1 * s) ** 2, r1 ** 2)
    if phi is not None:
        gens = _conjugate(gens, phi)
    names = ("alpha", "beta")
    rels = [(f"alpha^{3 * m}", "id"), (f"beta^{6 * m}", "id"),
            ("alpha^3", f"beta^{3 * (m + 1)}")]
    return _witness(Case.F4_ODD, p, names, gens, rels, note=f"d = {d}; beta = rho^2")


def printed_generator_set(case, params: RoseWindowParams) -> RegularWitness:
    """The generator set exactly as printed, without any correction or adjacency check.

    Only F2Plus and F4Odd differ from :func:`regular_subgroup_generators`; the
    printed versions are kept so their defects stay reproducible.
    """
    c = Case(case)
    p = params
    if c is Case.F2_PLUS:
        _require_f2(p, plus_only=True)
        n, a, r = p.n, p.a, p.r
        gens = (rho(p, 2), rho(p) * mu(p), sigma_f2(p))
        rels = [(f"alpha^{n // 2}", "id"), ("beta^2", "id"), ("sigma^2", "id"),
                ("beta alpha beta", "alpha^-1"), ("sigma alpha sigma", f"alpha^{r}"),
                ("(beta sigma)^2", f"alpha^{(a - r + 1) // 2}")]
        return RegularWitness(c, p, gens, ("alpha", "beta", "sigma"), tuple(rels), "printed")
    if c is Case.F4_ODD:
        q, m, d, phi = _f4_setup(p)
        s = explicit_automorphism(Kind.SIGMA_F4, q)
        gens = ((rho(q) * s) ** 2, rho(q, 2) * mu(q) * s)
        if phi is not None:
            gens = _conjugate(gens, phi)
        rels = [(f"alpha^{3 * m}", "id"), ("beta^8", "id"), ("beta alpha", "alpha^-1 beta^-1")]
        return RegularWitness(c, p, gens, ("alpha", "beta"), tuple(rels), "printed")
    return regular_subgroup_generators(c, p)


def f4_two_mod4_gamma_power(m: int) -> int:
    """1 for m = 2, 6 (mod 12), 3 for m = 10 (mod 12)."""
    return 3 if m % 12 == 10 else 1


def _f4_two_mod4(p):
    q, m, d, phi = _f4_setup(p)
    if m % 4 != 2:
        raise ApplicabilityError(f"{p}: F4TwoMod4 needs m = 2 (mod 4), got m = {m}")
    n = q.n
    s = explicit_automorphism(Kind.SIGMA_F4, q)
    w = explicit_automorphism(Kind.OMEGA_F4, q)
    al = w * s * rho(q, 4 * m) * w * s
    be = rho(q, 3 * m // 2)
    ga = (rho(q, 8 * m) * s * rho(q, 2) * w) ** f4_two_mod4_gamma_power(m)
    gens = (al, be, ga)
    if phi is not None:
        gens = _conjugate(gens, phi)
    names = ("alpha", "beta", "gamma")
    rels = [("alpha^3", "id"), ("beta^8", "id"), (f"gamma^{f4_two_mod4_gamma_order(m)}", "id"),
            ("alpha beta", "beta alpha"), ("alpha gamma", "gamma alpha"),
            ("gamma beta", f"beta^{(d + 1) % 8} gamma"),
            (f"gamma^{m}", gamma_m_expected(m))]
    return _witness(Case.F4_TWO_MOD4, p, names, gens, rels, note=f"d = {d}; n = {n}")


def f4_two_mod4_gamma_order(m: int) -> int:
    """Order of gamma: 2m, except 6m when m = 6 (mod 12) where gamma^m = alpha^2 beta^4."""
    return 6 * m if m % 12 == 6 else 2 * m


def gamma_m_expected(m: int) -> str:
    """Right-hand side of gamma^m as it holds for the m = 2 (mod 4) witness."""
    return "alpha^2 beta^4" if m % 12 == 6 else "beta^4"


_CASES = {
    Case.F1_PLUS: _f1_plus,
    Case.F1_MINUS: _f1_minus,
    Case.F2_PLUS: _f2_plus,
    Case.F3_EVEN: _f3_even,
    Case.F3_MULT3: _f3_mult3,
    Case.F4_ODD: _f4_odd,
    Case.F4_TWO_MOD4: _f4_two_mod4,
}


def regular_subgroup_generators(case, params: RoseWindowParams) -> RegularWitness:
    """Build the witness for ``case``; raises ApplicabilityError outside its domain."""
    c = Case(case)
    if c is Case.SEARCH_FOUND:
        raise ApplicabilityError("SearchFound witnesses come from the cayley module")
    return _CASES[c](params)


def applicable_cases(params: RoseWindowParams) -> list[Case]:
    """Every constructive case whose preconditions hold for params."""
    out = []
    for c, fn in _CASES.items():
        try:
            _precheck(c, params)
        except ApplicabilityError:
            continue
        out.append(c)
    return out


def _precheck(c: Case, p: RoseWindowParams) -> None:
    n = p.n
    if c in (Case.F1_PLUS, Case.F1_MINUS):
        family1_hub_offset(p)
        want = 1 if c is Case.F1_PLUS else n - 1
        if (p.r * p.r) % n != want:
            raise ApplicabilityError("sign")
        if c is Case.F1_MINUS and (p.a % 2 == 0 or n != 2 * p.a):
            raise ApplicabilityError("shape")
    elif c is Case.F2_PLUS:
        _require_f2(p, plus_only=True)
    elif c in (Case.F3_EVEN, Case.F3_MULT3):
        m = family3_m(p)
        if m is None:
            raise ApplicabilityError("family")
        if c is Case.F3_EVEN and m % 2:
            raise ApplicabilityError("parity")
        if c is Case.F3_MULT3 and (m % 2 == 0 or m % 3):
            raise ApplicabilityError("residue")
    elif c in (Case.F4_ODD, Case.F4_TWO_MOD4):
        info = family4_d(p)
        if info is None:
            raise ApplicabilityError("family")
        m = info[0]
        if c is Case.F4_ODD and (m % 2 == 0 or m == 3):
            raise ApplicabilityError("residue")
        if c is Case.F4_TWO_MOD4 and m % 4 != 2:
            raise ApplicabilityError("residue")
