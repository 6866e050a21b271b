"""``rw`` command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .autgroup import GENERIC_MAX_DEGREE, automorphism_group, edge_orbit_count
from .cayley import is_cayley_search
from .classify import classify
from .errors import ApplicabilityError, CapacityError, ParameterError, RoseWindowError
from .graph import RoseWindowParams, all_params, build
from .perm import enum_cap

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

SURVEY_MAX_N = GENERIC_MAX_DEGREE // 2

log = logging.getLogger("rosewindow")


def _params(args) -> RoseWindowParams:
    return RoseWindowParams(args.n, args.a, args.r)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_classify(args) -> int:
    rep = classify(_params(args), search=args.search)
    if args.json:
        _emit(_dump(rep.to_json_obj()), args.out)
        return EXIT_OK
    p = rep.params
    fams = ", ".join(f.label for f in rep.families) or "none"
    lines = [
        f"{p}  (normalized {rep.normalized})",
        f"families: {fams}",
        f"theorem: et={str(rep.et_theorem).lower()} vt={str(rep.vt_theorem).lower()} "
        f"cayley={str(rep.cayley_theorem).lower()}",
    ]
    if p.degenerate:
        lines.append("degenerate: 2r = 0 mod n, graph is not 4-regular")
    if rep.has_search:
        lines.append(f"search:  et={str(rep.et_search).lower()} vt={str(rep.vt_search).lower()} "
                     f"cayley={str(rep.cayley_search).lower()}")
        lines.append(f"|Aut| = {rep.aut_order}, edge orbits = {rep.edge_orbits} {rep.edge_orbit_kinds}")
        if rep.witness:
            lines.append(f"witness: {rep.witness['generators']} generators, regular of order {p.degree}")
        if rep.disagreements():
            lines.append(f"DISAGREEMENT: {', '.join(rep.disagreements())}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if rep.disagreements() else EXIT_OK


def _survey_one(key: tuple[int, int, int]) -> dict:
    p = RoseWindowParams(*key)
    try:
        return classify(p, search=not p.degenerate).to_json_obj()
    except CapacityError as exc:
        obj = classify(p, search=False).to_json_obj()
        obj["error"] = f"capacity: {exc}"
        return obj


def cmd_survey(args) -> int:
    if args.max_n < 3:
        raise ParameterError(f"--max-n must be >= 3, got {args.max_n}")
    if args.max_n > SURVEY_MAX_N:
        raise ParameterError(f"--max-n is capped at {SURVEY_MAX_N}")
    keys = [(p.n, p.a, p.r) for p in all_params(args.max_n, normalized_only=True, include_degenerate=True)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_survey_one, keys, chunksize=8))
    else:
        records = [_survey_one(k) for k in keys]
    records.sort(key=lambda o: (o["n"], o["a"], o["r"]))
    header = {"type": "header", "tool": "rosewindow", "version": __version__, "max_n": args.max_n,
              "enum_cap": enum_cap(), "max_degree": GENERIC_MAX_DEGREE}
    disagreements = sum(1 for o in records if o.get("disagreements"))
    summary = {"type": "summary", "records": len(records),
               "degenerate": sum(1 for o in records if o["degenerate"]),
               "capacity_errors": sum(1 for o in records if "error" in o),
               "disagreements": disagreements}
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps({"type": "record", **o}, sort_keys=True) for o in records]
    lines.append(json.dumps(summary, sort_keys=True))
    _emit("\n".join(lines) + "\n", args.out)
    if args.out:
        print(f"{len(records)} records, {disagreements} disagreements -> {args.out}", file=sys.stderr)
    return EXIT_FAIL if disagreements else EXIT_OK


def cmd_verify(args) -> int:
    from .verification import run_all

    results = run_all()
    if args.json:
        _emit(_dump([{"label": r.label, "passed": r.passed, "detail": r.detail,
                      "seconds": round(r.seconds, 3), "failures": r.failures} for r in results]), args.out)
    else:
        text = "\n".join(r.line() for r in results)
        failed = [r for r in results if not r.passed]
        if failed and failed[0].failures:
            text += f"\nfirst counterexample: {failed[0].failures[0]}"
        _emit(text + "\n", args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_export(args) -> int:
    g = build(_params(args))
    _emit(g.to_dot() if args.format == "dot" else g.to_json(), args.out)
    return EXIT_OK


def cmd_aut(args) -> int:
    g = build(_params(args))
    res = automorphism_group(g, args.method)
    count, kinds = edge_orbit_count(res, g)
    obj = {"n": args.n, "a": args.a, "r": args.r, "method": res.method.value, "order": res.order,
           "generators": [list(x) for x in res.generators],
           "vertex_orbits": len(res.vertex_orbits), "edge_orbits": count, "edge_orbit_kinds": kinds}
    if args.json:
        _emit(_dump(obj), args.out)
    else:
        _emit(f"{g.params} [{obj['method']}]: |Aut| = {res.order}, {len(res.generators)} generators, "
              f"{obj['vertex_orbits']} vertex orbit(s), {count} edge orbit(s) {kinds}\n", args.out)
    return EXIT_OK


def cmd_is_cayley(args) -> int:
    v = is_cayley_search(_params(args))
    if args.json:
        _emit(_dump(v.to_json_obj()), args.out)
    else:
        line = f"{v.params}: {'Cayley' if v.is_cayley else 'not Cayley'}"
        if v.witness is not None:
            line += f" (witness with {len(v.witness.generators)} generators, order {v.witness.order})"
        line += f"; {v.stats.nodes} search nodes, {v.stats.derangements} derangements"
        if v.from_cache:
            line += " [cached]"
        _emit(line + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rw", description="Rose window graph classification tools")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def triple(sp):
        sp.add_argument("n", type=int)
        sp.add_argument("a", type=int)
        sp.add_argument("r", type=int)

    def common(sp, json_flag=True):
        if json_flag:
            sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("classify", help="theorem verdicts (and search verdicts with --search)")
    triple(sp)
    common(sp)
    sp.add_argument("--search", action="store_true", help="also compute Aut and run the Cayley search")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("survey", help="JSONL survey of all normalized tuples up to --max-n")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp, json_flag=False)
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("verify-paper", help="run the acceptance checks")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="write the graph as DOT or JSON")
    triple(sp)
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    common(sp, json_flag=False)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("aut", help="automorphism group summary")
    triple(sp)
    sp.add_argument("--method", choices=("generic", "paper"), default="generic")
    common(sp)
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("is-cayley", help="exhaustive regular-subgroup search")
    triple(sp)
    common(sp)
    sp.set_defaults(func=cmd_is_cayley)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"rw: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParameterError, ApplicabilityError) as exc:
        print(f"rw: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RoseWindowError as exc:
        print(f"rw: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
