"""Command line front end.

    twistcoh compute --group Z4:Z --module Ztw --degree 5
    twistcoh verify --suite all --format json
    twistcoh replay-theorem3

Exit codes: 0 all claims pass, 1 a claim fails, 2 usage error, 3 over budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .catalog import lookup_extension
from .errors import BudgetError
from .groups import GroupError, ZExtension, build_group
from .homology import cohomology, homology, set_seed
from .modules import parse_module
from .resolutions import set_cache_dir, default_cache_dir
from .suites import SUITES, run_all, run_suite, run_theorem3
from .wang import clear_cache, mapping_torus_homology, wang_cohomology, wang_homology

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _resolve_group(spec: str):
    E = lookup_extension(spec)
    if E is not None:
        return E
    try:
        return build_group(spec)
    except (GroupError, ValueError, KeyError, IndexError) as exc:
        if isinstance(exc, BudgetError):
            raise
        raise UsageError("cannot parse group %r: %s" % (spec, exc)) from None


def compute(group: str, module: str, degree: int, cohomological: bool) -> dict:
    if degree < 0:
        raise UsageError("degree must be nonnegative")
    G = _resolve_group(group)
    try:
        M = parse_module(module, G)
    except (GroupError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    kind = "cohomology" if cohomological else "homology"
    doc = {"group": group, "module": M.name, "degree": degree, "kind": kind}
    if isinstance(G, ZExtension):
        W = wang_cohomology(G, M, degree) if cohomological else wang_homology(G, M, degree)
        doc["wang"] = W.to_json()
        if cohomological:
            doc["result"] = W.total_description()
            doc["resolved"] = W.resolved
        else:
            T = mapping_torus_homology(G, M, degree)
            doc["result"] = T.describe()
            doc["invariant_factors"] = list(T.invariant_factors)
            doc["free_rank"] = T.free_rank
            doc["generators"] = [T.representative(g) for g in T.gens()]
    else:
        H = cohomology(G, M, degree) if cohomological else homology(G, M, degree)
        doc["result"] = H.describe()
        doc["invariant_factors"] = list(H.invariant_factors)
        doc["free_rank"] = H.free_rank
        doc["generators"] = [H.representative(g) for g in H.gens()]
        doc["resolution"] = {"builder": H.resolution.builder, "ranks": H.resolution.ranks[:degree + 2]}
    return doc


def _text_compute(doc: dict) -> str:
    sym = "H^%d" if doc["kind"] == "cohomology" else "H_%d"
    lines = ["%s(%s; %s) = %s" % (sym % doc["degree"], doc["group"], doc["module"], doc["result"])]
    if "wang" in doc:
        w = doc["wang"]
        lines.append("  %-8s %s" % ("left", w["left"]["name"]))
        lines.append("  %-8s %s" % ("right", w["right"]["name"]))
    for i, g in enumerate(doc.get("generators", [])):
        lines.append("  gen %-3d %s" % (i, g))
    return "\n".join(lines) + "\n"


def _text_reports(reports, timings: bool = True) -> str:
    out = []
    for r in reports:
        head = "[%s] %s" % ("PASS" if r.passed else "FAIL", r.suite)
        if timings:
            head += "  (%.2fs)" % r.seconds
        out.append(head)
        if r.error:
            out.append("    error: %s" % r.error)
        width = max((len(c.id) for c in r.claims), default=0)
        for c in r.claims:
            out.append("    %-4s %-*s  %s" % ("ok" if c.passed else "FAIL", width, c.id, c.anchor))
            if not c.passed:
                out.append("         computed %s" % json.dumps(c.computed, sort_keys=True))
                out.append("         expected %s" % json.dumps(c.expected, sort_keys=True))
    npass = sum(r.passed for r in reports)
    out.append("%d/%d suites pass" % (npass, len(reports)))
    return "\n".join(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", help="directory for cached resolutions (default $HERBERT_CACHE)")
    common.add_argument("--seed", type=int, default=None, help="pivot seed for lifts and generic resolutions")

    p = argparse.ArgumentParser(prog="twistcoh", description="Twisted group homology engine and verifier.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", parents=[common], help="compute one (co)homology group")
    c.add_argument("--group", required=True)
    c.add_argument("--module", default="Z")
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--cohomology", action="store_true")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", required=True, choices=sorted(SUITES) + ["theorem3", "all"])
    sub.add_parser("replay-theorem3", parents=[common], help="run the dependency suites, then the even-class replay")
    return p


def _emit(text: str, path: str | None) -> None:
    if path:
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError("cannot write %s: %s" % (path, exc)) from None
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_cache_dir(args.cache_dir or default_cache_dir())
    set_seed(args.seed)
    clear_cache()
    try:
        if args.command == "compute":
            doc = compute(args.group, args.module, args.degree, args.cohomology)
            _emit(dumps(doc) if args.format == "json" else _text_compute(doc), args.output)
            return EXIT_OK
        t0 = time.perf_counter()
        if args.command == "replay-theorem3" or args.suite == "theorem3":
            reports = run_theorem3()
        elif args.suite == "all":
            reports = run_all()
        else:
            reports = [run_suite(args.suite)]
        ok = all(r.passed for r in reports)
        if args.format == "json":
            text = dumps({"verdict": "pass" if ok else "fail", "reports": [r.to_json() for r in reports]})
        else:
            text = _text_reports(reports) + "total %.2fs\n" % (time.perf_counter() - t0)
        _emit(text, args.output)
        return EXIT_OK if ok else EXIT_FAIL
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print("over budget: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
