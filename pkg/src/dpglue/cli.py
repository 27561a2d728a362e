"""dpglue command line: scenario runner, catalog printer, identity checker.

Exit codes: 0 all checks pass, 1 at least one assertion/expectation
fails, 2 malformed input.  Output is deterministic (scenarios in file
order, JSON keys sorted).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from dpglue import catalog, scenarios


def seeded_rng() -> random.Random:
    """RNG honoring the DPGLUE_SEED environment variable."""
    seed = os.environ.get("DPGLUE_SEED")
    return random.Random(int(seed) if seed else 0)


def _report_lines(report: dict, mismatches) -> list:
    status = "ok" if not mismatches and not report["errors"] else "FAIL"
    head = (f"[{status}] {report['name']}: case={report['case']} "
            f"degree={report['degree']} gorenstein={report['gorenstein']}")
    lines = [head]
    lines.append(
        f"    singularity={report.get('singularity')} tame={report.get('tame')}"
        f" chi={report.get('chi')} h1={report.get('h1')}"
    )
    wild = report.get("wildPoints")
    if wild:
        pts = ", ".join(f"{k} (order {o})" for k, o in wild)
        lines.append(f"    wild points: {pts}")
    nd = report.get("n_delta_generic")
    if nd:
        lines.append(f"    generic stalk (n, delta) = {nd}")
    for err in report["errors"]:
        lines.append(f"    error: {err}")
    for m in mismatches:
        lines.append(f"    expectation mismatch: {m}")
    return lines


def _run_one(item):
    scenario, expect = item
    report = catalog.scenario_report(scenario)
    mismatches = scenarios.check_expectations(report, expect)
    return report, mismatches


def cmd_run(args) -> int:
    loaded = []
    for path in args.files:
        try:
            loaded.extend(scenarios.load_scenario_file(path))
        except scenarios.ScenarioFileError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, loaded))
    else:
        results = [_run_one(item) for item in loaded]
    failed = 0
    out = []
    for report, mismatches in results:
        if mismatches or report["errors"]:
            failed += 1
        if args.format == "json":
            entry = dict(report)
            entry["expectationMismatches"] = mismatches
            entry["pass"] = not (mismatches or report["errors"])
            out.append(entry)
        else:
            out.extend(_report_lines(report, mismatches))
    total = len(results)
    if args.format == "json":
        doc = {"scenarios": out, "passed": total - failed, "failed": failed}
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        for line in out:
            print(line)
        print(f"{total - failed}/{total} scenarios passed")
    return 1 if failed else 0


def cmd_catalog(args) -> int:
    if args.degree12:
        entries = catalog.degree12_catalog(args.characteristic)
        rows = []
        bad = False
        for e in entries:
            rep = catalog.scenario_report(e["scenario"])
            ok = rep["gorenstein"] and e["verified"] is not False
            bad = bad or not ok
            rows.append({
                "degree": e["degree"],
                "equation": e["equation"],
                "case": rep["case"],
                "parametrizationVerified": e["verified"],
                "gorenstein": rep["gorenstein"],
            })
        if args.format == "json":
            print(json.dumps(rows, indent=2, sort_keys=True))
        else:
            for r in rows:
                v = {True: "identity checked", None: "-"}.get(
                    r["parametrizationVerified"], "IDENTITY FAILS")
                print(f"deg {r['degree']}  case {r['case']:<13} "
                      f"{r['equation']:<40} {v}")
        return 1 if bad else 0
    rows = catalog.block_table(args.a_max)
    bad = False
    out = []
    for b in rows:
        ok = catalog.verify_block(b)
        bad = bad or not ok
        out.append({
            "case": b.case, "a": b.a, "degree": b.degree,
            "conic": b.conic, "verified": ok,
        })
    if args.format == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for r in out:
            a = "-" if r["a"] is None else r["a"]
            mark = "ok" if r["verified"] else "LATTICE FAIL"
            print(f"{r['case']:<3} a={a:<3} degree={r['degree']:<3} "
                  f"conic={r['conic']:<12} {mark}")
    return 1 if bad else 0


def cmd_verify_param(args) -> int:
    try:
        checks = scenarios.load_param_file(args.file)
    except scenarios.ScenarioFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    failed = 0
    for k, check in enumerate(checks):
        name = check.get("name", f"check {k}")
        try:
            ok = catalog.verify_parametrization(
                check["characteristic"],
                check["hypersurface"],
                check["variables"],
                check["substitution"],
                check["targetVariables"],
            )
        except (ValueError, ZeroDivisionError) as exc:
            print(f"error: {name}: {exc}", file=sys.stderr)
            return 2
        print(f"[{'ok' if ok else 'FAIL'}] {name}")
        failed += 0 if ok else 1
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpglue",
        description="Gorenstein gluing checks for normal surfaces "
                    "joined along conductor data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run scenario files")
    run.add_argument("files", nargs="+")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--jobs", type=int, default=1)
    run.set_defaults(func=cmd_run)

    cat = sub.add_parser("catalog", help="print verified tables")
    group = cat.add_mutually_exclusive_group()
    group.add_argument("--blocks", action="store_true", default=True)
    group.add_argument("--degree12", action="store_true")
    cat.add_argument("--a-max", type=int, default=5)
    cat.add_argument("--characteristic", type=int, default=0)
    cat.add_argument("--format", choices=("text", "json"), default="text")
    cat.set_defaults(func=cmd_catalog)

    vp = sub.add_parser("verify-param", help="check parametrization files")
    vp.add_argument("file")
    vp.set_defaults(func=cmd_verify_param)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
