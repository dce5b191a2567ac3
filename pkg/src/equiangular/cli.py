"""Command-line front end.

Exit codes: 0 on success, 2 on unreadable or invalid input, 3 when a search
budget runs out. Feasibility verdicts are reported as data and never change
the exit code.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .core import (
    SeidelMatrix,
    all_ones,
    build_fixture_S10,
    build_S6,
    build_Sk_family,
    cycle_graph,
    euler_switch,
    line_params,
    petersen_graph,
    read_matrix,
    seidel_from_graph,
    write_smat,
)
from .errors import BudgetExceeded, NotApplicable, ParseError, PreconditionError
from .feasibility import load_facts, run_battery
from .regular import DEFAULT_BUDGET, default_workers, find_regular_graphs
from .spectra import SpectrumSyntaxError, distinct_eigenvalue_count, mod2_charpoly_class, parse_spectrum_text, spectrum

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


class InputError(Exception):
    pass


def fixtures() -> dict[str, SeidelMatrix]:
    return {
        "s10": build_fixture_S10(),
        "s6": build_S6(),
        "s_k1": build_Sk_family(1),
        "k4": all_ones(4),
        "petersen": seidel_from_graph(petersen_graph()),
        "c5": seidel_from_graph(cycle_graph(5)),
    }


def _load(path: str, fmt: str | None) -> SeidelMatrix:
    try:
        return read_matrix(path, fmt)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(args, record, text: str) -> None:
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print(text)


def analyze_record(s: SeidelMatrix) -> dict:
    spec = spectrum(s)
    rec: dict = {
        "n": s.n,
        "spectrum": spec.render(),
        "distinct_eigenvalues": distinct_eigenvalue_count(s),
    }
    try:
        lp = line_params(s)
        rec["line_params"] = {"n": lp.n, "d": lp.d, "alpha": str(lp.alpha), "lambda0": str(lp.smallest)}
    except NotApplicable:
        rec["line_params"] = None
    m2 = mod2_charpoly_class(s)
    rec["mod2_class"] = {"parity": m2.parity, "matches": m2.matches}
    e = euler_switch(s)
    rec["euler_switch"] = str(e) if e is not None else None
    return rec


def cmd_analyze(args) -> int:
    s = _load(args.input, args.format)
    rec = analyze_record(s)
    lp = rec["line_params"]
    lines = [
        f"order               {rec['n']}",
        f"spectrum            {rec['spectrum']}",
        f"distinct            {rec['distinct_eigenvalues']}",
        f"lines               " + (f"n={lp['n']} d={lp['d']} alpha={lp['alpha']}" if lp else "-"),
        f"mod-2 class         {rec['mod2_class']['parity']} order, "
        + ("matches" if rec["mod2_class"]["matches"] else "DOES NOT match"),
        f"euler switching     {rec['euler_switch'] or 'none'}",
    ]
    _emit(args, rec, "\n".join(lines))
    return EXIT_OK


def cmd_search_regular(args) -> int:
    s = _load(args.input, args.format)
    witnesses = find_regular_graphs(s, args.budget, args.threads)
    space = 1 << (s.n - 1)
    rec = {"n": s.n, "switchings": space, "witnesses": [w.record() for w in witnesses]}
    lines = [f"{len(witnesses)} witnesses (exhaustive over {space} switchings)"]
    for w in witnesses:
        lines.append(f"  {w.switching}  k={w.valency}  graph spectrum {w.graph_spectrum.render()}")
    _emit(args, rec, "\n".join(lines))
    return EXIT_OK


def _facts(args):
    try:
        return load_facts(args.facts)
    except OSError as exc:
        raise InputError(f"cannot read {args.facts}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(str(exc)) from None


def cmd_battery(args) -> int:
    try:
        spec = parse_spectrum_text(args.spectrum)
    except SpectrumSyntaxError as exc:
        raise InputError(f"bad spectrum: {exc}") from None
    report = run_battery(spec, _facts(args))
    _emit(args, report.record(), report.render())
    return EXIT_OK


def cmd_table2(args) -> int:
    from .tables import table2_report, table2_rows

    facts = _facts(args)
    if args.json:
        print(json.dumps([r.record() for r in table2_rows(facts)], indent=2))
    else:
        print(table2_report(facts))
    return EXIT_OK


def _d_range(text: str) -> range:
    try:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    except ValueError:
        raise InputError(f"bad --d-range {text!r}, expected A..B") from None


def cmd_table3(args) -> int:
    from .tables import table3_report, table3_rows

    facts = _facts(args)
    dr = _d_range(args.d_range)
    try:
        if args.json:
            print(json.dumps([r.record() for r in table3_rows(dr, args.lambda0, facts)], indent=2))
        else:
            print(table3_report(dr, args.lambda0, facts))
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .enumeration import class_records, write_results

    try:
        records = class_records(args.n, allow_large=args.long)
    except PreconditionError as exc:
        raise InputError(f"{exc} (use --long for larger orders)") from None
    if args.output:
        write_results(records, args.output)
    rec = {
        "n": args.n,
        "classes": len(records),
        "records": [
            {"representative": r.line().split()[0], "spectrum": r.cls.spectrum.render(), "witnesses": r.witnesses,
             "class_size": r.cls.class_size}
            for r in records
        ],
    }
    lines = [f"{len(records)} classes"]
    if args.verbose:
        lines += [f"  {r.line()}" for r in records]
    _emit(args, rec, "\n".join(lines))
    return EXIT_OK


def cmd_fixtures(args) -> int:
    os.makedirs(args.emit, exist_ok=True)
    written = []
    for name, s in fixtures().items():
        path = os.path.join(args.emit, f"{name}.smat")
        write_smat(s, path)
        written.append(path)
    _emit(args, {"written": written}, "\n".join(written))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equiangular", description="Exact analysis of Seidel matrices and equiangular lines.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, facts=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if facts:
            sp.add_argument("--facts", help="facts file (default: the shipped one)")

    a = sub.add_parser("analyze", help="spectrum and invariants of a matrix")
    a.add_argument("--input", required=True)
    a.add_argument("--format", choices=("smat", "edges"))
    common(a)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("search-regular", help="all switchings with a regular underlying graph")
    r.add_argument("--input", required=True)
    r.add_argument("--format", choices=("smat", "edges"))
    r.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    r.add_argument("--threads", type=int, default=default_workers())
    common(r)
    r.set_defaults(func=cmd_search_regular)

    b = sub.add_parser("battery", help="necessary conditions for a candidate spectrum")
    b.add_argument("--spectrum", required=True)
    common(b, facts=True)
    b.set_defaults(func=cmd_battery)

    t2 = sub.add_parser("table2", help="verdicts for the three-eigenvalue candidates")
    common(t2, facts=True)
    t2.set_defaults(func=cmd_table2)

    t3 = sub.add_parser("table3", help="spectra forced at the relative bound")
    t3.add_argument("--d-range", default="14..23")
    t3.add_argument("--lambda0", type=int, default=-5)
    common(t3, facts=True)
    t3.set_defaults(func=cmd_table3)

    e = sub.add_parser("enumerate", help="switching classes of order n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--long", action="store_true", help="allow n = 7 and 8")
    e.add_argument("--output", help="append class records to this file")
    e.add_argument("--verbose", action="store_true")
    common(e)
    e.set_defaults(func=cmd_enumerate)

    f = sub.add_parser("fixtures", help="write the fixture matrices in smat format")
    f.add_argument("--emit", required=True, metavar="DIR")
    common(f)
    f.set_defaults(func=cmd_fixtures)
    return p


def _join_values(argv: list[str]) -> list[str]:
    """Glue ``--spectrum -5^4,...`` into one token so argparse does not read it as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--spectrum" and i + 1 < len(argv):
            out.append(f"--spectrum={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc} ({exc.nodes} nodes)", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
