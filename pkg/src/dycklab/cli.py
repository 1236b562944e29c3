"""Command-line interface.

Exit codes: 0 success or pass, 1 check failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional, Sequence

from . import __version__
from .bijections import two_column_catalan
from .insertion import (
    DualFactorization,
    DyckTableau,
    RecordingTableau,
    TableauError,
    extract_factorization,
    insert_factorization,
)
from .seqcore import (
    DomainError,
    QtPoly,
    ResourceError,
    SeqParseError,
    brute_force_catalan,
    classify,
    epsilon,
    format_seq,
    parse_seq,
    skeleton_tests,
    statistics,
)
from .skeleton import flat_middle_scan, low_deficit_catalan, make_strings, partition_formula
from .symfun import AFFINE, DUAL, TruncPoly, dyck_symmetric_function, schur, verify_schur_expansion
from .verify import (
    SuiteBudget,
    east7_window_check,
    limited_nonzero_check,
    prefix_form_check,
    residual_check,
    roundtrip_suites,
)
from .verify.report import resolve_threads

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("text", "tsv", "json")


# ---------------------------------------------------------------------------
# parsing helpers

def _split_parse(text: str, sep: str) -> list[tuple[int, ...]]:
    """Parse `seq<sep>seq...`, keeping error positions absolute."""
    out = []
    start = 0
    for piece in text.split(sep):
        try:
            out.append(parse_seq(piece))
        except SeqParseError as exc:
            raise SeqParseError(text, start + exc.pos, exc.reason) from None
        start += len(piece) + len(sep)
    return out


def _emit(out, fmt: str, payload: dict, text_lines: list[str], tsv_rows: Optional[list[list]] = None) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "tsv" and tsv_rows is not None:
        for row in tsv_rows:
            out.write("\t".join("" if c is None else str(c) for c in row) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _poly_rows(p: QtPoly) -> list[list]:
    return [["q_exp", "t_exp", "coeff"]] + [[a, b, c] for a, b, c in p.sorted_terms()]


def _truncpoly_rows(p: TruncPoly) -> list[list]:
    keys = sorted(p.terms, key=lambda k: (-sum(k), tuple(-e for e in k)))
    return [[f"x{i}" for i in range(p.num_vars)] + ["coeff"]] + [list(k) + [p.terms[k]] for k in keys]


def _truncpoly_text(p: TruncPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for row in _truncpoly_rows(p)[1:]:
        k, c = row[:-1], row[-1]
        mono = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(k) if e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# commands

def cmd_stats(args, out) -> int:
    s = args.seq
    st = statistics(s)
    cls = classify(s)
    sk = skeleton_tests(s) if cls.ordinary_dyck else None
    payload = {
        "seq": list(s),
        "area": st.area, "di": st.di, "nv": st.nv, "dinv": st.dinv, "defc": st.defc,
        "affine": cls.affine, "dyck": cls.ordinary_dyck, "dual": cls.dual, "reverse": cls.reverse,
        "full_skeleton": None if sk is None else sk.full,
        "special_skeleton": None if sk is None else sk.special,
        "m_skeleton": None if sk is None else sk.m_skeleton,
    }
    keys = [k for k in payload if k != "seq"]
    lines = [f"seq\t{format_seq(s)}"] + [f"{k}\t{_flag(payload[k])}" for k in keys]
    rows = [["seq"] + keys, [format_seq(s)] + [_flag(payload[k]) for k in keys]]
    _emit(out, args.format, payload, lines, rows)
    return EXIT_OK


def _flag(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


CATALAN_MODES: dict[str, Callable[[int], QtPoly]] = {
    "brute": lambda n: brute_force_catalan(n),
    "two-column": lambda n: two_column_catalan(n),
    "skeleton": lambda n: low_deficit_catalan(n),
    "partition": lambda n: partition_formula(n),
}


def cmd_catalan(args, out) -> int:
    poly = CATALAN_MODES[args.mode](args.n)
    payload = {"n": args.n, "mode": args.mode, "terms": poly.to_json()}
    _emit(out, args.format, payload, [str(poly)], _poly_rows(poly))
    return EXIT_OK


def cmd_strings(args, out) -> int:
    recs = make_strings(args.n, args.defc)
    if not recs:
        payload = {"n": args.n, "defc": args.defc, "strings": []}
        _emit(out, args.format, payload, ["(no strings)"], [["area"]])
        return EXIT_OK
    marks = _string_marks(recs) if args.annotate else None
    areas = sorted({sum(s) for r in recs for s in r.chain})
    header = ["area"] + [f"string {i}" for i in range(1, len(recs) + 1)]
    rows = [header]
    for a in areas:
        row: list = [a]
        for ci, r in enumerate(recs):
            cell = next((s for s in r.chain if sum(s) == a), None)
            text = None if cell is None else format_seq(cell)
            if text and marks and marks.get((ci, cell)):
                text += "^" + marks[(ci, cell)]
            row.append(text)
        rows.append(row)
    payload = {
        "n": args.n, "defc": args.defc,
        "strings": [{"start": list(r.start), "chain": [list(s) for s in r.chain], "levels": list(r.levels)}
                    for r in recs],
    }
    total = sum(len(r.chain) for r in recs)
    lines = [f"n={args.n} defc={args.defc}: {len(recs)} strings, {total} sequences"]
    widths = [max(len("" if row[i] is None else str(row[i])) for row in rows) for i in range(len(header))]
    for row in rows:
        lines.append("  ".join(("" if c is None else str(c)).ljust(w) for c, w in zip(row, widths)).rstrip())
    _emit(out, args.format, payload, lines, rows)
    return EXIT_OK


def _string_marks(recs) -> dict:
    """5/7 on both cells of a level-5/7 step, e for the non-special full skeleton."""
    marks: dict = {}
    for ci, r in enumerate(recs):
        for k, s in enumerate(r.chain):
            lv = set()
            if k < len(r.levels):
                lv.add(r.levels[k])
            if k:
                lv.add(r.levels[k - 1])
            if 7 in lv:
                marks[(ci, s)] = "7"
            elif 5 in lv:
                marks[(ci, s)] = "5"
            elif len(s) >= 4 and s == epsilon(len(s)):
                marks[(ci, s)] = "e"
    return marks


def cmd_tableau(args, out) -> int:
    if args.tableau_cmd == "insert":
        fac = DualFactorization(tuple(_split_parse(args.factors, "|")))
        p, q = insert_factorization(fac)
    else:
        p = DyckTableau(tuple(_split_parse(args.p, ";")))
        q = RecordingTableau(tuple(_split_parse(args.q, ";")))
        fac = extract_factorization(p, q)
    payload = {
        "factors": [list(f) for f in fac.factors],
        "P": [list(r) for r in p.rows],
        "Q": [list(r) for r in q.rows],
    }
    lines = [f"factors\t{fac}",
             "P\t" + ";".join(format_seq(r) for r in p.rows),
             "Q\t" + ";".join(format_seq(r) for r in q.rows)]
    rows = [["row", "P", "Q"]] + [[i, format_seq(pr), format_seq(qr)] for i, (pr, qr) in enumerate(zip(p.rows, q.rows))]
    _emit(out, args.format, payload, lines, rows)
    return EXIT_OK


def cmd_symfun(args, out) -> int:
    if args.symfun_cmd == "schur":
        poly = schur(args.shape, args.vars)
        payload = {"shape": list(args.shape), "vars": args.vars,
                   "terms": [r for r in _truncpoly_rows(poly)[1:]]}
        _emit(out, args.format, payload, [_truncpoly_text(poly)], _truncpoly_rows(poly))
        return EXIT_OK
    if args.symfun_cmd == "ds":
        poly = dyck_symmetric_function(args.multiset, args.d, args.mode, args.vars)
        payload = {"multiset": list(args.multiset), "d": args.d, "mode": args.mode, "vars": args.vars,
                   "terms": [r for r in _truncpoly_rows(poly)[1:]]}
        _emit(out, args.format, payload, [_truncpoly_text(poly)], _truncpoly_rows(poly))
        return EXIT_OK
    rep = verify_schur_expansion(args.multiset, args.d, args.vars, args.mode)
    payload = {"multiset": list(args.multiset), "d": args.d, "mode": args.mode, "vars": args.vars,
               "ok": rep.ok, "lhs_terms": rep.lhs_terms, "rhs_terms": rep.rhs_terms,
               "tableaux": rep.tableaux,
               "first_difference": None if rep.first_difference is None else list(map(_jsonish, rep.first_difference))}
    lines = [f"tableaux\t{rep.tableaux}", f"lhs_terms\t{rep.lhs_terms}", f"rhs_terms\t{rep.rhs_terms}"]
    if rep.first_difference is not None:
        lines.append(f"first difference\t{rep.first_difference}")
    lines.append(f"status: {'PASS' if rep.ok else 'FAIL'}")
    rows = [["ok", "tableaux", "lhs_terms", "rhs_terms"], [rep.ok, rep.tableaux, rep.lhs_terms, rep.rhs_terms]]
    _emit(out, args.format, payload, lines, rows)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _jsonish(v):
    return list(v) if isinstance(v, tuple) else v


CHECK_ORDER = ("residual", "prefix", "limited", "east7")


def cmd_check(args, out) -> int:
    threads = resolve_threads(args.threads)
    runners = {
        "residual": lambda: residual_check(),
        "prefix": lambda: prefix_form_check(threads=threads),
        "limited": lambda: limited_nonzero_check(threads=threads),
        "east7": lambda: east7_window_check(fast=args.fast, threads=threads),
        "suites": lambda: roundtrip_suites(SuiteBudget.tiny() if args.fast else SuiteBudget()),
    }
    names = CHECK_ORDER if args.which == "all" else (args.which,)
    reports = [runners[name]() for name in names]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        out.write(json.dumps({"status": "pass" if ok else "fail",
                              "reports": [r.to_json() for r in reports]}, sort_keys=True) + "\n")
    elif args.format == "tsv":
        out.write("check\tlabel\tvalue\n")
        for r in reports:
            for k, v in r.counters.items():
                out.write(f"{r.name}\t{k}\t{format_seq(v) if isinstance(v, tuple) else ('--' if v is None else v)}\n")
            out.write(f"{r.name}\tstatus\t{'PASS' if r.ok else 'FAIL'}\n")
    else:
        out.write("\n\n".join(r.render() for r in reports) + "\n")
        if len(reports) > 1:
            out.write(f"status: {'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scan(args, out) -> int:
    rep = flat_middle_scan(args.n)
    rows = [["d", "j_lo", "j_hi", "flat", "value", "special_skeletons", "range"]]
    for r in rep.rows:
        rows.append([r.d, r.band[0], r.band[1], "yes" if r.flat else "no",
                     "-" if not r.values else (r.values[0] if r.flat else ",".join(map(str, r.values))),
                     "-" if r.special_count is None else r.special_count,
                     "remark" if r.in_remark_range else "conjecture"])
    payload = {"n": args.n, "rows": [
        {"d": r.d, "band": list(r.band), "values": list(r.values), "flat": r.flat,
         "special_skeletons": r.special_count, "remark_range": r.in_remark_range} for r in rep.rows],
        "conjecture_failures": rep.conjecture_failures()}
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    fails = rep.conjecture_failures()
    lines.append("conjecture range: " + ("flat everywhere" if not fails else f"not flat for d in {fails}"))
    _emit(out, args.format, payload, lines, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _int_seq(text: str) -> tuple[int, ...]:
    try:
        return parse_seq(text)
    except SeqParseError as exc:
        raise argparse.ArgumentTypeError(_parse_message(exc)) from None


def _parse_message(exc: SeqParseError) -> str:
    return f"{exc.reason} at position {exc.pos}\n  {exc.text}\n  {' ' * exc.pos}^"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dycklab", description="q,t-Catalan combinatorics and finite checkers")
    parser.add_argument("--version", action="version", version=f"dycklab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p: argparse.ArgumentParser, default: str = "text") -> None:
        p.add_argument("--format", choices=FORMATS, default=default)

    p = sub.add_parser("stats", help="statistics and classification of one sequence")
    p.add_argument("seq", type=_int_seq, help="sequence literal, e.g. [0,1,1,0]")
    fmt(p)

    p = sub.add_parser("catalan", help="C_n(q,t) by one of four methods")
    p.add_argument("--mode", choices=tuple(CATALAN_MODES), default="brute")
    p.add_argument("--n", type=int, required=True)
    fmt(p)

    p = sub.add_parser("strings", help="lower-half up-strings of a deficit slice")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--defc", type=int, required=True)
    p.add_argument("--annotate", action="store_true",
                   help="mark level-5/7 step cells with ^5/^7 and the non-special skeleton with ^e")
    fmt(p)

    p = sub.add_parser("tableau", help="tableau/factorization bijection")
    tsub = p.add_subparsers(dest="tableau_cmd", required=True)
    q = tsub.add_parser("insert", help="factorization -> (P, Q)")
    q.add_argument("factors", help="dual factors separated by '|', e.g. [0,2,4]|[1,3]")
    fmt(q)
    q = tsub.add_parser("extract", help="(P, Q) -> factorization")
    q.add_argument("--p", required=True, help="rows top to bottom separated by ';'")
    q.add_argument("--q", required=True, help="recording rows separated by ';'")
    fmt(q)

    p = sub.add_parser("symfun", help="Dyck symmetric functions and Schur expansions")
    ssub = p.add_subparsers(dest="symfun_cmd", required=True)
    q = ssub.add_parser("ds", help="DS (dual) or DS* (affine) in N variables")
    q.add_argument("--multiset", type=_int_seq, required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--mode", choices=(AFFINE, DUAL), default=DUAL)
    q.add_argument("--vars", type=int, default=2)
    fmt(q)
    q = ssub.add_parser("schur", help="Schur polynomial in N variables")
    q.add_argument("--shape", type=_int_seq, required=True)
    q.add_argument("--vars", type=int, default=2)
    fmt(q)
    q = ssub.add_parser("verify", help="check the Schur expansion of one DS/DS*")
    q.add_argument("--multiset", type=_int_seq, required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--mode", choices=(AFFINE, DUAL), default=DUAL)
    q.add_argument("--vars", type=int, default=3)
    fmt(q)

    p = sub.add_parser("check", help="finite checkers with golden counts")
    p.add_argument("which", choices=CHECK_ORDER + ("suites", "all"))
    p.add_argument("--fast", action="store_true", help="sampled East7 search; small suite budget")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: $DYCKLAB_THREADS or 1)")
    fmt(p)

    p = sub.add_parser("scan", help="experimental scans")
    p.add_argument("which", choices=("flat-middle",))
    p.add_argument("--n", type=int, required=True)
    fmt(p)
    return parser


COMMANDS = {
    "stats": cmd_stats, "catalan": cmd_catalan, "strings": cmd_strings, "tableau": cmd_tableau,
    "symfun": cmd_symfun, "check": cmd_check, "scan": cmd_scan,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except SeqParseError as exc:
        err.write(f"dycklab: error: {_parse_message(exc)}\n")
        return EXIT_USAGE
    except (DomainError, TableauError, ResourceError, ValueError) as exc:
        err.write(f"dycklab: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
