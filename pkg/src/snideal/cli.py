"""Command-line interface: ``snideal ring | classify | table | verify``.

Exit codes: 0 success, 1 violations or oracle mismatches, 2 bad input,
3 the ideal meets the multiplicative set (classify only).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from itertools import combinations

from sympy import primefactors

from .classify import (
    ImproperIdealError,
    NotDisjointError,
    Verdict,
    classify_ideal,
    zn_brute_divisors,
    zn_fast_classify,
)
from .ideals import Ideal, MultSet, ideal_from_json, ideal_generate, multset_close, multset_from_json
from .rings import FiniteRing, RingError, build_ring, describe_spec, ring_predicates, spec_from_json

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NOT_DISJOINT = 0, 1, 2, 3
# element lists longer than this are summarised by their size in ring summaries
LIST_MAX = 256


class InputError(Exception):
    pass


def _fmt_set(elements) -> str:
    return "{" + ", ".join(str(x) for x in elements) + "}"


def _ints(raw: list[str] | None) -> list[int]:
    out: list[int] = []
    for chunk in raw or []:
        for part in chunk.replace(",", " ").split():
            try:
                out.append(int(part))
            except ValueError:
                raise InputError(f"not an integer: {part!r}") from None
    return out


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _ring(args) -> FiniteRing:
    given = [x for x in (args.zn, args.spec, args.spec_json) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --zn, --spec FILE, --spec-json TEXT")
    if args.zn is not None:
        doc = {"zn": args.zn}
    elif args.spec is not None:
        doc = _load_json(args.spec)
    else:
        try:
            doc = json.loads(args.spec_json)
        except json.JSONDecodeError as exc:
            raise InputError(f"--spec-json is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and "zn" in doc and isinstance(doc["zn"], int) and doc["zn"] < 2:
        raise InputError("Z_n needs n >= 2")
    return build_ring(spec_from_json(doc))


def _add_ring_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("ring")
    g.add_argument("--zn", type=int, help="the ring Z_n")
    g.add_argument("--spec", metavar="FILE", help="JSON ring spec file (see docs/schema.md)")
    g.add_argument("--spec-json", metavar="TEXT", help="inline JSON ring spec")


# ---------------------------------------------------------------------------
# ring
# ---------------------------------------------------------------------------


def cmd_ring(args) -> int:
    r = _ring(args)
    preds = ring_predicates(r)
    units = [int(x) for x in r.units]
    nil = [int(x) for x in r.nil_mask.nonzero()[0]]
    doc = {
        "ring": r.spec.to_json(),
        "name": describe_spec(r.spec),
        "order": r.order,
        "zero": r.zero,
        "one": r.one,
        "units": units,
        "nilradical": nil,
        "field": preds.is_field,
        "von_neumann_regular": preds.is_von_neumann_regular,
        "un_ring": preds.is_un_ring,
        "reduced": preds.is_reduced,
        "local": preds.is_local,
    }
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
        return EXIT_OK

    def listing(xs):
        return _fmt_set(xs) if len(xs) <= LIST_MAX else f"({len(xs)} elements)"

    yes = {True: "true", False: "false"}
    lines = [
        f"ring: {doc['name']}",
        f"order: {r.order}",
        f"units ({len(units)}): {listing(units)}",
        f"nilradical ({len(nil)}): {listing(nil)}",
        f"field: {yes[preds.is_field]}",
        f"von Neumann regular: {yes[preds.is_von_neumann_regular]}",
        f"UN-ring: {yes[preds.is_un_ring]}",
        f"reduced: {yes[preds.is_reduced]}",
        f"local: {yes[preds.is_local]}",
    ]
    print("\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _verdict_text(v: Verdict, relative: bool) -> str:
    if v.holds:
        if relative:
            return "yes (witnesses " + ", ".join(map(str, v.witnesses)) + ")"
        return "yes"
    if v.counterexample is not None:
        a, b = v.counterexample
        return f"no (counterexample ({a}, {b}))"
    return "no"


def cmd_classify(args) -> int:
    r = _ring(args)
    if args.ideal_json:
        i: Ideal = ideal_from_json(_load_json(args.ideal_json), ring=r)
    else:
        i = ideal_generate(r, _ints(args.ideal))
    if args.mult_json:
        s: MultSet = multset_from_json(_load_json(args.mult_json), ring=r)
    else:
        s = multset_close(r, _ints(args.mult))
    if not i.is_proper:
        raise InputError("the ideal is the whole ring; classification needs a proper ideal")
    common = sorted(set(i.elements) & set(s.elements))
    if common:
        msg = f"not disjoint: the ideal meets S in {_fmt_set(common)}"
        if args.format == "json":
            print(json.dumps({"disjoint": False, "meets": common, "ideal": list(i.elements),
                              "multset": list(s.elements)}, sort_keys=True))
        else:
            print(msg)
        return EXIT_NOT_DISJOINT
    c = classify_ideal(i, s)
    if args.format == "json":
        print(json.dumps(c.to_json(), sort_keys=True, indent=2))
        return EXIT_OK
    lines = [
        f"ring: {describe_spec(r.spec)}",
        f"ideal: {_fmt_set(i.elements)}",
        f"S: {_fmt_set(s.elements)}",
        f"S-n-ideal: {_verdict_text(c.s_n, True)}",
        f"n-ideal: {_verdict_text(c.n_ideal, False)}",
        f"prime: {_verdict_text(c.prime, False)}",
        f"primary: {_verdict_text(c.primary, False)}",
        f"r-ideal: {_verdict_text(c.r_ideal, False)}",
        f"S-prime: {_verdict_text(c.s_prime, True)}",
        f"S-primary: {_verdict_text(c.s_primary, True)}",
        f"radical: {_fmt_set(c.radical.elements)}",
        f"nilradical: {_fmt_set(c.nilradical.elements)}",
        "s with sI in nilradical: " + (", ".join(map(str, c.nil_annihilating)) or "none"),
    ]
    for w, col in sorted(c.colons.items()):
        lines.append(f"(I:{w}) = {_fmt_set(col.elements)}")
    print("\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def _cofactor_sets(n: int, everything: bool) -> list[tuple[int, ...]]:
    ps = [int(p) for p in primefactors(n)]
    sizes = range(1, len(ps) + 1) if everything else range(1, max(1, len(ps) - 1) + 1)
    return [c for size in sizes for c in combinations(ps, size)]


def _table_rows(ns: list[int], everything: bool, verify: bool) -> list[dict]:
    rows = []
    for n in ns:
        for primes in _cofactor_sets(n, everything):
            fast = zn_fast_classify(n, primes)
            row = {
                "n": n,
                "P": list(primes),
                "regime": fast.regime,
                "rule": fast.rule,
                "s_n_ideals": fast.ideal_labels(),
            }
            if verify:
                row["verified"] = zn_brute_divisors(n, primes) == fast.divisors
            rows.append(row)
    return rows


def _render_table(rows: list[dict], fmt: str, verify: bool) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": 1, "rows": rows}, sort_keys=True, indent=2) + "\n"
    head = ["n", "P", "regime", "rule", "S-n-ideals"] + (["brute force"] if verify else [])

    def cells(row):
        out = [str(row["n"]), "{" + ",".join(map(str, row["P"])) + "}", row["regime"], row["rule"],
               " ".join(row["s_n_ideals"]) or "-"]
        if verify:
            out.append("agree" if row["verified"] else "MISMATCH")
        return out

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        for row in rows:
            w.writerow(cells(row))
        return buf.getvalue()
    body = [cells(row) for row in rows]
    if fmt == "markdown":
        lines = ["| " + " | ".join(head) + " |", "|" + "|".join("---" for _ in head) + "|"]
        lines += ["| " + " | ".join(x.replace("|", "\\|") for x in c) + " |" for c in body]
        return "\n".join(lines) + "\n"
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in [head] + body) + "\n"


def cmd_table(args) -> int:
    if args.n is not None and args.range is not None:
        raise InputError("give --n or --range, not both")
    if args.n is not None:
        ns = [args.n]
    elif args.range is not None:
        lo, hi = args.range
        ns = list(range(lo, hi + 1))
    else:
        raise InputError("give --n N or --range LO HI")
    if not ns or min(ns) < 2:
        raise InputError("n must be at least 2")
    rows = _table_rows(ns, args.all_prime_cofactors, args.verify)
    sys.stdout.write(_render_table(rows, args.format, args.verify))
    if args.verify and not all(row["verified"] for row in rows):
        return EXIT_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    from .theorems import check_ids
    from .theorems.corpus import CorpusSpec
    from .theorems.report import (
        SEARCHES,
        converse_counterexample_search,
        render_json,
        render_text,
        replicate_examples,
        run_check,
    )

    corpus = CorpusSpec()
    if args.corpus:
        try:
            corpus = CorpusSpec.from_json(_load_json(args.corpus))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad corpus spec: {exc}") from None
    if args.max_n is not None:
        if args.max_n < 2:
            raise InputError("--max-n must be at least 2")
        corpus = replace(corpus, zn_check_max=args.max_n)

    wanted = list(args.ids) + list(args.check or [])
    if "all" in wanted:
        wanted = [w for w in wanted if w != "all"]
        wanted = check_ids() + [w for w in wanted if w not in check_ids()]
    known = set(check_ids())
    unknown = [w for w in wanted if w not in known]
    searches = list(args.search or [])
    if "all" in searches:
        searches = list(SEARCHES)
    unknown += [s for s in searches if s not in SEARCHES]
    if unknown:
        print(f"unknown check id(s): {', '.join(unknown)}", file=sys.stderr)
        print(f"known checks: {', '.join(check_ids())}", file=sys.stderr)
        print(f"known searches: {', '.join(SEARCHES)}", file=sys.stderr)
        return EXIT_INPUT
    if not wanted and not searches and not args.examples:
        raise InputError("nothing to verify: give check ids, 'all', --examples or --search")

    reports = []
    if args.examples:
        reports.append(replicate_examples())
    seen = set()
    for cid in wanted:
        if cid not in seen:
            seen.add(cid)
            reports.append(run_check(cid, corpus))
    for name in dict.fromkeys(searches):
        reports.append(converse_counterexample_search(name, corpus))

    if args.format == "json":
        sys.stdout.write(render_json(reports, timing=args.timing, corpus=corpus))
    else:
        sys.stdout.write(render_text(reports, timing=args.timing))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snideal", description="S-n-ideals of finite commutative rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", help="summarise a ring")
    _add_ring_args(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("classify", help="classify an ideal relative to a multiplicative set")
    _add_ring_args(p)
    p.add_argument("--ideal", nargs="*", metavar="GEN", help="ideal generators (integers)")
    p.add_argument("--ideal-json", metavar="FILE", help="ideal as JSON {gens|elements}")
    p.add_argument("--mult", nargs="*", metavar="SEED", help="seeds of S (1 is always added)")
    p.add_argument("--mult-json", metavar="FILE", help="multiplicative set as JSON {seed|elements}")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", help="closed-form S-n-ideal table for Z_n")
    p.add_argument("--n", type=int)
    p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--all-prime-cofactors", action="store_true",
                   help="every nonempty prime set P, including all primes of n")
    p.add_argument("--verify", action="store_true", help="add a brute-force agreement column")
    p.add_argument("--format", choices=["markdown", "csv", "json", "text"], default="markdown")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run registry checks, worked examples and converse searches")
    p.add_argument("ids", nargs="*", help="check ids, or 'all'")
    p.add_argument("--check", action="append", metavar="ID", help="a check id (repeatable)")
    p.add_argument("--examples", action="store_true", help="replicate the worked examples")
    p.add_argument("--search", action="append", metavar="NAME",
                   help="converse counterexample search (repeatable, or 'all')")
    p.add_argument("--max-n", type=int, help="largest n for the Z_n oracle checks")
    p.add_argument("--corpus", metavar="FILE", help="JSON corpus spec")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--timing", action="store_true", help="include elapsed times (output then varies)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotDisjointError as exc:
        print(f"not disjoint: {exc}", file=sys.stderr)
        return EXIT_NOT_DISJOINT
    except (InputError, RingError, ImproperIdealError, ValueError, KeyError, IndexError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
