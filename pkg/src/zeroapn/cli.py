"""Command-line front end: ``zeroapn <command> ...``.

Every command prints a human report by default or one JSON record per
line with ``--json``; the exit status is 0 exactly when all checks passed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import ccz, diffanalysis, exponents, gf2poly, multivar, resultant
from .gf2n import MAX_N, make_ctx

SCAN_GUARD_N = 14
TABLE1_MAX_N = 12


@dataclass
class Verdict:
    n: int
    d_raw: int
    d_reduced: int
    d_canonical: int
    uniformity: int
    is_apn: bool
    is_zero_apn: bool
    matched_rows: list[int] = field(default_factory=list)
    coset_leaders: list[int] = field(default_factory=list)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ZEROAPN_THREADS", "1")))
    except ValueError:
        return 1


def _modulus(text: str | None, n: int):
    if text is None:
        return None
    m = gf2poly.parse(text)
    if m.degree != n:
        raise ValueError(f"modulus {m} does not have degree {n}")
    return m


def row_classes(n: int, manifest=None) -> dict[int, set[int]]:
    """Canonical classes generated by each row at n."""
    rows = manifest or exponents.load_manifest()
    out = {}
    for rid in sorted(rows):
        out[rid] = {_canonical(n, d) for d in exponents.family_members(rid, n, rows)}
    return out


def _canonical(n: int, d: int) -> int:
    q1 = (1 << n) - 1
    return d if d % q1 == 0 else ccz.canonical_rep(n, d)


def verdict(n: int, d: int, modulus=None, classes: dict[int, set[int]] | None = None) -> Verdict:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in [1, {MAX_N}]")
    if d < 1:
        raise ValueError("d must be positive")
    ctx = make_ctx(n, modulus)
    dr = diffanalysis.reduce_exponent(n, d)
    canon = _canonical(n, dr)
    u = diffanalysis.uniformity(ctx, dr)
    if classes is None:
        classes = row_classes(n) if n <= TABLE1_MAX_N else {}
    matched = [rid for rid, cl in classes.items() if canon in cl]
    leaders = ccz.ccz_class(n, dr).coset_leaders() if dr % ((1 << n) - 1) else [dr]
    return Verdict(
        n=n,
        d_raw=d,
        d_reduced=dr,
        d_canonical=canon,
        uniformity=u,
        is_apn=u == 2,
        is_zero_apn=diffanalysis.is_zero_apn(ctx, dr),
        matched_rows=matched,
        coset_leaders=leaders,
    )


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _verdict_text(v: Verdict) -> str:
    rows = ",".join(map(str, v.matched_rows)) or "-"
    return (
        f"n={v.n} d={v.d_raw} reduced={v.d_reduced} canonical={v.d_canonical} "
        f"uniformity={v.uniformity} apn={v.is_apn} zero_apn={v.is_zero_apn} rows={rows}"
    )


def cmd_analyze(args) -> int:
    v = verdict(args.n, args.d, _modulus(args.modulus, args.n))
    _emit(args, dataclasses.asdict(v), _verdict_text(v))
    return 0


def cmd_scan(args) -> int:
    n = args.n
    if n > SCAN_GUARD_N and not args.force:
        print(f"scan of n={n} exceeds the guard n <= {SCAN_GUARD_N}; pass --force", file=sys.stderr)
        return 2
    modulus = _modulus(args.modulus, n)
    classes = row_classes(n) if n <= TABLE1_MAX_N else {}
    reps = [c.canonical for c in ccz.all_classes(n)]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        verdicts = list(pool.map(lambda d: verdict(n, d, modulus, classes), reps))
    counts = {"apn": 0, "zero_apn_not_apn": 0, "neither": 0}
    for v in verdicts:
        kind = "apn" if v.is_apn else "zero_apn_not_apn" if v.is_zero_apn else "neither"
        counts[kind] += 1
        if args.all or kind == "zero_apn_not_apn":
            rec = dataclasses.asdict(v)
            rec["kind"] = kind
            leaders = ",".join(map(str, v.coset_leaders))
            _emit(args, rec, f"{kind:17s} {_verdict_text(v)} leaders={leaders}")
    _emit(args, {"n": n, "summary": counts}, f"summary n={n} " + " ".join(f"{k}={c}" for k, c in counts.items()))
    return 0


def table1_records(n_min: int, n_max: int, manifest=None) -> list[dict]:
    """Cross-check every row against its listed examples for n in range.

    A listed (d, n) passes when its CCZ class is generated by the row at n,
    and x^d is 0-APN but not APN.  Generated non-APN classes that are not
    listed are reported as ``extra`` without failing."""
    rows = manifest or exponents.load_manifest()
    records = []
    for rid in sorted(rows):
        row = rows[rid]
        checked = row.check
        any_n = False
        for n in range(n_min, n_max + 1):
            members = exponents.family_members(rid, n, rows)
            listed = row.example_exponents(n)
            if not members and not listed:
                continue
            any_n = True
            ctx = make_ctx(n)
            gen = {}
            for d in members:
                c = _canonical(n, d)
                if c not in gen:
                    gen[c] = not diffanalysis.is_apn(ctx, d)
            nonapn = {c for c, keep in gen.items() if keep}
            problems = []
            listed_classes = set()
            for d in listed:
                c = _canonical(n, d)
                listed_classes.add(c)
                if c not in gen:
                    problems.append(f"listed d={d} (class {c}) not generated")
                if not diffanalysis.is_zero_apn(ctx, d):
                    problems.append(f"listed d={d} is not 0-APN")
                if diffanalysis.is_apn(ctx, d):
                    problems.append(f"listed d={d} is APN")
            unsound = sorted(d for d in members if not diffanalysis.is_zero_apn(ctx, d))
            if unsound:
                problems.append(f"generated exponents not 0-APN: {unsound[:8]}")
            extra = sorted(nonapn - listed_classes)
            records.append({
                "row": rid,
                "n": n,
                "checked": checked,
                "generated": sorted(nonapn),
                "listed": sorted(listed_classes),
                "problems": problems,
                "extra": extra,
                "ok": not problems or not checked,
            })
        if not any_n:
            records.append({"row": rid, "n": None, "checked": checked, "status": "n/a", "ok": True})
    return records


def cmd_table1(args) -> int:
    if args.n_max > TABLE1_MAX_N:
        print(f"n_max must be at most {TABLE1_MAX_N}", file=sys.stderr)
        return 2
    manifest = exponents.load_manifest(args.manifest) if args.manifest else None
    failures = 0
    for rec in table1_records(args.n_min, args.n_max, manifest):
        if rec.get("status") == "n/a":
            _emit(args, rec, f"row {rec['row']:2d}: n/a")
            continue
        if not rec["ok"]:
            failures += 1
        tag = "ok" if not rec["problems"] else "DIFF" if rec["checked"] else "info"
        text = f"row {rec['row']:2d} n={rec['n']:2d} {tag:4s} classes={rec['generated']}"
        if rec["problems"]:
            text += " | " + "; ".join(rec["problems"])
        if rec["extra"]:
            text += f" | unlisted={rec['extra']}"
        _emit(args, rec, text)
    _emit(args, {"summary": {"failures": failures}}, f"table1 {args.n_min}..{args.n_max}: {failures} failing row/n pairs")
    return 1 if failures else 0


def _load_systems(args) -> list[multivar.ConjugateSystem]:
    if args.system_file:
        return [multivar.load_system(p) for p in args.system_file]
    ids = multivar.builtin_ids() if args.theorem == "all" else [args.theorem]
    systems = [multivar.builtin_system(t) for t in ids]
    if args.theorem == "all" and not args.heavy:
        systems = [s for s in systems if not s.heavy]
    return systems


def cmd_symbolic(args) -> int:
    status = 0
    for sys_ in _load_systems(args):
        start = time.perf_counter()
        report = multivar.run_plan(sys_, args.method)
        bad = multivar.check_goldens(sys_, report)
        if args.cross_check:
            other = multivar.run_plan(sys_, "interp" if args.method == "bareiss" else "bareiss")
            if other.final != report.final or dict(other.intermediates) != dict(report.intermediates):
                bad.append("method-disagreement")
        elapsed = time.perf_counter() - start
        rec = {
            "theorem": sys_.theorem_id,
            "order": report.order,
            "cofactors": [[lab, str(c)] for lab, c in report.cofactors],
            "final_factors": str(report.final_factors) if report.final_factors else str(report.final),
            "candidate_subfields": sorted(report.candidate_subfields),
            "mismatches": bad,
            "ok": not bad,
        }
        if not args.json:
            print(f"theorem {sys_.theorem_id}: eliminate {' then '.join(report.order)} ({elapsed:.2f}s)")
            for lab, c in report.cofactors:
                print(f"  divided {lab} by {c}")
            print(f"  final = {rec['final_factors']}")
            print(f"  candidate subfield degrees: {rec['candidate_subfields']}")
            print(f"  {'ok' if not bad else 'MISMATCH ' + ', '.join(bad)}")
        else:
            print(json.dumps(rec, sort_keys=True))
        if bad:
            status = 1
    return status


def cmd_factor(args) -> int:
    p = gf2poly.parse(args.poly)
    f = gf2poly.factor(p)
    _emit(args, {"poly": str(p), "factors": [[str(q), m] for q, m in f]}, f"{p} = {f}")
    return 0


def cmd_resultant(args) -> int:
    f, g = multivar.MultiPoly.parse(args.f), multivar.MultiPoly.parse(args.g)
    if f.is_univariate("x") and g.is_univariate("x") and args.var == "x":
        r = resultant.res_scalar(f.to_bitpoly(), g.to_bitpoly())
        _emit(args, {"resultant": r}, str(r))
        return 0
    r = multivar.resultant(f, g, args.var, args.method)
    text = str(r)
    rec = {"resultant": text}
    if r.is_univariate("x") and not r.is_zero():
        fac = gf2poly.factor(r.to_bitpoly())
        rec["factors"] = str(fac)
        text += f"\n= {fac}"
    _emit(args, rec, text)
    return 0


def cmd_ccz(args) -> int:
    cls = ccz.ccz_class(args.n, args.d)
    rec = {
        "n": args.n,
        "d": args.d,
        "canonical": cls.canonical,
        "members": list(cls.members),
        "coset_leaders": cls.coset_leaders(),
    }
    text = f"n={args.n} d={args.d} canonical={cls.canonical} leaders={cls.coset_leaders()}"
    status = 0
    if args.other is not None:
        eq = ccz.are_ccz_equiv(args.n, args.d, args.other)
        rec["equivalent_to"] = {"d": args.other, "equivalent": eq}
        text += f" equivalent({args.other})={eq}"
        status = 0 if eq else 1
    _emit(args, rec, text)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zeroapn", description="0-APN power functions over GF(2^n)")
    parser.add_argument("--json", action="store_true", help="one JSON record per line")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="one JSON record per line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="differential verdict for x^d over GF(2^n)")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--modulus", help="irreducible modulus (text or 0x hex)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan", parents=[common], help="classify every CCZ class of exponents")
    p.add_argument("n", type=int)
    p.add_argument("--force", action="store_true", help=f"allow n > {SCAN_GUARD_N}")
    p.add_argument("--all", action="store_true", help="print every class, not only 0-APN non-APN ones")
    p.add_argument("--modulus")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("table1", parents=[common], help="reproduce the family table")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("--manifest", help="alternative family manifest (JSON)")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("symbolic", parents=[common], help="run an elimination chain against its goldens")
    p.add_argument("theorem", nargs="?", default="all", help="theorem id such as 3.2, or 'all'")
    p.add_argument("--system-file", action="append", help="load a system manifest from a path")
    p.add_argument("--method", choices=["bareiss", "interp"], default="bareiss")
    p.add_argument("--cross-check", action="store_true", help="also run the other determinant path")
    p.add_argument("--heavy", action="store_true", help="include long chains when running 'all'")
    p.set_defaults(func=cmd_symbolic)

    p = sub.add_parser("factor", parents=[common], help="factor a polynomial over GF(2)")
    p.add_argument("poly")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("resultant", parents=[common], help="resultant of two polynomials")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--var", default="y", help="variable to eliminate (x for scalar resultants)")
    p.add_argument("--method", choices=["bareiss", "interp"], default="bareiss")
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("ccz", parents=[common], help="CCZ class of an exponent")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("other", type=int, nargs="?")
    p.set_defaults(func=cmd_ccz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
