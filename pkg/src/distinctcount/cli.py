"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 budget exceeded,
4 verification mismatch.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import fq, zn
from .algebra import FieldError, RingSpec, make_field, parse_field, prime_factors
from .bench import BENCH_METHODS, run_bench
from .combinatorics import BudgetError
from .fq import Budgets, Instance, NotApplicableError
from .verify import run_verify

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _budgets(args) -> Budgets:
    return Budgets(
        brute=args.budget_brute,
        sieve_k=args.budget_sieve_k,
        partition_k=args.budget_partition_k,
        units_k=args.budget_units_k,
    )


def _structure(args):
    if args.field is not None:
        return parse_field(args.field)
    if args.ring < 1:
        raise UsageError("--ring needs a modulus >= 1")
    return RingSpec(args.ring)


def _structure_json(st) -> dict:
    if isinstance(st, RingSpec):
        return {"kind": "ring", "n": st.n}
    return {"kind": "field", "p": st.p, "m": st.m, "modulus": list(st.modulus), "q": st.q}


def _count_one(st, coeffs, target, domain, method, budgets) -> tuple[int, str]:
    if isinstance(st, RingSpec):
        if domain != "full":
            raise UsageError("--domain units is only defined over fields")
        if method == "recurrence":
            raise UsageError("the recurrence engine is only defined over fields")
        zmethod = "partition" if method == "sieve" else method
        return zn.count_zn(zn.ZInstance(st, coeffs, target), zmethod, budgets)
    res = fq.count(Instance(st, coeffs, target, domain), method, budgets)
    return res.count, res.method


def _build_instance_args(args):
    st = _structure(args)
    coeffs = _ints(args.coeffs)
    if not coeffs:
        raise UsageError("--coeffs must not be empty")
    size = st.q if not isinstance(st, RingSpec) else st.n
    for x in coeffs + [args.target]:
        if not 0 <= x < size:
            raise UsageError(f"element encoding {x} out of range [0, {size})")
    return st, coeffs


def cmd_count(args, out) -> int:
    st, coeffs = _build_instance_args(args)
    n, method = _count_one(st, coeffs, args.target, args.domain, args.method, _budgets(args))
    doc = {"structure": _structure_json(st), "coeffs": coeffs, "target": args.target,
           "domain": args.domain, "method": method, "count": str(n)}
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["method", "count"])
        w.writerow([method, n])
    else:
        out.write(json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    st, coeffs = _build_instance_args(args)
    if args.domain != "full":
        raise UsageError("table is defined for --domain full only")
    budgets = _budgets(args)
    size = st.q if not isinstance(st, RingSpec) else st.n
    if isinstance(st, RingSpec) and args.method in ("auto", "partition", "sieve") and len(coeffs) <= size:
        profile = zn.sieve_profile(coeffs, st.n, budgets)
        rows = [(b, zn.evaluate_profile(profile, b, st.n)) for b in range(size)]
    else:
        rows = [(b, _count_one(st, coeffs, b, "full", args.method, budgets)[0]) for b in range(size)]
    if args.format == "json":
        doc = {"structure": _structure_json(st), "coeffs": coeffs,
               "rows": [{"b": b, "count": str(n)} for b, n in rows]}
        out.write(json.dumps(doc) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["b", "count"])
        w.writerows(rows)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_verify(max_q=args.max_q, max_n=args.max_n, max_k=args.max_k,
                        samples=args.samples, seed=args.seed, bibak_draws=args.bibak_samples,
                        budgets=_budgets(args), keep=args.records, fault=args.inject_fault)
    out.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
    return EXIT_MISMATCH if report.mismatches else EXIT_OK


def _field_of_order(q: int):
    fs = prime_factors(q) if q >= 2 else []
    if len(fs) != 1:
        raise UsageError(f"{q} is not a prime power")
    p = fs[0]
    m = 0
    while p ** m < q:
        m += 1
    return make_field(p, m)


def cmd_census(args, out) -> int:
    spec = parse_field(args.field) if args.field else _field_of_order(args.q)
    n = fq.perm_poly_census(spec, _budgets(args))
    doc = {"structure": _structure_json(spec), "count": str(n)}
    if spec.q <= 7:
        doc["interpolation"] = str(fq.census_by_interpolation(spec))
    out.write(json.dumps(doc) + "\n")
    if "interpolation" in doc and doc["interpolation"] != doc["count"]:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_bench(args, out) -> int:
    spec = parse_field(args.field)
    methods = args.methods.split(",")
    for m in methods:
        if m not in BENCH_METHODS:
            raise UsageError(f"unknown bench method {m!r}")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["method", "k", "millis"])
    counts: dict[int, set] = {}

    def skipped(label, k, exc):
        print(f"skip {label} k={k}: {exc}", file=sys.stderr)

    for label, k, ms, n in run_bench(spec, range(args.min_k, args.max_k + 1), methods, _budgets(args),
                                     args.compare_backends, skipped):
        w.writerow([label, k, f"{ms:.3f}"])
        out.flush()
        counts.setdefault(k, set()).add(n)
    bad = [k for k, vals in counts.items() if len(vals) > 1]
    if bad:
        print(f"engines disagree at k = {bad}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _add_budget_flags(p):
    d = fq.DEFAULT_BUDGETS
    p.add_argument("--budget-brute", type=int, default=d.brute, help="max brute-force steps")
    p.add_argument("--budget-sieve-k", type=int, default=d.sieve_k)
    p.add_argument("--budget-partition-k", type=int, default=d.partition_k)
    p.add_argument("--budget-units-k", type=int, default=d.units_k)


def _add_instance_flags(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--field", help="p, p^m or p^m:c0,...,cm")
    g.add_argument("--ring", type=int, help="modulus n of Z/nZ")
    p.add_argument("--coeffs", required=True, help="comma-separated element encodings")
    p.add_argument("--target", type=int, default=0)
    p.add_argument("--domain", choices=fq.DOMAINS, default="full")
    p.add_argument("--method", choices=fq.METHODS, default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distinctcount",
        description="Count solutions of a_1 x_1 + ... + a_k x_k = b with distinct x_i.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count one instance")
    _add_instance_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="counts for every target")
    _add_instance_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="cross-validate all engines")
    p.add_argument("--max-q", type=int, default=9)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-k", type=int, default=5)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--bibak-samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--records", choices=("all", "mismatches", "none"), default="mismatches")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="permutation polynomials of low degree")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--q", type=int, help="field order (default modulus)")
    g.add_argument("--field", help="explicit field spec")
    p.add_argument("--format", choices=("json",), default="json")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("bench", help="time the engines")
    p.add_argument("--field", default="3^2")
    p.add_argument("--min-k", type=int, default=2)
    p.add_argument("--max-k", type=int, default=16)
    p.add_argument("--methods", default=",".join(BENCH_METHODS))
    p.add_argument("--compare-backends", action="store_true",
                   help="time kernel-backed methods under every available backend")
    p.add_argument("--format", choices=("csv",), default="csv")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, FieldError, NotApplicableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
