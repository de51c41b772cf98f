"""Acceptance gate.  Every comparison is between exact integers."""
import io
import itertools
import json
import math
import time

import pytest

from distinctcount import fq, identities, zn
from distinctcount.algebra import make_field
from distinctcount.cli import main
from distinctcount.combinatorics import falling_factorial
from distinctcount.fq import Instance, InexactDivisionError
from distinctcount.rng import SplitMix64
from distinctcount.verify import Report, field_orders, sweep_bibak, sweep_fq, sweep_zn


def brute(spec, coeffs, b):
    return fq.count_brute(Instance(spec, list(coeffs), b)).count


def test_cross_method_exactness(criterion):
    t0 = time.perf_counter()
    report = Report()
    sweep_fq(report, SplitMix64(42), max_q=9, max_k=5, samples=200,
             budgets=fq.DEFAULT_BUDGETS, keep="mismatches")
    elapsed = time.perf_counter() - t0
    orders = sorted(s.q for s in field_orders(9))
    engines = report.checks["fq-engines"]
    ok = (orders == [2, 3, 4, 5, 7, 8, 9] and engines == 7 * 5 * 200
          and not report.mismatches and elapsed < 300)
    criterion(1, "all F_q engines agree", ok,
              f"{engines} instances, {report.instances} checks, {len(report.mismatches)} mismatches, {elapsed:.1f}s")
    assert ok, report.mismatches[:3]


def test_all_equal_closed_form(criterion):
    bad, n, branches = [], 0, set()
    for q in (4, 5, 8, 9):
        spec = next(s for s in field_orders(q) if s.q == q)
        for k in range(1, min(q, 6) + 1):
            branches.add(k % spec.p == 0)
            for b in range(q):
                n += 1
                got, want = fq.all_ones_count(spec, k, b), brute(spec, [1] * k, b)
                if got != want:
                    bad.append((q, k, b, got, want))
    f4, f5 = make_field(2, 2), make_field(5)
    anchors = fq.all_ones_count(f4, 2, 0) == 0 and fq.all_ones_count(f5, 5, 0) == 120
    ok = not bad and anchors and branches == {True, False}
    criterion(2, "all-equal coefficients", ok, f"{n} instances, {len(bad)} mismatches")
    assert ok, bad[:5]


def test_two_exceptional_closed_form(criterion):
    bad, n = [], 0
    cases = set()
    boundary = 0
    for q in (3, 4, 5, 8, 9):
        spec = next(s for s in field_orders(q) if s.q == q)
        p = spec.p
        for k in (3, 4, 5):
            for a1, a2 in itertools.product(range(q), repeat=2):
                for b in (0, 1):
                    got, case = fq.two_exceptional_count(spec, a1, a2, k, b)
                    want = brute(spec, [a1, a2] + [1] * (k - 2), b)
                    n += 1
                    cases.add(case)
                    if case == 3 and k % p == 0 and 1 not in (a1, a2) \
                            and (1 - a1) % p + (1 - a2) % p == p:
                        boundary += 1
                    if got != want:
                        bad.append((q, k, a1, a2, b, case, got, want))
    ok = not bad and cases == {1, 2, 3} and boundary > 0
    criterion(3, "two exceptional coefficients", ok,
              f"{n} instances, {boundary} on the equality boundary, {len(bad)} mismatches")
    assert ok, bad[:5]


def test_minimal_zero_sum(criterion):
    bad, n = [], 0
    for p in (2, 3, 5, 7, 11, 13):
        spec = make_field(p)
        for k in range(2, 6):
            for coeffs in itertools.combinations_with_replacement(range(1, p), k):
                sums = fq.subset_sums(coeffs, spec)
                if sums[-1] != 0 or not fq.proper_subset_sums_nonzero(sums):
                    continue
                inst = Instance(spec, list(coeffs), 0)
                closed = fq.count_closed_form(inst)
                formula = falling_factorial(p, k) // p + (-1) ** (k - 1) * math.factorial(k - 1) * (p - 1)
                for b in (0, 1 % p):
                    n += 1
                    got = fq.count_closed_form(Instance(spec, list(coeffs), b)).count
                    if got != brute(spec, coeffs, b):
                        bad.append((p, coeffs, b))
                if closed is None or closed.count != formula:
                    bad.append((p, coeffs, "formula"))
    ok = not bad and n > 0
    criterion(4, "proper subset sums nonzero over F_p", ok, f"{n} instances, {len(bad)} mismatches")
    assert ok, bad[:5]


def test_gcd_precondition_closed_form(criterion):
    report = Report()
    hits = sweep_bibak(report, SplitMix64(42), 500, fq.DEFAULT_BUDGETS, "mismatches")
    ok = not report.mismatches and report.instances == 500 and min(hits.values()) >= 50
    criterion(5, "Z/nZ closed form under the subset-gcd condition", ok,
              f"500 draws, branch hits {hits}, {len(report.mismatches)} mismatches")
    assert ok, report.mismatches[:3]


def test_zn_sieve_unconditional(criterion):
    report = Report()
    sweep_zn(report, SplitMix64(42), max_n=12, max_k=4, samples=50,
             budgets=fq.DEFAULT_BUDGETS, keep="mismatches")
    # every tuple times every target for k <= 3, then 50 sampled tuples per n at k = 4
    exhaustive = sum(n ** (k + 1) for n in range(1, 13) for k in range(1, 4))
    sampled = sum(50 * n for n in range(1, 13))
    ok = not report.mismatches and report.instances == exhaustive + sampled
    criterion(6, "Z/nZ partition sieve vs brute force", ok,
              f"{report.instances} instances, {len(report.mismatches)} mismatches")
    assert ok, report.mismatches[:3]


def test_identity_suite(criterion):
    results = identities.all_checks()
    total = sum(n for n, _ in results.values())
    failures = sum(len(bad) for _, bad in results.values())
    ok = failures == 0 and all(n > 0 for n, _ in results.values())
    criterion(7, "combinatorial identities", ok, f"{len(results)} families, {total} cases, {failures} failures")
    assert ok, {k: bad[:3] for k, (_, bad) in results.items() if bad}


def _degree_of_bijection(values, p):
    # Newton interpolation mod p, independent of the library's Lagrange basis
    coef = list(values)
    for j in range(1, p):
        for i in range(p - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(j, -1, p) % p
    # Horner expansion of the Newton form into monomials
    mono = [0]
    for i in range(p - 1, -1, -1):
        nxt = [0] * (len(mono) + 1)
        for d, c in enumerate(mono):
            nxt[d + 1] = (nxt[d + 1] + c) % p
            nxt[d] = (nxt[d] - i * c) % p
        nxt[0] = (nxt[0] + coef[i]) % p
        mono = nxt
    return max((d for d, c in enumerate(mono) if c), default=-1)


def _hand_census(p):
    n = 0
    for perm in itertools.permutations(range(1, p)):
        if _degree_of_bijection((0,) + perm, p) <= p - 3:
            n += 1
    return n


def test_census(criterion):
    out = io.StringIO()
    rc = main(["census", "--q", "5"], out)
    q5 = json.loads(out.getvalue())
    out = io.StringIO()
    rc7 = main(["census", "--q", "7"], out)
    q7 = json.loads(out.getvalue())
    hand5 = _hand_census(5)
    ok = (rc == 0 and q5["count"] == "4" and hand5 == 4
          and rc7 == 0 and q7["count"] == q7["interpolation"] == str(_hand_census(7)))
    criterion(8, "low-degree permutation polynomial census", ok,
              f"q=5 -> {q5['count']} (enumeration {hand5}), q=7 -> {q7['count']} (interpolation {q7['interpolation']})")
    assert ok


def test_performance(criterion):
    f9 = make_field(3, 2)
    # every subset of the zero vector is zero-sum, so the DP does its full 3^16 work
    coeffs = [0] * 16
    t0 = time.perf_counter()
    w = fq.sieve_weight(coeffs, f9)
    t_sieve = time.perf_counter() - t0

    f17 = make_field(17)
    distinct = list(range(2, 16))
    assert f17.total(distinct) == 0 and len(set(distinct)) == 14
    t0 = time.perf_counter()
    rec = fq.count_recurrence(Instance(f17, distinct, 0)).count
    t_rec = time.perf_counter() - t0
    cross = fq.count_sieve(Instance(f17, distinct, 0)).count

    with pytest.raises(InexactDivisionError):
        fq.exact_div(7, 3)
    ok = w == 0 and t_sieve <= 10 and t_rec <= 10 and rec == cross
    criterion(9, "performance", ok,
              f"sieve k=16 over F_9 {t_sieve:.2f}s (W={w}), recurrence k=14 over F_17 {t_rec:.2f}s, "
              f"division traps armed and silent")
    assert ok
