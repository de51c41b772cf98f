"""Cross-validation sweep behind ``distinctcount verify``.

Instances are drawn from a single SplitMix64 stream in a fixed order, so a
report is a pure function of its arguments.  F_q draws: for every field of
order <= max_q, every k <= max_k and draw index j < samples, the
coefficients are uniform; when j is odd the last one is replaced so the
coefficients sum to zero; the target is 0 when j % 4 < 2, else uniform.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import fq, identities, zn
from .algebra import FieldSpec, RingSpec, is_prime, make_field
from .combinatorics import falling_factorial
from .fq import Budgets, Instance
from .rng import SplitMix64


@dataclass
class Report:
    records: list[dict] = field(default_factory=list)
    instances: int = 0
    mismatches: list[dict] = field(default_factory=list)
    checks: dict[str, int] = field(default_factory=dict)

    def add(self, suite: str, instance: dict, counts: dict, ok: bool, keep: str) -> None:
        rec = {"suite": suite, "instance": instance,
               "counts": {m: str(c) for m, c in counts.items()}, "agree": ok}
        self.instances += 1
        self.checks[suite] = self.checks.get(suite, 0) + 1
        if not ok:
            self.mismatches.append(rec)
        if keep == "all" or (keep == "mismatches" and not ok):
            self.records.append(rec)

    def to_json(self) -> dict:
        summary = {"instances": self.instances, "mismatches": len(self.mismatches),
                   "checks": self.checks}
        if self.mismatches:
            first = self.mismatches[0]
            summary["first_mismatch"] = {**first, "reproduce": reproducer(first)}
        return {"records": self.records, "summary": summary}


def field_orders(max_q: int) -> list[FieldSpec]:
    out = []
    for q in range(2, max_q + 1):
        for p in range(2, q + 1):
            if is_prime(p):
                m = round(math.log(q, p))
                if p ** m == q:
                    out.append(make_field(p, m))
                    break
    return out


def _fq_desc(inst: Instance) -> dict:
    return {"field": str(inst.spec), "coeffs": list(inst.coeffs),
            "target": inst.target, "domain": inst.domain}


def reproducer(rec: dict) -> str:
    inst = rec["instance"]
    if "field" in inst:
        head = f"--field {inst['field']}"
    else:
        head = f"--ring {inst['ring']}"
    coeffs = ",".join(map(str, inst["coeffs"]))
    cmd = f"distinctcount count {head} --coeffs {coeffs} --target {inst['target']}"
    if inst.get("domain", "full") != "full":
        cmd += f" --domain {inst['domain']}"
    return cmd


def _engine_counts(inst: Instance, budgets: Budgets, fault: bool) -> dict:
    counts = {
        "brute": fq.count_brute(inst, budgets).count,
        "recurrence": fq.count_recurrence(inst).count,
        "sieve-dp": fq.count_sieve(inst, budgets).count,
        "partition": fq.count_partition_oracle(inst, budgets).count,
    }
    if fault:
        # flip the sign of the correction term
        base = falling_factorial(inst.spec.q, inst.k) // inst.spec.q
        counts["sieve-dp"] = 2 * base - counts["sieve-dp"]
    closed = fq.count_closed_form(inst, budgets)
    if closed is not None:
        counts[closed.method] = closed.count
    return counts


def _units_of(spec, coeffs, b, budgets):
    if not coeffs:
        return 1 if b == 0 else 0
    return fq.count_brute(Instance(spec, coeffs, b, "units"), budgets).count


def sweep_fq(report: Report, rng: SplitMix64, max_q: int, max_k: int, samples: int,
             budgets: Budgets, keep: str, fault: bool = False) -> None:
    for spec in field_orders(max_q):
        q = spec.q
        for k in range(1, max_k + 1):
            for j in range(samples):
                coeffs = [rng.below(q) for _ in range(k)]
                if j % 2:
                    coeffs[-1] = spec.neg(spec.total(coeffs[:-1]))
                b = 0 if j % 4 < 2 else rng.below(q)
                inst = Instance(spec, coeffs, b)
                counts = _engine_counts(inst, budgets, fault)
                report.add("fq-engines", _fq_desc(inst), counts, len(set(counts.values())) == 1, keep)
                _invariants(report, rng, inst, counts["brute"], budgets, keep)


def _invariants(report, rng, inst, n_ab, budgets, keep):
    spec, k, b = inst.spec, inst.k, inst.target
    coeffs = inst.coeffs
    q = spec.q
    desc = _fq_desc(inst)
    total = spec.total(coeffs)

    table = [fq.count_brute(Instance(spec, coeffs, t), budgets).count for t in range(q)]
    report.add("total-mass", desc, {"sum": sum(table), "falling": falling_factorial(q, k)},
               sum(table) == falling_factorial(q, k), keep)

    c = rng.below(q)
    shifted = spec.add(b, spec.mul(total, c))
    report.add("shift-invariance", desc, {"b": n_ab, "shifted": table[shifted]},
               n_ab == table[shifted], keep)
    distinct = set(table) if total else set(table[1:])
    report.add("target-classes", desc, {"distinct-values": len(distinct)}, len(distinct) <= 1, keep)

    lam = 1 + rng.below(q - 1)
    scaled = Instance(spec, [spec.mul(lam, a) for a in coeffs], spec.mul(lam, b))
    n_scaled = fq.count_brute(scaled, budgets).count
    report.add("scale-invariance", desc, {"b": n_ab, "scaled": n_scaled}, n_ab == n_scaled, keep)

    rev = Instance(spec, coeffs[::-1], b)
    n_rev = fq.count_sieve(rev, budgets).count
    report.add("permutation-invariance", desc, {"b": n_ab, "reversed": n_rev}, n_ab == n_rev, keep)

    c = rng.below(q)
    t = spec.sub(b, spec.mul(total, c))
    drops = [coeffs[:i] + coeffs[i + 1:] for i in range(k)]
    decomposed = _units_of(spec, coeffs, t, budgets) + sum(_units_of(spec, d, t, budgets) for d in drops)
    report.add("units-decomposition", desc, {"full": n_ab, "decomposed": decomposed},
               n_ab == decomposed, keep)

    units_inst = Instance(spec, coeffs, b, "units")
    u_brute = fq.count_brute(units_inst, budgets).count
    u_red = fq.count_units(units_inst, budgets).count
    report.add("units-engines", {**desc, "domain": "units"},
               {"brute": u_brute, "units-reduction": u_red}, u_brute == u_red, keep)

    if total == 0 and k >= 1:
        per_drop = [q * _units_of(spec, d, b, budgets) for d in drops]
        report.add("zero-sum-drop", desc, {"full": n_ab, **{f"drop{i}": v for i, v in enumerate(per_drop)}},
                   all(v == n_ab for v in per_drop), keep)
        if k >= 2:
            memo: dict = {}
            ds = [fq.delta(d, spec, memo) for d in drops]
            report.add("drop-independence", desc, {f"d{i}": v for i, v in enumerate(ds)},
                       len(set(ds)) == 1, keep)

    if inst.k <= spec.q:
        exists = fq.exists_distinct(inst, budgets)
        report.add("existence", desc, {"exists": int(exists), "brute": n_ab}, exists == (n_ab > 0), keep)


def sweep_zn(report: Report, rng: SplitMix64, max_n: int, max_k: int, samples: int,
             budgets: Budgets, keep: str) -> None:
    exhaustive_k = min(3, max_k)
    for n in range(1, max_n + 1):
        ring = RingSpec(n)
        for k in range(1, max_k + 1):
            if k <= exhaustive_k:
                tuples = itertools.product(range(n), repeat=k)
            else:
                tuples = ([rng.below(n) for _ in range(k)] for _ in range(samples))
            for coeffs in tuples:
                profile = zn.sieve_profile(coeffs, n, budgets) if k <= n else None
                for b in range(n):
                    inst = zn.ZInstance(ring, coeffs, b)
                    counts = {
                        "brute": zn.count_brute_zn(inst, budgets),
                        "partition": zn.evaluate_profile(profile, b, n) if profile is not None else 0,
                    }
                    bib = zn.count_bibak(inst, budgets)
                    if bib is not None:
                        counts["closed-form:bibak"] = bib
                    report.add("zn-engines", {"ring": n, "coeffs": list(coeffs), "target": b},
                               counts, len(set(counts.values())) == 1, keep)


def sample_bibak_instances(rng: SplitMix64, draws: int, max_n: int = 30, max_k: int = 4):
    """Random instances meeting the subset-gcd condition, alternating target branches.

    Even draws take a target divisible by g = gcd(sum a, n); odd draws take a
    target not divisible by g when g > 1, otherwise any target.
    """
    out = []
    while len(out) < draws:
        n = 2 + rng.below(max_n - 1)
        k = 1 + rng.below(min(max_k, n))
        coeffs = [rng.below(n) for _ in range(k)]
        if not zn.bibak_applies(coeffs, n):
            continue
        g = math.gcd(sum(coeffs), n)
        if len(out) % 2 == 0:
            b = g * rng.below(n // g)
        else:
            pool = [t for t in range(n) if t % g] or list(range(n))
            b = pool[rng.below(len(pool))]
        out.append(zn.ZInstance(RingSpec(n), coeffs, b))
    return out


def sweep_bibak(report: Report, rng: SplitMix64, draws: int, budgets: Budgets, keep: str) -> dict:
    hits = {"divides": 0, "not-divides": 0}
    for inst in sample_bibak_instances(rng, draws):
        g = math.gcd(sum(inst.coeffs), inst.n)
        hits["divides" if inst.target % g == 0 else "not-divides"] += 1
        counts = {
            "brute": zn.count_brute_zn(inst, budgets),
            "partition": zn.count_partition_sieve_zn(inst, budgets),
            "closed-form:bibak": zn.count_bibak(inst, budgets),
        }
        report.add("bibak", {"ring": inst.n, "coeffs": list(inst.coeffs), "target": inst.target},
                   counts, len(set(counts.values())) == 1, keep)
    return hits


def sweep_identities(report: Report, keep: str) -> None:
    for name, (n, bad) in identities.all_checks().items():
        report.add(f"identity:{name}", {"cases": n}, {"failures": len(bad)}, not bad, keep)


def run_verify(max_q: int = 9, max_n: int = 12, max_k: int = 5, samples: int = 200,
               seed: int = 42, bibak_draws: int = 500, budgets: Budgets = fq.DEFAULT_BUDGETS,
               keep: str = "mismatches", fault: bool = False) -> Report:
    rng = SplitMix64(seed)
    report = Report()
    sweep_identities(report, keep)
    sweep_fq(report, rng, max_q, max_k, samples, budgets, keep, fault)
    if max_n > 0:
        sweep_zn(report, rng, max_n, min(max_k, 4), max(1, samples // 4), budgets, keep)
    if bibak_draws > 0:
        sweep_bibak(report, rng, bibak_draws, budgets, keep)
    return report
