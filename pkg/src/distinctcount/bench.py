"""Wall-clock comparison of the counting engines over one field."""
from __future__ import annotations

import itertools
import time

from . import fq, kernels
from .algebra import FieldSpec
from .combinatorics import BudgetError, falling_factorial
from .fq import Budgets, Instance

BENCH_METHODS = ("recurrence", "sieve-dp", "partition", "brute")


def zero_sum_coeffs(spec: FieldSpec, k: int) -> list[int]:
    """First k distinct nonzero elements (lexicographically) summing to 0.

    Falls back to a repeating pattern with the last entry fixed up when no
    distinct choice exists.
    """
    if k <= spec.q - 1 and spec.q <= 64:
        for combo in itertools.combinations(range(1, spec.q), k):
            if spec.total(combo) == 0:
                return list(combo)
    coeffs = [1 + i % (spec.q - 1) for i in range(k - 1)]
    return coeffs + [spec.neg(spec.total(coeffs))]


def _sieve_no_shortcut(inst: Instance, budgets: Budgets) -> int:
    # runs the DP even when k > q, where it must return a zero weight
    w = fq.sieve_weight(inst.coeffs, inst.spec, budgets)
    q = inst.spec.q
    return falling_factorial(q, inst.k) // q + fq.exact_div(fq.nu(inst.target, inst.spec) * w, q)


def _runner(method: str, budgets: Budgets):
    if method == "recurrence":
        return lambda inst: fq.count_recurrence(inst).count
    if method == "sieve-dp":
        return lambda inst: _sieve_no_shortcut(inst, budgets)
    if method == "partition":
        return lambda inst: fq.count_partition_oracle(inst, budgets).count
    if method == "brute":
        return lambda inst: fq.count_brute(inst, budgets).count
    raise ValueError(f"unknown bench method {method!r}")


def run_bench(spec: FieldSpec, k_values, methods=BENCH_METHODS, budgets: Budgets = fq.DEFAULT_BUDGETS,
              compare_backends: bool = False, on_skip=None):
    """Yield (method, k, millis, count).  Methods over budget are skipped via on_skip."""
    kernel_methods = {"sieve-dp", "partition", "brute"}
    for k in k_values:
        inst = Instance(spec, zero_sum_coeffs(spec, k), 0)
        for method in methods:
            variants = [(method, None)]
            if compare_backends and method in kernel_methods:
                variants = [(f"{method}@{b.BACKEND}", b) for b in kernels.backends()]
            for label, backend in variants:
                run = _runner(method, budgets)
                try:
                    t0 = time.perf_counter()
                    if backend is None:
                        n = run(inst)
                    else:
                        with kernels.use(backend):
                            n = run(inst)
                    ms = (time.perf_counter() - t0) * 1000.0
                except BudgetError as exc:
                    if on_skip:
                        on_skip(label, k, exc)
                    continue
                yield label, k, ms, n
