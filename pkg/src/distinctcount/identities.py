"""Combinatorial identities the counting formulas rest on, checked exhaustively.

Each check returns ``(n_checked, failures)`` where failures is a list of
human-readable strings; an empty list means every case held exactly.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache

from .combinatorics import (
    binomial,
    cycle_histogram,
    cycles_of,
    falling_factorial,
    stirling_first_unsigned,
)


def check_stirling_falling(k_max: int = 12, qs=range(2, 17)):
    """sum_i (-1)^(k-i) c(k, i) q^i == (q)_k."""
    n, bad = 0, []
    for k in range(k_max + 1):
        for q in qs:
            lhs = sum((-1) ** (k - i) * stirling_first_unsigned(k, i) * q ** i for i in range(k + 1))
            n += 1
            if lhs != falling_factorial(q, k):
                bad.append(f"stirling k={k} q={q}: {lhs} != {falling_factorial(q, k)}")
    return n, bad


def check_alternating_binomial_sums(ns=range(-5, 13), ks=range(0, 13)):
    """Partial alternating sums of binomials and of j * binomial."""
    n, bad = 0, []
    for m in ns:
        for k in ks:
            s0 = sum((-1) ** j * binomial(m, j) for j in range(k + 1))
            s1 = sum((-1) ** j * j * binomial(m, j) for j in range(k + 1))
            n += 2
            if s0 != (-1) ** k * binomial(m - 1, k):
                bad.append(f"alternating sum n={m} k={k}")
            if s1 != (-1) ** k * m * binomial(m - 2, k - 1):
                bad.append(f"weighted alternating sum n={m} k={k}")
    return n, bad


@lru_cache(maxsize=None)
def _cycle_structures(k: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    return tuple(tuple(cycles_of(perm)) for perm in itertools.permutations(range(k)))


@lru_cache(maxsize=None)
def divisible_cycle_counts(k: int, p: int) -> tuple[int, ...]:
    """hist[i] = permutations of S_k with i cycles, all of length divisible by p."""
    if k == 0:
        return (1,)
    return tuple(cycle_histogram(k, lambda members, length: length % p == 0))


def _p(k: int, i: int, p: int) -> int:
    hist = divisible_cycle_counts(k, p)
    return hist[i] if 0 <= i < len(hist) else 0


def check_divisible_cycles(k_max: int = 8, ps=(2, 3)):
    """sum_i (-1)^i p(k, i) q^i == (-1)^(k/p) k! binom(q/p, k/p) for p | k."""
    n, bad = 0, []
    for p in ps:
        for k in range(p, k_max + 1, p):
            hist = divisible_cycle_counts(k, p)
            for q in (p, p * p, 2 * p):
                lhs = sum((-1) ** i * c * q ** i for i, c in enumerate(hist))
                rhs = (-1) ** (k // p) * math.factorial(k) * binomial(q // p, k // p)
                n += 1
                if lhs != rhs:
                    bad.append(f"divisible cycles p={p} k={k} q={q}: {lhs} != {rhs}")
    return n, bad


def check_pinned_cycles(k_max: int = 8, ps=(2, 3)):
    """Counts of permutations with 0 and 1 in a prescribed cycle pattern.

    Joint: one cycle of length j holds both 0 and 1.  Split: 0 and 1 sit in
    cycles of lengths j1 and j2.  Every other cycle has length divisible by p.
    Each oracle count is compared with its product formula.
    """
    n, bad = 0, []
    for k in range(2, k_max + 1):
        structures = _cycle_structures(k)
        for p in ps:
            joint: Counter = Counter()
            split: Counter = Counter()
            for cycs in structures:
                c0 = next(c for c in cycs if 0 in c)
                c1 = next(c for c in cycs if 1 in c)
                others = [c for c in cycs if c is not c0 and c is not c1]
                if any(len(c) % p for c in others):
                    continue
                if c0 is c1:
                    joint[(len(cycs), len(c0))] += 1
                else:
                    split[(len(cycs), len(c0), len(c1))] += 1
            for j in range(2, k + 1):
                if (k - j) % p:
                    continue
                for i in range(1, k + 1):
                    rhs = (j - 1) * math.factorial(k - 2) // math.factorial(k - j) * _p(k - j, i - 1, p)
                    n += 1
                    if joint[(i, j)] != rhs:
                        bad.append(f"joint cycle p={p} k={k} i={i} j={j}: {joint[(i, j)]} != {rhs}")
            for j1 in range(1, k):
                for j2 in range(1, k - j1 + 1):
                    if (k - j1 - j2) % p:
                        continue
                    for i in range(2, k + 1):
                        rhs = math.factorial(k - 2) // math.factorial(k - j1 - j2) * _p(k - j1 - j2, i - 2, p)
                        n += 1
                        if split[(i, j1, j2)] != rhs:
                            bad.append(f"split cycles p={p} k={k} i={i} j1={j1} j2={j2}")
    return n, bad


def all_checks():
    return {
        "stirling-falling-factorial": check_stirling_falling(),
        "alternating-binomial-sums": check_alternating_binomial_sums(),
        "divisible-cycle-sum": check_divisible_cycles(),
        "pinned-pair-cycles": check_pinned_cycles(),
    }
