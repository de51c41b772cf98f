"""Exact integer combinatorics and small permutation/partition oracles."""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Callable, Iterator

# pred(members, length) -> bool, evaluated once per cycle
CyclePredicate = Callable[[frozenset, int], bool]
SetPartition = tuple[tuple[int, ...], ...]

MAX_PERMUTATION_ORACLE = 9
MAX_SET_PARTITIONS = 14


class BudgetError(ValueError):
    """Raised when an instance exceeds an engine's configured budget."""


def falling_factorial(n: int, k: int) -> int:
    if k < 0:
        raise ValueError("falling factorial needs k >= 0")
    if n >= 0:
        return math.perm(n, k)
    out = 1
    for i in range(k):
        out *= n - i
    return out


def rising_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n + i
    return out


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, extended to negative n by (n choose k) = (-1)^k (k-n-1 choose k)."""
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    return (-1) ** k * math.comb(k - n - 1, k)


@lru_cache(maxsize=None)
def _stirling_row(k: int) -> tuple[int, ...]:
    if k == 0:
        return (1,)
    prev = _stirling_row(k - 1)
    row = [0] * (k + 1)
    for i in range(1, k + 1):
        row[i] = prev[i - 1] + (k - 1) * (prev[i] if i < k else 0)
    return tuple(row)


def stirling_first_unsigned(k: int, i: int) -> int:
    if k < 0 or i < 0 or i > k:
        return 0
    for j in range(k):
        _stirling_row(j)
    return _stirling_row(k)[i]


def cycles_of(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Disjoint cycles of a permutation of range(len(perm)), each as a tuple of members."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


def cycle_histogram(k: int, pred: CyclePredicate) -> list[int]:
    """hist[i] = #permutations of S_k with i cycles, every cycle satisfying pred.

    Members are 0-based indices.  Exhaustive over all k! permutations.
    """
    if k > MAX_PERMUTATION_ORACLE:
        raise BudgetError(f"permutation oracle is capped at k <= {MAX_PERMUTATION_ORACLE}")
    hist = [0] * (k + 1)
    cache: dict[tuple[int, ...], bool] = {}
    for perm in itertools.permutations(range(k)):
        cycs = cycles_of(perm)
        ok = True
        for c in cycs:
            key = tuple(sorted(c))
            if key not in cache:
                cache[key] = bool(pred(frozenset(c), len(c)))
            if not cache[key]:
                ok = False
                break
        if ok:
            hist[len(cycs)] += 1
    return hist


def count_permutations_by_cycles(k: int, i: int, pred: CyclePredicate) -> int:
    if i < 0 or i > k:
        return 0
    return cycle_histogram(k, pred)[i]


def enumerate_set_partitions(k: int) -> Iterator[SetPartition]:
    """Set partitions of {0..k-1} via restricted growth strings.

    Blocks come sorted by their minimum; partitions come in lexicographic
    order of their growth strings.
    """
    if k > MAX_SET_PARTITIONS:
        raise BudgetError(f"set partition enumeration is capped at k <= {MAX_SET_PARTITIONS}")
    if k == 0:
        yield ()
        return
    rgs = [0] * k
    maxes = [0] * k  # maxes[i] = max(rgs[:i+1])
    while True:
        blocks: list[list[int]] = [[] for _ in range(maxes[-1] + 1)]
        for idx, b in enumerate(rgs):
            blocks[b].append(idx)
        yield tuple(tuple(b) for b in blocks)
        i = k - 1
        while i > 0 and rgs[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, k):
            rgs[j] = 0
            maxes[j] = maxes[i]


def bell(k: int) -> int:
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def block_weight(size: int) -> int:
    """Signed number of cyclic orders on a block: (-1)^(size-1) (size-1)!."""
    return (-1) ** (size - 1) * math.factorial(size - 1)
