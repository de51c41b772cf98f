"""Distinct-coordinate solutions of a_1 x_1 + ... + a_k x_k = b (mod n)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from . import kernels
from .algebra import RingSpec
from .combinatorics import BudgetError, falling_factorial
from .fq import DEFAULT_BUDGETS, Budgets, NotApplicableError, exact_div

METHODS = ("auto", "brute", "partition", "closed")


@dataclass(frozen=True)
class ZInstance:
    ring: RingSpec
    coeffs: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("at least one coefficient is required")
        for a in self.coeffs:
            self.ring.check(a)
        self.ring.check(self.target)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def n(self) -> int:
        return self.ring.n


def lehmer_count(coeffs: Sequence[int], b: int, n: int) -> int:
    """Unrestricted solutions of sum a_i x_i = b (mod n)."""
    d = reduce(math.gcd, coeffs, n)
    return d * n ** (len(coeffs) - 1) if b % d == 0 else 0


def _subset_gcds(coeffs: Sequence[int], n: int) -> list[int]:
    sums = [0] * (1 << len(coeffs))
    for t in range(1, len(sums)):
        low = (t & -t).bit_length() - 1
        sums[t] = (sums[t & (t - 1)] + coeffs[low]) % n
    return [math.gcd(s, n) for s in sums]


def sieve_profile(coeffs: Sequence[int], n: int, budgets: Budgets = DEFAULT_BUDGETS) -> dict[tuple[int, int], int]:
    """{(blocks, d): signed weight} over set partitions of the index set.

    d is gcd(n, all block sums).  The profile does not depend on the target,
    so a whole table of targets costs one enumeration.
    """
    k = len(coeffs)
    if k > budgets.partition_k:
        raise BudgetError(f"partition sieve is capped at k <= {budgets.partition_k}")
    gcds = _subset_gcds(coeffs, n)
    divisors = sorted({g for g in gcds[1:]} | {n})
    closed = set(divisors)
    frontier = list(divisors)
    while frontier:  # close under gcd
        new = {math.gcd(x, y) for x in frontier for y in closed} - closed
        closed |= new
        frontier = list(new)
    divisors = sorted(closed)
    index = {d: i for i, d in enumerate(divisors)}
    labels = [index[g] if t else 0 for t, g in enumerate(gcds)]
    meet = [index[math.gcd(x, y)] for x in divisors for y in divisors]
    acc = kernels.partition_profile(labels, meet, len(divisors), k)
    return {(ell, divisors[j]): w
            for ell, row in enumerate(acc) for j, w in enumerate(row) if w}


def evaluate_profile(profile: dict[tuple[int, int], int], b: int, n: int) -> int:
    return sum(w * d * n ** (ell - 1) for (ell, d), w in profile.items() if b % d == 0)


def count_partition_sieve_zn(inst: ZInstance, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    if inst.k > inst.n:
        return 0
    return evaluate_profile(sieve_profile(inst.coeffs, inst.n, budgets), inst.target, inst.n)


def bibak_applies(coeffs: Sequence[int], n: int, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """gcd(sum over I, n) == 1 for every nonempty proper subset I."""
    k = len(coeffs)
    if k > budgets.subset_scan_k:
        return False
    gcds = _subset_gcds(coeffs, n)
    return all(g == 1 for g in gcds[1:-1])


def count_bibak(inst: ZInstance, budgets: Budgets = DEFAULT_BUDGETS) -> int | None:
    n, k = inst.n, inst.k
    if not bibak_applies(inst.coeffs, n, budgets):
        return None
    base = exact_div(falling_factorial(n, k), n)
    g = math.gcd(sum(inst.coeffs), n)
    if inst.target % g:
        return base + (-1) ** k * math.factorial(k - 1)
    return base + (-1) ** (k - 1) * math.factorial(k - 1) * (g - 1)


def count_brute_zn(inst: ZInstance, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    n, k = inst.n, inst.k
    if k > n:
        return 0
    coeffs = list(inst.coeffs)
    # solve for the coordinate with the fewest preimages per residue
    last = min(range(k), key=lambda i: (math.gcd(coeffs[i], n), -i))
    a_last = coeffs.pop(last)
    buckets: list[list[int]] = [[] for _ in range(n)]
    for x in range(n):
        buckets[(inst.target - a_last * x) % n].append(x)
    work = falling_factorial(n, k - 1) * max(len(b) for b in buckets)
    if work > budgets.brute:
        raise BudgetError(f"brute force needs {work} steps, budget is {budgets.brute}")
    rows = [[a * x % n for x in range(n)] for a in coeffs]
    ptr = [0]
    vals: list[int] = []
    for b in buckets:
        vals.extend(b)
        ptr.append(len(vals))
    return kernels.injective_count(n, None, rows, list(range(n)), ptr, vals)


def count_zn(inst: ZInstance, method: str = "auto", budgets: Budgets = DEFAULT_BUDGETS) -> tuple[int, str]:
    """Returns (count, method label)."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "brute":
        return count_brute_zn(inst, budgets), "brute"
    if method == "partition":
        return count_partition_sieve_zn(inst, budgets), "partition"
    got = count_bibak(inst, budgets)
    if got is not None:
        return got, "closed-form:bibak"
    if method == "closed":
        raise NotApplicableError("subset-gcd condition fails; no closed form")
    return count_partition_sieve_zn(inst, budgets), "partition"
