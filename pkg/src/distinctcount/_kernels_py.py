"""Pure-Python kernels.  Same signatures and results as the compiled module."""
from __future__ import annotations

import math

BACKEND = "python"


def zero_sum_cycle_weight(zero, k: int, q: int) -> int:
    """Signed weight of all permutations of {0..k-1} whose cycles are zero-sum.

    ``zero[T]`` is truthy iff the coefficient subset with bitmask T sums to 0.
    Each zero-sum block T contributes (-1)^(|T|-1) (|T|-1)! q, and blocks are
    peeled off by the lowest remaining index, so every set partition of the
    index set into zero-sum blocks is visited once.
    """
    full = (1 << k) - 1
    wsz = [0] + [(-1) ** (s - 1) * math.factorial(s - 1) * q for s in range(1, k + 1)]
    by_low: dict[int, list[int]] = {}
    for t in range(1, full + 1):
        if zero[t]:
            by_low.setdefault(t & -t, []).append(t)
    memo = {0: 1}

    def f(s: int) -> int:
        got = memo.get(s)
        if got is not None:
            return got
        low = s & -s
        acc = 0
        cands = by_low.get(low, ())
        rest = s ^ low
        if len(cands) <= 1 << rest.bit_count():
            for t in cands:
                if t & s == t:
                    acc += wsz[t.bit_count()] * f(s ^ t)
        else:
            sub = rest
            while True:
                t = sub | low
                if zero[t]:
                    acc += wsz[t.bit_count()] * f(s ^ t)
                if not sub:
                    break
                sub = (sub - 1) & rest
        memo[s] = acc
        return acc

    return f(full)


def injective_count(q, add, rows, domain, bucket_ptr, bucket_vals) -> int:
    """Count injective tuples (x_1..x_k) over ``domain``.

    rows[i][x] is the image a_i * x for the first k-1 coordinates; partial sums
    start at 0 and combine through the flattened table ``add`` (or mod q when
    ``add`` is None).  The last coordinate ranges over bucket s, i.e.
    bucket_vals[bucket_ptr[s]:bucket_ptr[s+1]], for final partial sum s.
    """
    depth = len(rows)
    used = [False] * q
    buckets = [bucket_vals[bucket_ptr[s]:bucket_ptr[s + 1]] for s in range(q)]

    def leaf(s: int) -> int:
        n = 0
        for x in buckets[s]:
            if not used[x]:
                n += 1
        return n

    def walk(level: int, s: int) -> int:
        if level == depth:
            return leaf(s)
        row = rows[level]
        total = 0
        for x in domain:
            if used[x]:
                continue
            v = row[x]
            t = add[s * q + v] if add is not None else (s + v) % q
            used[x] = True
            total += walk(level + 1, t)
            used[x] = False
        return total

    return walk(0, 0)


def partition_profile(labels, meet, nlabels: int, k: int) -> list[list[int]]:
    """Sum of block weights over all set partitions of {0..k-1}, bucketed.

    Returns acc with acc[l][c] = sum over partitions with l blocks whose
    folded label is c of prod_B (-1)^(|B|-1)(|B|-1)!.  The folded label of a
    partition is meet applied left to right over labels[mask(B)].
    """
    acc = [[0] * nlabels for _ in range(k + 1)]
    if k == 0:
        return acc
    wsz = [0] + [(-1) ** (s - 1) * math.factorial(s - 1) for s in range(1, k + 1)]
    masks = [0] * k
    sizes = [0] * k

    def walk(i: int, nb: int) -> None:
        if i == k:
            lab = labels[masks[0]]
            w = wsz[sizes[0]]
            for j in range(1, nb):
                lab = meet[lab * nlabels + labels[masks[j]]]
                w *= wsz[sizes[j]]
            acc[nb][lab] += w
            return
        bit = 1 << i
        for j in range(nb + 1):
            masks[j] |= bit
            sizes[j] += 1
            walk(i + 1, max(nb, j + 1))
            masks[j] ^= bit
            sizes[j] -= 1

    walk(0, 0)
    return acc
