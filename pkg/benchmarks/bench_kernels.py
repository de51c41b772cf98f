"""Compiled vs pure-Python kernels, one row per (kernel, size).

    python benchmarks/bench_kernels.py [--repeat 3]

Prints CSV: kernel,size,backend,millis,speedup.  Each row's result is checked
against the other backend before timing is reported.
"""
import argparse
import csv
import sys
import time

from distinctcount import fq, kernels
from distinctcount.algebra import make_field
from distinctcount.fq import Instance


def _time(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1000.0, value


def cases():
    f9 = make_field(3, 2)
    for k in (10, 12, 14, 16):
        zero = bytearray([1]) * (1 << k)
        yield "sieve-dense", k, lambda z=zero, k=k: kernels.zero_sum_cycle_weight(z, k, 9)
    for k in (12, 14, 16):
        coeffs = [1 + i % 8 for i in range(k - 1)]
        coeffs.append(f9.neg(f9.total(coeffs)))
        flags = fq.zero_sum_flags(coeffs, f9)
        yield "sieve-sparse", k, lambda z=flags, k=k: kernels.zero_sum_cycle_weight(z, k, 9)
    f11 = make_field(11)
    for k in (5, 6, 7):
        inst = Instance(f11, list(range(1, k + 1)), 0)
        yield "brute", k, lambda i=inst: fq.count_brute(i).count
    for k in (8, 9, 10):
        inst = Instance(make_field(7), [1, 2, 3, 4, 5, 6, 1, 2, 3, 4][:k], 0)
        yield "partition", k, lambda i=inst: fq.count_partition_oracle(i).count


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    mods = kernels.backends()
    if len(mods) < 2:
        print("compiled extension not available; only the Python backend will be timed", file=sys.stderr)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["kernel", "size", "backend", "millis", "speedup"])
    for name, size, fn in cases():
        rows = []
        for mod in mods:
            with kernels.use(mod):
                rows.append((mod.BACKEND, *_time(fn, args.repeat)))
        if len({r[2] for r in rows}) != 1:
            print(f"backends disagree on {name} size {size}: {rows}", file=sys.stderr)
            return 4
        slowest = max(r[1] for r in rows)
        for backend, ms, _ in rows:
            w.writerow([name, size, backend, f"{ms:.2f}", f"{slowest / ms:.1f}"])
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
