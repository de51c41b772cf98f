"""Counting distinct-coordinate solutions of a_1 x_1 + ... + a_k x_k = b over F_q.

Engines, all exact:

* ``count_brute``          direct enumeration, the ground truth
* ``count_recurrence``     the d(.) recurrence over coefficient multisets
* ``count_sieve``          sieve over permutations, evaluated as a subset DP
* ``count_partition_oracle`` the same sieve summed over set partitions
* ``count_closed_form``    closed forms for special coefficient shapes
* ``count_units``          x_i restricted to F_q^*, via the F_q counts
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from . import kernels
from .algebra import FieldSpec, enumerate_elements, primitive_element
from .combinatorics import BudgetError, binomial, falling_factorial

DOMAINS = ("full", "units")


@dataclass(frozen=True)
class Budgets:
    brute: int = 10**8
    sieve_k: int = 18
    partition_k: int = 12
    units_k: int = 16
    subset_scan_k: int = 20


DEFAULT_BUDGETS = Budgets()


class NotApplicableError(ValueError):
    """The requested engine does not apply to this instance."""


class InexactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder.  Always a bug."""


@dataclass(frozen=True)
class Instance:
    spec: FieldSpec
    coeffs: tuple[int, ...]
    target: int
    domain: str = "full"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("at least one coefficient is required")
        for a in self.coeffs:
            self.spec.check(a)
        self.spec.check(self.target)
        if self.domain not in DOMAINS:
            raise ValueError(f"domain must be one of {DOMAINS}, got {self.domain!r}")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def domain_size(self) -> int:
        return self.spec.q if self.domain == "full" else self.spec.q - 1


@dataclass(frozen=True)
class CountResult:
    count: int
    method: str
    instance: Instance = field(repr=False)


def exact_div(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    if rem:
        raise InexactDivisionError(f"{num} is not divisible by {den}")
    return quo


def nu(b: int, spec: FieldSpec) -> int:
    return spec.q - 1 if b == 0 else -1


def delta_key(coeffs: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(coeffs))


def _uniform_part(spec: FieldSpec, k: int) -> int:
    return exact_div(falling_factorial(spec.q, k), spec.q)


def _require_full(inst: Instance) -> None:
    if inst.domain != "full":
        raise NotApplicableError("this engine counts over the full field only")


# --- brute force -----------------------------------------------------------

def count_brute(inst: Instance, budgets: Budgets = DEFAULT_BUDGETS) -> CountResult:
    """Enumerate injective (k-1)-tuples and solve for the remaining coordinate."""
    spec, k = inst.spec, inst.k
    if k > inst.domain_size:
        return CountResult(0, "brute", inst)
    dom = enumerate_elements(spec, inst.domain)
    coeffs = list(inst.coeffs)
    # solve for a coordinate whose coefficient is nonzero, if any
    last = max((i for i, a in enumerate(coeffs) if a), default=k - 1)
    a_last = coeffs.pop(last)
    buckets: list[list[int]] = [[] for _ in range(spec.q)]
    for x in dom:
        buckets[spec.sub(inst.target, spec.mul(a_last, x))].append(x)
    work = falling_factorial(len(dom), k - 1) * max(len(b) for b in buckets)
    if work > budgets.brute:
        raise BudgetError(f"brute force needs {work} steps, budget is {budgets.brute}")
    if spec.m > 1 and not spec.tabled:
        return CountResult(_brute_generic(spec, coeffs, dom, buckets), "brute", inst)
    rows = [[spec.mul(a, x) for x in range(spec.q)] for a in coeffs]
    ptr = [0]
    vals: list[int] = []
    for b in buckets:
        vals.extend(b)
        ptr.append(len(vals))
    add = spec.flat_add_table if spec.m > 1 else None
    return CountResult(kernels.injective_count(spec.q, add, rows, dom, ptr, vals), "brute", inst)


def _brute_generic(spec, coeffs, dom, buckets) -> int:
    n = 0
    for xs in itertools.permutations(dom, len(coeffs)):
        s = 0
        for a, x in zip(coeffs, xs):
            s = spec.add(s, spec.mul(a, x))
        used = set(xs)
        n += sum(1 for x in buckets[s] if x not in used)
    return n


# --- recurrence -------------------------------------------------------------

def delta(coeffs: Sequence[int], spec: FieldSpec, memo: dict | None = None) -> int:
    """d(a) = N_{F*}(a; 1) - N_{F*}(a; 0), memoized on the coefficient multiset.

    The empty multiset has d = -1 (the empty tuple solves only b = 0).
    """
    if memo is None:
        memo = {}
    return _delta(delta_key(coeffs), spec, memo)


def _drop(key: tuple[int, ...], value: int) -> tuple[int, ...]:
    i = key.index(value)
    return key[:i] + key[i + 1:]


def _delta(key: tuple[int, ...], spec: FieldSpec, memo: dict) -> int:
    got = memo.get(key)
    if got is not None:
        return got
    k = len(key)
    if k == 0:
        val = -1
    elif k == 1:
        val = -nu(key[0], spec)
    elif spec.total(key) != 0:
        val = -sum(mult * _delta(_drop(key, v), spec, memo) for v, mult in Counter(key).items())
    else:
        # all drops agree here; drop the largest encoding
        val = (spec.q - k) * _delta(key[:-1], spec, memo)
    memo[key] = val
    return val


def count_recurrence(inst: Instance, memo: dict | None = None) -> CountResult:
    _require_full(inst)
    spec, k = inst.spec, inst.k
    if k > spec.q:
        return CountResult(0, "recurrence", inst)
    base = _uniform_part(spec, k)
    if spec.total(inst.coeffs) != 0:
        return CountResult(base, "recurrence", inst)
    if memo is None:
        memo = {}
    key = delta_key(inst.coeffs)
    x = _delta(key, spec, memo)
    x += sum(mult * _delta(_drop(key, v), spec, memo) for v, mult in Counter(key).items())
    return CountResult(base - exact_div(nu(inst.target, spec) * x, spec.q), "recurrence", inst)


# --- sieve ------------------------------------------------------------------

def subset_sums(coeffs: Sequence[int], spec: FieldSpec) -> list[int]:
    """sums[T] = sum of coeffs[i] for i in bitmask T."""
    sums = [0] * (1 << len(coeffs))
    for t in range(1, len(sums)):
        low = (t & -t).bit_length() - 1
        sums[t] = spec.add(sums[t & (t - 1)], coeffs[low])
    return sums


def zero_sum_flags(coeffs: Sequence[int], spec: FieldSpec) -> bytearray:
    flags = bytearray(1 << len(coeffs))
    for t, s in enumerate(subset_sums(coeffs, spec)):
        if t and s == 0:
            flags[t] = 1
    return flags


def sieve_weight(coeffs: Sequence[int], spec: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """W = sum_i (-1)^(k-i) p(a; k, i) q^i, the zero-sum-cycle part of the sieve."""
    k = len(coeffs)
    if k > budgets.sieve_k:
        raise BudgetError(f"sieve is capped at k <= {budgets.sieve_k}")
    if spec.total(coeffs) != 0:
        return 0  # no partition into zero-sum blocks exists
    return kernels.zero_sum_cycle_weight(zero_sum_flags(coeffs, spec), k, spec.q)


def count_sieve(inst: Instance, budgets: Budgets = DEFAULT_BUDGETS) -> CountResult:
    _require_full(inst)
    spec, k = inst.spec, inst.k
    if k > spec.q:
        return CountResult(0, "sieve-dp", inst)
    w = sieve_weight(inst.coeffs, spec, budgets)
    n = _uniform_part(spec, k) + exact_div(nu(inst.target, spec) * w, spec.q)
    return CountResult(n, "sieve-dp", inst)


def count_partition_oracle(inst: Instance, budgets: Budgets = DEFAULT_BUDGETS) -> CountResult:
    """Sum over set partitions P of the index set of sign-weighted |X_P|."""
    _require_full(inst)
    spec, k = inst.spec, inst.k
    if k > budgets.partition_k:
        raise BudgetError(f"partition oracle is capped at k <= {budgets.partition_k}")
    # label 0: every block so far is zero-sum, label 1: some block is not
    labels = [0 if s == 0 else 1 for s in subset_sums(inst.coeffs, spec)]
    profile = kernels.partition_profile(labels, [0, 1, 1, 1], 2, k)
    q, v = spec.q, nu(inst.target, spec)
    n = 0
    for ell in range(1, k + 1):
        mixed, all_zero = profile[ell][1], profile[ell][0]
        n += q ** (ell - 1) * (mixed + all_zero * (v + 1))
    return CountResult(n, "partition", inst)


# --- closed forms -----------------------------------------------------------

def all_ones_count(spec: FieldSpec, k: int, b: int) -> int:
    """N(1, ..., 1; b) with k ones."""
    q, p = spec.q, spec.p
    base = _uniform_part(spec, k)
    if k % p:
        return base
    corr = (-1) ** (k + k // p) * nu(b, spec) * math.factorial(k) * binomial(q // p, k // p)
    return base + exact_div(corr, q)


def _residue(x: int, p: int) -> int:
    return x - (x // p) * p


def two_exceptional_count(spec: FieldSpec, a1: int, a2: int, k: int, b: int) -> tuple[int, int]:
    """N(a1, a2, 1, ..., 1; b) with k - 2 ones.  Returns (count, case number)."""
    if k < 2:
        raise ValueError("need k >= 2")
    q, p = spec.q, spec.p
    base = _uniform_part(spec, k)
    if spec.add(spec.add(a1, a2), spec.from_int(k - 2)) != 0:
        return base, 1
    v = nu(b, spec)
    if a1 >= p and a2 >= p:
        ell = (k - 2) // p
        s1 = (-1) ** (k - 1 + ell) * math.factorial(k - 2) * (
            (k - 1) * binomial(q // p - 1, ell) - q * binomial(q // p - 2, ell - 1)
        )
        return base + v * s1, 2
    if a1 >= p or a2 >= p:
        raise AssertionError("a1 + a2 lies in F_p, so both or neither of a1, a2 do")
    in_a = a1 != 1 and a2 != 1 and _residue(1 - a1, p) + _residue(1 - a2, p) <= p
    ell = (k - 1) // p
    s = (-1) ** (k - 1 + ell) * math.factorial(k - 2) * (k - 1 - q * in_a) * binomial(q // p - 1, ell)
    return base + v * s, 3


def minimal_zero_sum_count(spec: FieldSpec, k: int, b: int) -> int:
    """Count when the coefficients sum to 0 but no nonempty proper subset does."""
    return _uniform_part(spec, k) + nu(b, spec) * (-1) ** (k - 1) * math.factorial(k - 1)


def proper_subset_sums_nonzero(sums: Sequence[int]) -> bool:
    full = len(sums) - 1
    return all(sums[t] != 0 for t in range(1, full))


def count_closed_form(inst: Instance, budgets: Budgets = DEFAULT_BUDGETS) -> CountResult | None:
    """Closed form when one applies, else None."""
    _require_full(inst)
    spec, k, b = inst.spec, inst.k, inst.target
    coeffs = inst.coeffs
    if k > spec.q:
        return CountResult(0, "closed-form:pigeonhole", inst)
    freq = Counter(a for a in coeffs if a)
    if freq:
        lam, mult = min(freq.items(), key=lambda kv: (-kv[1], kv[0]))
        if mult == k:
            n = all_ones_count(spec, k, spec.div(b, lam))
            return CountResult(n, "closed-form:all-equal", inst)
        if k >= 3 and mult >= k - 2:
            rest = list(coeffs)
            for _ in range(k - 2):
                rest.remove(lam)
            a1, a2 = (spec.div(a, lam) for a in rest)
            n, case = two_exceptional_count(spec, a1, a2, k, spec.div(b, lam))
            return CountResult(n, f"closed-form:two-exceptional-{case}", inst)
    if spec.total(coeffs) != 0:
        return CountResult(_uniform_part(spec, k), "closed-form:sum-nonzero", inst)
    if k <= budgets.subset_scan_k and proper_subset_sums_nonzero(subset_sums(coeffs, spec)):
        return CountResult(minimal_zero_sum_count(spec, k, b), "closed-form:subset-sums-nonzero", inst)
    return None


# --- F_q^* ------------------------------------------------------------------

def count_units(inst: Instance, budgets: Budgets = DEFAULT_BUDGETS, memo: dict | None = None) -> CountResult:
    """N_{F*}(a; b) = N_F(a; b) - sum_i N_{F*}(a without a_i; b)."""
    if inst.domain != "units":
        raise NotApplicableError("count_units counts over F_q^* only")
    spec, k = inst.spec, inst.k
    if k > spec.q - 1:
        return CountResult(0, "units-reduction", inst)
    if k > budgets.units_k:
        raise BudgetError(f"units reduction is capped at k <= {budgets.units_k}")
    if memo is None:
        memo = {}
    n = _units(delta_key(inst.coeffs), inst.target, spec, budgets, memo)
    return CountResult(n, "units-reduction", inst)


def _units(key, b, spec, budgets, memo) -> int:
    got = memo.get(key)
    if got is not None:
        return got
    if not key:
        val = 1 if b == 0 else 0
    else:
        full = count_sieve(Instance(spec, key, b), budgets).count
        val = full - sum(mult * _units(_drop(key, v), b, spec, budgets, memo)
                         for v, mult in Counter(key).items())
    memo[key] = val
    return val


# --- existence --------------------------------------------------------------

def exists_distinct(inst: Instance, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    _require_full(inst)
    spec, k = inst.spec, inst.k
    if k > spec.q:
        return False
    if inst.target != 0 and spec.q >= 3:
        if k < spec.q:
            return any(inst.coeffs)
        return len(set(inst.coeffs)) > 1
    return count_sieve(inst, budgets).count > 0


# --- permutation polynomials -------------------------------------------------

MAX_CENSUS_Q = 13


def perm_poly_census(spec: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """Bijections f of F_q with f(0) = 0 whose reduced degree is at most q - 3.

    Equals N_{F*}(1, w, ..., w^(q-2); 0) for a primitive element w.
    """
    q = spec.q
    if q < 3:
        raise NotApplicableError("degree <= q - 3 is meaningless for q < 3")
    if q > MAX_CENSUS_Q:
        raise BudgetError(f"census is capped at q <= {MAX_CENSUS_Q}")
    w = primitive_element(spec)
    coeffs = [spec.pow(w, i) for i in range(q - 1)]
    budgets = Budgets(**{**budgets.__dict__, "units_k": max(budgets.units_k, q - 1)})
    return count_units(Instance(spec, coeffs, 0, "units"), budgets).count


def reduced_degree(values: Sequence[int], spec: FieldSpec) -> int:
    """Degree of the interpolating polynomial of degree < q of x -> values[x]; -1 for zero."""
    coeffs = interpolate(values, spec)
    for j in range(len(coeffs) - 1, -1, -1):
        if coeffs[j]:
            return j
    return -1


def interpolate(values: Sequence[int], spec: FieldSpec) -> list[int]:
    """Coefficients of sum_c values[c] * (1 - (x - c)^(q-1)), low degree first."""
    q = spec.q
    out = [0] * q
    for c, fc in enumerate(values):
        if fc:
            for j, lj in enumerate(_lagrange_basis(spec)[c]):
                if lj:
                    out[j] = spec.add(out[j], spec.mul(fc, lj))
    return out


_BASIS_CACHE: dict[FieldSpec, list[list[int]]] = {}


def _lagrange_basis(spec: FieldSpec) -> list[list[int]]:
    basis = _BASIS_CACHE.get(spec)
    if basis is None:
        q = spec.q
        basis = []
        for c in range(q):
            poly = [0] * q  # (x - c)^(q-1) by repeated multiplication
            poly[0] = 1
            neg_c = spec.neg(c)
            for _ in range(q - 1):
                nxt = [0] * q
                for j, v in enumerate(poly):
                    if v:
                        if j + 1 < q:
                            nxt[j + 1] = spec.add(nxt[j + 1], v)
                        nxt[j] = spec.add(nxt[j], spec.mul(v, neg_c))
                poly = nxt
            lc = [spec.neg(v) for v in poly]
            lc[0] = spec.add(lc[0], 1)
            basis.append(lc)
        _BASIS_CACHE[spec] = basis
    return basis


def census_by_interpolation(spec: FieldSpec) -> int:
    """Count bijections fixing 0 with reduced degree <= q - 3 by interpolating each one."""
    q = spec.q
    if q < 3:
        raise NotApplicableError("degree <= q - 3 is meaningless for q < 3")
    n = 0
    for perm in itertools.permutations(range(1, q)):
        if reduced_degree((0,) + perm, spec) <= q - 3:
            n += 1
    return n


# --- dispatcher -------------------------------------------------------------

METHODS = ("auto", "brute", "recurrence", "sieve", "partition", "closed")


def count(inst: Instance, method: str = "auto", budgets: Budgets = DEFAULT_BUDGETS) -> CountResult:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "brute":
        return count_brute(inst, budgets)
    if inst.domain == "units":
        if method != "auto":
            raise NotApplicableError(f"method {method!r} counts over the full field only")
        return count_units(inst, budgets)
    if method == "recurrence":
        return count_recurrence(inst)
    if method == "sieve":
        return count_sieve(inst, budgets)
    if method == "partition":
        return count_partition_oracle(inst, budgets)
    res = count_closed_form(inst, budgets)
    if method == "closed":
        if res is None:
            raise NotApplicableError("no closed form applies to this instance")
        return res
    return res if res is not None else count_sieve(inst, budgets)
