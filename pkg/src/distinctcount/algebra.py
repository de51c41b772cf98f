"""Finite fields F_{p^m} and residue rings Z/nZ with integer element encodings.

An element of F_{p^m} is stored as the integer sum(c_i * p**i) of the
coefficients of its canonical representative of degree < m.  For m == 1 this
is just the residue mod p.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

# Extension fields up to this order get full add/mul tables.
TABLE_LIMIT = 1024
MAX_ORDER = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists low degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by the nonzero polynomial b over F_p."""
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> list[int]:
    if m == 1:
        return [0, 1]
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.m)

    def __str__(self):
        if self.m == 1:
            return str(self.p)
        return f"{self.p}^{self.m}:" + ",".join(map(str, self.modulus))

    # digit packing
    def to_poly(self, x: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            x, r = divmod(x, p)
            out.append(r)
        return out

    def from_poly(self, coeffs: Sequence[int]) -> int:
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + c
        return x

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.q:
            raise FieldError(f"{x!r} is not an element encoding of F_{self.q}")
        return x

    # raw arithmetic (no tables)
    def _add(self, x: int, y: int) -> int:
        if self.m == 1:
            return (x + y) % self.p
        p = self.p
        out, scale = 0, 1
        while x or y:
            out += ((x % p + y % p) % p) * scale
            x //= p
            y //= p
            scale *= p
        return out

    def _neg(self, x: int) -> int:
        if self.m == 1:
            return -x % self.p
        return self.from_poly([-c % self.p for c in self.to_poly(x)])

    def _mul(self, x: int, y: int) -> int:
        if self.m == 1:
            return x * y % self.p
        p, m = self.p, self.m
        a, b = self.to_poly(x), self.to_poly(y)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        prod = [c % p for c in prod]
        rem = poly_mod(prod, self.modulus, p) if any(prod) else []
        return self.from_poly(rem + [0] * (m - len(rem)))

    @cached_property
    def _tables(self):
        q = self.q
        add = [[self._add(x, y) for y in range(q)] for x in range(q)]
        mul = [[self._mul(x, y) for y in range(q)] for x in range(q)]
        return add, mul

    @property
    def tabled(self) -> bool:
        return self.m > 1 and self.q <= TABLE_LIMIT

    @property
    def add_table(self) -> list[list[int]]:
        return self._tables[0]

    @cached_property
    def flat_add_table(self) -> list[int]:
        return [v for row in self._tables[0] for v in row]

    def add(self, x: int, y: int) -> int:
        if self.m == 1:
            return (x + y) % self.p
        if self.tabled:
            return self._tables[0][x][y]
        return self._add(x, y)

    def neg(self, x: int) -> int:
        return self._neg(x)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self._neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.m == 1:
            return x * y % self.p
        if self.tabled:
            return self._tables[1][x][y]
        return self._mul(x, y)

    def pow(self, x: int, e: int) -> int:
        if self.m == 1:
            return pow(x, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in a field")
        if self.m == 1:
            return pow(x, -1, self.p)
        return self.pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def total(self, xs) -> int:
        s = 0
        for x in xs:
            s = self.add(s, x)
        return s

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p


def make_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if p ** m > MAX_ORDER:
        raise FieldError(f"field order {p}^{m} exceeds {MAX_ORDER}")
    if modulus is None:
        modulus = default_modulus(p, m)
    else:
        modulus = list(modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if any(not 0 <= c < p for c in modulus):
            raise FieldError(f"modulus coefficients must lie in [0, {p})")
        if m == 1:
            if modulus != [0, 1]:
                raise FieldError("prime fields use the modulus t, i.e. [0, 1]")
        elif not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, m, tuple(modulus))


def parse_field(text: str) -> FieldSpec:
    """Parse ``p``, ``p^m`` or ``p^m:c0,c1,...,cm``."""
    text = text.strip()
    try:
        if ":" in text:
            head, tail = text.split(":", 1)
            p, m = (int(t) for t in head.split("^"))
            return make_field(p, m, [int(c) for c in tail.split(",")])
        if "^" in text:
            p, m = (int(t) for t in text.split("^"))
            return make_field(p, m)
        return make_field(int(text), 1)
    except ValueError as exc:
        if isinstance(exc, FieldError):
            raise
        raise FieldError(f"cannot parse field spec {text!r}") from exc


def field_add(x: int, y: int, spec: FieldSpec) -> int:
    return spec.add(spec.check(x), spec.check(y))


def field_sub(x: int, y: int, spec: FieldSpec) -> int:
    return spec.sub(spec.check(x), spec.check(y))


def field_mul(x: int, y: int, spec: FieldSpec) -> int:
    return spec.mul(spec.check(x), spec.check(y))


def field_neg(x: int, spec: FieldSpec) -> int:
    return spec.neg(spec.check(x))


def field_inv(x: int, spec: FieldSpec) -> int:
    return spec.inv(spec.check(x))


def enumerate_elements(spec, domain: str = "full") -> list[int]:
    """Elements in ascending encoding order; ``units`` drops 0.

    Works for both FieldSpec and RingSpec.
    """
    size = spec.q if isinstance(spec, FieldSpec) else spec.n
    if domain == "full":
        return list(range(size))
    if domain == "units":
        if isinstance(spec, RingSpec):
            raise ValueError("units domain is only defined for fields")
        return list(range(1, size))
    raise ValueError(f"unknown domain {domain!r}")


def in_prime_subfield(x: int, spec: FieldSpec) -> bool:
    return spec.check(x) < spec.p


def multiplicative_order(x: int, spec: FieldSpec) -> int:
    if x == 0:
        raise ValueError("zero has no multiplicative order")
    order = spec.q - 1
    for r in prime_factors(spec.q - 1):
        while order % r == 0 and spec.pow(x, order // r) == 1:
            order //= r
    return order


def primitive_element(spec: FieldSpec) -> int:
    if spec.q == 2:
        return 1
    for x in range(1, spec.q):
        if multiplicative_order(x, spec) == spec.q - 1:
            return x
    raise AssertionError("finite field without a primitive element")


@dataclass(frozen=True)
class RingSpec:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"ring modulus must be >= 1, got {self.n!r}")

    def __str__(self):
        return f"Z/{self.n}Z"

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.n:
            raise ValueError(f"{x!r} is not a residue mod {self.n}")
        return x

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.n

    def mul(self, x: int, y: int) -> int:
        return x * y % self.n

