import itertools

import pytest
from hypothesis import given, settings, strategies as st

from distinctcount import fq
from distinctcount.algebra import enumerate_elements, make_field
from distinctcount.combinatorics import BudgetError, falling_factorial
from distinctcount.fq import Budgets, Instance, NotApplicableError

F3, F4, F5, F7, F9 = make_field(3), make_field(2, 2), make_field(5), make_field(7), make_field(3, 2)
SMALL_FIELDS = [make_field(2), F3, F4, F5, F7, make_field(2, 3), F9]


def naive(spec, coeffs, b, domain="full"):
    # itertools oracle, independent of the kernels
    elems = enumerate_elements(spec, domain)
    n = 0
    for xs in itertools.permutations(elems, len(coeffs)):
        if spec.total(spec.mul(a, x) for a, x in zip(coeffs, xs)) == b:
            n += 1
    return n


def inst(spec, coeffs, b, domain="full"):
    return Instance(spec, list(coeffs), b, domain)


# --- brute force -------------------------------------------------------------

def test_brute_examples():
    assert fq.count_brute(inst(F5, (1, 4), 1)).count == 5
    assert fq.count_brute(inst(F5, (1, 4), 0)).count == 0
    assert fq.count_brute(inst(F5, (1, 4), 1, "units")).count == 3
    assert fq.count_brute(inst(F3, (1, 1, 1, 1), 0)).count == 0
    assert fq.count_brute(inst(F5, (1,) * 5, 1, "units")).count == 0


def test_brute_budget():
    with pytest.raises(BudgetError):
        fq.count_brute(inst(F9, (1,) * 8, 0), Budgets(brute=1000))


@pytest.mark.parametrize("spec", SMALL_FIELDS[:5], ids=str)
def test_brute_matches_naive(spec):
    for coeffs in itertools.product(range(spec.q), repeat=3):
        for b in range(spec.q):
            for dom in ("full", "units"):
                assert fq.count_brute(inst(spec, coeffs, b, dom)).count == naive(spec, coeffs, b, dom)


# --- recurrence ----------------------------------------------------------------

def test_nu():
    assert fq.nu(0, F5) == 4
    assert fq.nu(3, F5) == -1
    assert sum(fq.nu(b, F7) for b in range(7)) == 0


def test_delta_values():
    assert fq.delta([0], F5) == -4
    assert fq.delta([1, 4], F5) == 3
    assert fq.delta([1, 1], F5) == -2


def test_delta_matches_units_difference():
    # d(a) = N_{F*}(a; 1) - N_{F*}(a; 0)
    for spec in (F3, F4, F5, F7):
        for coeffs in itertools.product(range(spec.q), repeat=2):
            want = naive(spec, coeffs, 1, "units") - naive(spec, coeffs, 0, "units")
            assert fq.delta(coeffs, spec) == want


def test_recurrence_examples():
    assert fq.count_recurrence(inst(F5, (1, 4), 0)).count == 0
    assert fq.count_recurrence(inst(F5, (1, 4), 2)).count == 5
    assert fq.count_recurrence(inst(F5, (1, 1), 0)).count == 4


def test_recurrence_rejects_units():
    with pytest.raises(NotApplicableError):
        fq.count_recurrence(inst(F5, (1, 4), 1, "units"))


# --- sieve -----------------------------------------------------------------------

def test_sieve_weight_examples():
    assert fq.sieve_weight([1, 4], F5) == -5
    assert fq.sieve_weight([1, 1, 1], F3) == 6
    assert fq.sieve_weight([1, 1], F5) == 0


def test_sieve_examples():
    assert fq.count_sieve(inst(F5, (1, 4), 1)).count == 5
    assert fq.count_sieve(inst(F3, (1, 1, 1), 0)).count == 6
    assert fq.count_sieve(inst(F4, (1, 1), 0)).count == 0


def test_partition_examples():
    assert fq.count_partition_oracle(inst(F5, (1, 4), 1)).count == 5
    assert fq.count_partition_oracle(inst(F7, (2,), 0)).count == 1
    assert fq.count_partition_oracle(inst(F3, (1, 1, 1), 1)).count == 0


def test_sieve_vanishes_beyond_field_size():
    # k > q forces N = 0, which pins the DP weight to 0 as well
    for spec in (F3, F4, F5):
        k = spec.q + 2
        coeffs = [1] * (k - 1)
        coeffs.append(spec.neg(spec.total(coeffs)))
        assert fq.sieve_weight(coeffs, spec) == 0


# --- closed forms ----------------------------------------------------------------

def test_closed_form_examples():
    r = fq.count_closed_form(inst(F5, (1,) * 5, 0))
    assert (r.count, r.method) == (120, "closed-form:all-equal")
    r = fq.count_closed_form(inst(F3, (0, 2, 1), 1))
    assert (r.count, r.method) == (3, "closed-form:two-exceptional-3")
    r = fq.count_closed_form(inst(F4, (2, 3, 1), 0))
    assert (r.count, r.method) == (12, "closed-form:two-exceptional-2")
    r = fq.count_closed_form(inst(F5, (1, 4), 0))
    assert (r.count, r.method) == (0, "closed-form:subset-sums-nonzero")


def test_closed_form_not_applicable():
    # 1+2+3+4 = 0 and 1+4 = 0, no repeated coefficient
    assert fq.count_closed_form(inst(F5, (1, 2, 3, 4), 0)) is None
    with pytest.raises(NotApplicableError):
        fq.count(inst(F5, (1, 2, 3, 4), 0), "closed")


def test_scaled_all_equal():
    for b in range(9):
        want = naive(F9, (5, 5, 5), b)
        assert fq.count_closed_form(inst(F9, (5, 5, 5), b)).count == want


def test_two_exceptional_scaled():
    # lambda = 2 repeated, exceptional pair absorbs the rescaling
    for a1, a2 in itertools.product(range(7), repeat=2):
        r = fq.count_closed_form(inst(F7, (a1, a2, 2, 2), 3))
        assert r.count == naive(F7, (a1, a2, 2, 2), 3)


# --- units ------------------------------------------------------------------------

def test_units_examples():
    assert fq.count_units(inst(F5, (1, 4), 1, "units")).count == 3
    assert fq.count_units(inst(F5, (1, 4), 0, "units")).count == 0
    assert fq.count_units(inst(F5, (1,), 2, "units")).count == 1


def test_units_match_naive():
    for spec in (F3, F4, F5, F7):
        for coeffs in itertools.product(range(spec.q), repeat=3):
            for b in (0, 1):
                got = fq.count_units(inst(spec, coeffs, b, "units")).count
                assert got == naive(spec, coeffs, b, "units")


# --- existence ------------------------------------------------------------------------

def test_existence_examples():
    assert not fq.exists_distinct(inst(F5, (0, 0, 0), 1))
    assert not fq.exists_distinct(inst(F5, (2,) * 5, 1))
    assert fq.exists_distinct(inst(F5, (1, 4), 1))


def test_existence_matches_count():
    for spec in (make_field(2), F3, F4, F5):
        for k in range(1, spec.q + 1):
            for coeffs in itertools.islice(itertools.product(range(spec.q), repeat=k), 300):
                for b in range(spec.q):
                    i = inst(spec, coeffs, b)
                    assert fq.exists_distinct(i) == (fq.count_brute(i).count > 0)


# --- census ------------------------------------------------------------------------------

@pytest.mark.parametrize("q,expected", [(3, 0), (4, 3), (5, 4), (7, 90), (8, 672), (9, 4680)])
def test_census_values(q, expected):
    spec = {3: F3, 4: F4, 5: F5, 7: F7, 8: make_field(2, 3), 9: F9}[q]
    assert fq.perm_poly_census(spec) == expected


@pytest.mark.parametrize("spec", [F3, F4, F5, F7], ids=str)
def test_census_matches_interpolation(spec):
    assert fq.perm_poly_census(spec) == fq.census_by_interpolation(spec)


def test_census_rejects_tiny_field():
    with pytest.raises(NotApplicableError):
        fq.perm_poly_census(make_field(2))


def test_interpolation_recovers_polynomial():
    values = [F7.add(F7.pow(x, 3), F7.mul(2, x)) for x in range(7)]
    assert fq.interpolate(values, F7) == [0, 2, 0, 1, 0, 0, 0]


# --- dispatcher ------------------------------------------------------------------------------

def test_dispatch_examples():
    r = fq.count(inst(F5, (1, 4), 1))
    assert (r.count, r.method) == (5, "closed-form:subset-sums-nonzero")
    assert fq.count(inst(F5, (1, 4), 1), "brute").count == 5
    r = fq.count(inst(F9, (1, 1, 1), 0))
    assert r.method == "closed-form:all-equal"
    assert r.count == fq.count_brute(inst(F9, (1, 1, 1), 0)).count == 72


def test_dispatch_units_rejects_full_only_engines():
    with pytest.raises(NotApplicableError):
        fq.count(inst(F5, (1, 4), 1, "units"), "sieve")


def test_pigeonhole():
    for method in fq.METHODS:
        assert fq.count(inst(F3, (1, 1, 1, 1), 0), method).count == 0


# --- properties ----------------------------------------------------------------------------------

@st.composite
def instances(draw, max_k=5):
    spec = draw(st.sampled_from(SMALL_FIELDS))
    k = draw(st.integers(1, max_k))
    coeffs = draw(st.lists(st.integers(0, spec.q - 1), min_size=k, max_size=k))
    if draw(st.booleans()):
        coeffs[-1] = spec.neg(spec.total(coeffs[:-1]))
    b = draw(st.integers(0, spec.q - 1))
    return Instance(spec, coeffs, b)


@settings(max_examples=300, deadline=None)
@given(instances())
def test_engines_agree(i):
    want = fq.count_brute(i).count
    assert fq.count_recurrence(i).count == want
    assert fq.count_sieve(i).count == want
    assert fq.count_partition_oracle(i).count == want
    closed = fq.count_closed_form(i)
    if closed is not None:
        assert closed.count == want


@settings(max_examples=100, deadline=None)
@given(instances(max_k=4))
def test_total_mass_and_target_classes(i):
    spec = i.spec
    table = [fq.count_sieve(Instance(spec, i.coeffs, b)).count for b in range(spec.q)]
    assert sum(table) == falling_factorial(spec.q, i.k)
    if spec.total(i.coeffs):
        assert len(set(table)) == 1
    else:
        assert len(set(table[1:])) <= 1


@settings(max_examples=100, deadline=None)
@given(instances(max_k=4), st.data())
def test_scale_and_order_invariance(i, data):
    spec = i.spec
    lam = data.draw(st.integers(1, spec.q - 1))
    base = fq.count_sieve(i).count
    scaled = Instance(spec, [spec.mul(lam, a) for a in i.coeffs], spec.mul(lam, i.target))
    assert fq.count_sieve(scaled).count == base
    shuffled = data.draw(st.permutations(i.coeffs))
    assert fq.count_recurrence(Instance(spec, shuffled, i.target)).count == base


@settings(max_examples=100, deadline=None)
@given(instances(max_k=5))
def test_zero_sum_drop(i):
    spec = i.spec
    if spec.total(i.coeffs) or i.k < 2:
        return
    for j in range(i.k):
        rest = i.coeffs[:j] + i.coeffs[j + 1:]
        assert fq.count_brute(i).count == spec.q * fq.count_brute(Instance(spec, rest, i.target, "units")).count
    assert len({fq.delta(i.coeffs[:j] + i.coeffs[j + 1:], spec) for j in range(i.k)}) == 1


def test_exact_division_trap():
    assert fq.exact_div(-12, 4) == -3
    with pytest.raises(fq.InexactDivisionError):
        fq.exact_div(5, 2)
