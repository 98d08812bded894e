import math

import mpmath as mp
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from fibzeta import (
    DomainError,
    MEMBER,
    MEMBER_EVEN_INDEX,
    MEMBER_ODD_INDEX,
    NOT_MEMBER,
    NormPlusOneError,
    NotSquarefreeError,
    fib,
    fib_upto,
    is_fib,
    iter_sequence,
    lucas,
    make_field,
    r1,
    sequence_terms,
)
from fibzeta.quadfield import UnitElement, _unit_by_search, is_square


# ---------------------------------------------------------------- construction

def test_field_d5_unit_is_golden_ratio():
    f = make_field(5)
    assert (f.eps.a, f.eps.b) == (1, 1)
    assert f.q == 5 and f.ell == 4
    assert f.norm_eps == -1
    assert abs(f.log_eps_float - math.log((1 + math.sqrt(5)) / 2)) < 1e-15


def test_field_d3_unit_trace_and_norm():
    f = make_field(3)
    # 2 + sqrt(3): trace 4, norm +1
    assert f.eps.trace == 4
    assert f.norm_eps == 1
    assert f.q == 12 and f.ell == 1


def test_field_d10_unit_trace_and_norm():
    f = make_field(10)
    assert f.eps.trace == 6
    assert f.norm_eps == -1


def test_field_d13_unit():
    # brute-force oracle: smallest (a + b sqrt(13))/2 > 1 with norm +-1
    found = _unit_by_search(13, 10)
    assert found == (3, 1)
    f = make_field(13)
    assert (f.eps.a, f.eps.b) == (3, 1)
    assert f.norm_eps == -1


def test_field_d7_unit():
    f = make_field(7)
    # 8 + 3 sqrt(7), norm +1
    assert (f.eps.a, f.eps.b) == (16, 3)
    assert f.norm_eps == 1


@pytest.mark.parametrize("bad", [4, 8, 9, 12, 18, 25, 50, 98])
def test_not_squarefree_rejected(bad):
    with pytest.raises(NotSquarefreeError):
        make_field(bad)


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_too_small_rejected(bad):
    with pytest.raises(DomainError):
        make_field(bad)


def test_continued_fraction_agrees_with_search_for_small_d():
    squarefree = [d for d in range(2, 102) if all(d % (p * p) for p in range(2, 11))]
    for d in squarefree:
        f = make_field(d)
        assert abs(f.eps.norm) == 1
        found = _unit_by_search(f.q, f.eps.b)
        assert found == (f.eps.a, f.eps.b), f"D={d}"


def test_unit_element_validation():
    with pytest.raises(DomainError):
        UnitElement(1, 1, 12)  # (1 + sqrt(12))/2 is not an algebraic integer


def test_log_eps_precision_follows_settings():
    from fibzeta import make_settings

    f = make_field(5, make_settings(precision_dps=80))
    with mp.workdps(90):
        ref = mp.log((1 + mp.sqrt(5)) / 2)
        assert abs(f.log_eps - ref) < mp.mpf(10) ** (-78)


# ------------------------------------------------------------------- sequences

def test_d3_prefixes():
    f = make_field(3)
    terms = sequence_terms(f, 6)
    assert [t.fib for t in terms] == [0, 1, 4, 15, 56, 209]
    assert [t.lucas for t in terms] == [2, 4, 14, 52, 194, 724]


def test_d10_prefixes():
    f = make_field(10)
    terms = sequence_terms(f, 5)
    assert [t.fib for t in terms] == [0, 1, 6, 37, 228]
    assert [t.lucas for t in terms] == [2, 6, 38, 234, 1442]


def test_d5_is_standard_fibonacci_lucas():
    f = make_field(5)
    fibs = [0, 1]
    lucs = [2, 1]
    for _ in range(50):
        fibs.append(fibs[-1] + fibs[-2])
        lucs.append(lucs[-1] + lucs[-2])
    terms = sequence_terms(f, 51)
    assert [t.fib for t in terms] == fibs[:51]
    assert [t.lucas for t in terms] == lucs[:51]
    assert fib(f, 7) == 13
    assert lucas(f, 3) == 4
    assert 4 * 4 - 5 * 2 * 2 == -4  # L(3)^2 - q F(3)^2 = 4 N(eps)^3


@pytest.mark.parametrize("d", [2, 3, 5, 7, 10, 13])
def test_norm_identity(d):
    f = make_field(d)
    for t in sequence_terms(f, 60):
        assert t.lucas**2 - f.q * t.fib**2 == 4 * f.norm_eps**t.index


@pytest.mark.parametrize("d", [2, 5, 10, 13])
def test_binet_high_precision(d):
    """Recurrence values match the closed form (eps^n -+ eps^-n)/sqrt(q) to 1e-20."""
    f = make_field(d)
    with mp.workdps(120):
        eps = (f.eps.a + f.eps.b * mp.sqrt(f.q)) / 2
        eps_bar = f.norm_eps / eps
        sq = mp.sqrt(f.q)
        for t in sequence_terms(f, 201):
            fib_closed = (eps**t.index - eps_bar**t.index) / sq
            luc_closed = eps**t.index + eps_bar**t.index
            if t.index > 0:
                assert abs(fib_closed - t.fib) / max(t.fib, 1) < mp.mpf("1e-20")
            assert abs(luc_closed - t.lucas) / max(abs(t.lucas), 1) < mp.mpf("1e-20")


def test_fib_strictly_increasing_from_one():
    f = make_field(10)
    vals = [t.fib for t in sequence_terms(f, 40)]
    assert all(b > a for a, b in zip(vals[1:], vals[2:]))


# ------------------------------------------------------------------ membership

def test_is_fib_examples_d5():
    f = make_field(5)
    r = is_fib(f, 8)
    assert r.verdict == MEMBER_EVEN_INDEX and r.witness == 18
    assert is_fib(f, 4).verdict == NOT_MEMBER
    r = is_fib(f, 5)
    assert r.verdict == MEMBER_ODD_INDEX and r.witness == 11


def test_is_fib_witness_is_lucas_value():
    f = make_field(10)
    r = is_fib(f, 6)
    assert r.verdict == MEMBER_EVEN_INDEX
    assert r.witness == lucas(f, 2)  # 38 = 2 * 19, from Y^2 = 10*36 + 1


def test_is_fib_rejects_split_on_norm_plus_one():
    f = make_field(3)
    with pytest.raises(NormPlusOneError):
        is_fib(f, 4, split=True)
    # without the split the plain member verdict works
    assert is_fib(f, 4).verdict == MEMBER
    assert is_fib(f, 5).verdict == NOT_MEMBER


def test_is_fib_invalid_input():
    f = make_field(5)
    with pytest.raises(DomainError):
        is_fib(f, 0)


@pytest.mark.parametrize("d", [2, 3, 5, 7, 10, 13])
def test_membership_matches_enumeration(d):
    f = make_field(d)
    bound = 100_000
    odd_set = set()
    even_set = set()
    for t in fib_upto(f, bound):
        (odd_set if t.index % 2 else even_set).add(t.fib)
    members = odd_set | even_set
    for n in range(1, bound + 1):
        r = is_fib(f, n)
        assert bool(r) == (n in members), (d, n)
        if f.is_norm_minus_one and r:
            if r.verdict == MEMBER_ODD_INDEX:
                assert n in odd_set, (d, n)
            else:
                assert n in even_set, (d, n)


# -------------------------------------------------------------------------- r1

def test_r1_trivial_values():
    assert r1(0) == 1
    assert r1(4) == 2
    assert r1(3) == 0
    assert r1(-4) == 0


@given(st.integers(min_value=-100, max_value=100_000))
@hyp_settings(max_examples=300, deadline=None)
def test_r1_counts_integer_roots(n):
    brute = sum(1 for x in range(-400, 401) if x * x == n)
    assert r1(n) == brute


@given(st.integers(min_value=0, max_value=10**12))
@hyp_settings(max_examples=200, deadline=None)
def test_is_square_consistent_with_isqrt(n):
    assert is_square(n) == (math.isqrt(n) ** 2 == n)


def test_iter_sequence_is_lazy_and_consistent():
    f = make_field(13)
    it = iter_sequence(f)
    first = [next(it) for _ in range(8)]
    assert [t.fib for t in first] == [0, 1, 3, 10, 33, 109, 360, 1189]
