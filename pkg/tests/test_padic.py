from fractions import Fraction
from math import factorial

import pytest
from hypothesis import assume, given, settings, strategies as st

from unitsieve.errors import DomainError, UnsupportedError
from unitsieve.padic import (
    PadicNumber,
    coleman_weight2,
    disk_expansion,
    frobenius_diff,
    frobenius_diff1,
    li_series,
    padic_li,
    padic_log,
    teichmuller,
    valuation,
)

PRIMES = [3, 5, 7, 11]
small = st.fractions(min_value=-50, max_value=50, max_denominator=50).filter(lambda x: x != 0)


def off_one(x, p):
    """x avoids the residue disk of 1 (x = 0 mod p and poles are fine)."""
    v = valuation(x, p)
    return v != 0 or (x.numerator - x.denominator) % p != 0


def vdiff(a, b):
    d = a - b
    return d.valuation


def fraction_log_near_one(x, p, prec):
    """Exact partial sum of log(1 + y) with enough terms for precision prec."""
    y = x - 1
    vy = valuation(y, p)
    total, k = Fraction(0), 1
    while k * vy - (k.bit_length()) * 1 < prec + 10 or k < 4:
        total += Fraction((-1) ** (k + 1), k) * y ** k
        k += 1
    return total


def test_rational_embedding_is_a_ring_map():
    p, prec = 7, 15
    a, b = Fraction(3, 49), Fraction(-10, 11)
    A, B = PadicNumber.from_rational(a, p, prec), PadicNumber.from_rational(b, p, prec)
    assert A + B == PadicNumber.from_rational(a + b, p, prec)
    assert A * B == PadicNumber.from_rational(a * b, p, prec)
    assert A / B == PadicNumber.from_rational(a / b, p, prec)
    assert A.valuation == -2 and B.valuation == 0
    assert PadicNumber.from_rational(7 ** 20, p, prec).is_zero()


@settings(max_examples=200, deadline=None)
@given(small, small, st.sampled_from(PRIMES))
def test_arithmetic_agrees_with_fractions(a, b, p):
    prec = 12
    A, B = PadicNumber.from_rational(a, p, prec), PadicNumber.from_rational(b, p, prec)
    for got, exact in [(A + B, a + b), (A - B, a - b), (A * B, a * b), (A / B, a / b)]:
        target = PadicNumber.from_rational(exact, p, prec + 20)
        d = got - target
        assert d.is_zero() or d.valuation >= got.prec


def test_precision_bookkeeping():
    a = PadicNumber.from_rational(5, 5, 10)  # 5 + O(5^10)
    b = PadicNumber.from_rational(Fraction(1, 5), 5, 10)
    assert (a * b).prec == min(10 + -1, 10 + 1)
    assert (b / a).valuation == -2
    assert a.with_precision(4).prec == 4
    assert a.with_precision(40).prec == 10


def test_teichmuller():
    t = teichmuller(2, 5, 10)
    assert t.unit % 25 == 7
    assert t ** 4 == 1
    assert teichmuller(3, 7, 12) ** 6 == 1


def test_log_against_series_oracle():
    p, prec = 3, 20
    x = Fraction(4)  # 4 = 1 mod 3
    assert padic_log(x, p, prec) == PadicNumber.from_rational(fraction_log_near_one(x, p, prec), p, prec)
    assert padic_log(4, 3, prec) == 2 * padic_log(2, 3, prec)


@settings(max_examples=100, deadline=None)
@given(small, small, st.sampled_from(PRIMES))
def test_log_is_a_homomorphism(a, b, p):
    prec = 15
    lhs = padic_log(a * b, p, prec)
    rhs = padic_log(a, p, prec) + padic_log(b, p, prec)
    assert vdiff(lhs, rhs) >= prec - 1


def test_iwasawa_branch():
    assert padic_log(5, 5, 10).is_zero()
    assert padic_log(-1, 7, 10).is_zero()
    assert padic_log(teichmuller(3, 7, 15), 7, 15).valuation >= 14


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_li_series_against_fraction_sum(p, n):
    prec = 15
    x = Fraction(p, 2)
    exact = sum(x ** k / Fraction(k) ** n for k in range(1, 120))
    assert vdiff(li_series(n, x, p, prec), PadicNumber.from_rational(exact, p, prec + 5)) >= prec


@pytest.mark.parametrize("p", PRIMES)
def test_li1_is_minus_log_one_minus_x(p):
    for x in [Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(p, 4), Fraction(3, p)]:
        if not off_one(x, p):
            continue
        assert vdiff(padic_li(1, x, p, 20), -padic_log(1 - x, p, 20)) >= 18


def test_li1_at_two_vanishes():
    assert padic_li(1, 2, 5, 20).is_zero()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_even_polylogs_at_minus_one_vanish(p):
    # Li_n(-1) is a multiple of the p-adic zeta value at n, which is 0 for even n
    for n in (2, 4):
        assert padic_li(n, -1, p, 20).valuation >= 20 - (n + 2)


@settings(max_examples=60, deadline=None)
@given(small, st.sampled_from(PRIMES), st.integers(1, 4))
def test_distribution_relation(x, p, n):
    assume(off_one(x, p) and off_one(-x, p) and off_one(x * x, p))
    prec = 20
    lhs = padic_li(n, x * x, p, prec)
    rhs = 2 ** (n - 1) * (padic_li(n, x, p, prec) + padic_li(n, -x, p, prec))
    assert vdiff(lhs, rhs) >= prec - (n + 2)


@settings(max_examples=60, deadline=None)
@given(small, st.sampled_from(PRIMES), st.integers(1, 4))
def test_frobenius_difference(x, p, n):
    assume(off_one(x, p))
    prec = 20
    lhs = frobenius_diff(n, x, p, prec)
    rhs = padic_li(n, x, p, prec + 2 * n) - padic_li(n, x ** p, p, prec + 2 * n) / p ** n
    assert vdiff(lhs, rhs) >= prec - (n + 2)


@settings(max_examples=40, deadline=None)
@given(small, st.sampled_from(PRIMES))
def test_frobenius_difference_closed_form(x, p):
    assume(off_one(x, p) and valuation(x, p) >= 0)
    assert vdiff(frobenius_diff(1, x, p, 18), frobenius_diff1(x, p, 18)) >= 16


@settings(max_examples=40, deadline=None)
@given(small, st.sampled_from(PRIMES), st.integers(1, 4))
def test_inversion(x, p, n):
    assume(off_one(x, p))
    prec = 20
    lhs = padic_li(n, x, p, prec) + (-1) ** n * padic_li(n, 1 / x, p, prec)
    rhs = -padic_log(x, p, prec) ** n / factorial(n)
    assert vdiff(lhs, rhs) >= prec - (n + 2)


@settings(max_examples=40, deadline=None)
@given(small, st.sampled_from(PRIMES))
def test_reflection(x, p):
    assume(x != 1 and off_one(x, p) and off_one(1 - x, p))
    prec = 20
    total = padic_li(2, x, p, prec) + padic_li(2, 1 - x, p, prec) \
        + padic_log(x, p, prec) * padic_log(1 - x, p, prec)
    assert total.valuation >= prec - 4


@pytest.mark.parametrize("p", [5, 7])
def test_precision_is_sound(p):
    for n in (1, 2, 3):
        for x in [Fraction(2), Fraction(3, 4), Fraction(1, p)]:
            lo, hi = padic_li(n, x, p, 20), padic_li(n, x, p, 30)
            assert vdiff(lo, hi) >= 20


def test_disk_expansion():
    p, prec = 7, 15
    exp3 = disk_expansion(3, 3, p, prec)
    for x in [Fraction(3), Fraction(10), Fraction(3, 8)]:  # all = 3 mod 7
        s = padic_log(x, p, prec + 4)
        assert vdiff(exp3.evaluate(s), padic_li(3, x, p, prec)) >= prec - 5
        assert vdiff(exp3.derivative().evaluate(s), padic_li(2, x, p, prec)) >= prec - 5
    with pytest.raises(DomainError):
        disk_expansion(2, 1, p)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("x", [2, -1, Fraction(1, 2)])
def test_coleman_weight2_vanishes_on_two_units(p, x):
    assert coleman_weight2(x, p, 20).valuation >= 16


def test_coleman_weight2_control_point():
    assert coleman_weight2(Fraction(3, 5), 7, 20).valuation < 10


def test_domain_and_support_errors():
    with pytest.raises(DomainError):
        padic_li(2, 6, 5)
    with pytest.raises(DomainError):
        padic_li(2, 1, 5)
    with pytest.raises(UnsupportedError):
        padic_li(2, 3, 2)
    with pytest.raises(DomainError):
        padic_log(0, 5)
