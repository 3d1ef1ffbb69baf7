import math
from fractions import Fraction

import pytest

from mobsum.identities import (
    CutoffExceededError,
    IdentityCheck,
    abel_rearrangement_check,
    abel_scan,
    capital_f,
    decomposition_check,
    decomposition_scan,
    divisor_sum,
    gram_identity,
    gram_scan,
    prime_power_tail,
)
from mobsum.summatory import g_exact, h_direct

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)


def test_divisor_sum_examples():
    assert divisor_sum(1) == 1
    assert divisor_sum(12) == 0
    assert divisor_sum(7) == 0


def test_divisor_sum_brute_force_cross_check():
    # via full divisor lists, independent of the enumeration under test
    from mobsum.sieve import moebius_oracle

    for t in (1, 2, 36, 97, 360):
        divisors = [d for d in range(1, t + 1) if t % d == 0]
        assert divisor_sum(t) == sum(moebius_oracle(d) for d in divisors)


def test_divisor_sum_exhaustive_small():
    for t in range(2, 10**4 + 1):
        assert divisor_sum(t) == 0, t


def test_gram_examples():
    for x, terms in ((1, [g_exact(1)]), (2, [g_exact(2), Fraction(1, 2) * g_exact(1)])):
        check = gram_identity(x)
        assert check.holds and check.lhs == 1
        assert sum(terms) == 1
    c3 = gram_identity(3)
    assert c3.holds
    # by hand: g(3) + (1/2) g(3/2) + (1/3) g(1) = 1/6 + 1/2 + 1/3
    assert Fraction(1, 6) + Fraction(1, 2) + Fraction(1, 3) == 1


def test_gram_exhaustive_2000():
    checks = gram_scan(1, 2000)
    assert all(c.holds for c in checks)
    assert all(c.slack == 0.0 for c in checks)


def test_gram_cutoff_error():
    with pytest.raises(CutoffExceededError):
        gram_identity(50, cutoff=10)


def test_capital_f_examples():
    r = capital_f(2, 3)
    assert abs(r.value - (-0.5)) <= r.err + 1e-15
    r = capital_f(3, 3)
    assert abs(r.value - (-1 / 3)) <= r.err + 1e-15
    r = capital_f(2, 4)
    assert abs(r.value - (-0.5)) <= r.err + 1e-15


def test_capital_f_domain_errors():
    with pytest.raises(ValueError):
        capital_f(4, 10)  # not prime
    with pytest.raises(ValueError):
        capital_f(7, 5)  # p > x


def test_capital_f_truncation_lossless():
    # extending the series one power past the cutoff adds exactly zero:
    # g drops to 0 below 1, so the brute sum over more powers agrees
    for p, x in ((2, 100), (3, 50), (5, 30)):
        r = capital_f(p, x)
        brute = 0.0
        pi = p
        for _ in range(40):
            brute -= float(g_exact(Fraction(x, pi))) / pi
            pi *= p
        assert abs(r.value - brute) <= r.err + 1e-13


def test_decomposition_examples(tables_2k):
    c3 = decomposition_check(3)
    assert c3.holds
    # tail empty below 4 since 2^2 > 3
    assert prime_power_tail(3).value == 0.0
    c1 = decomposition_check(1)
    assert c1.holds and c1.lhs.value == 0.0
    c4 = decomposition_check(4, tables=tables_2k)
    assert c4.holds
    # by hand: h(4) = (log2/2) g(2) + (log3/3) g(4/3); tail(4) = (log2/4) g(1)
    h4 = LOG2 / 2 * 0.5 + LOG3 / 3 * 1.0
    tail4 = LOG2 / 4
    f4 = -LOG2 / 2 - LOG3 / 3
    assert abs((-h4 - tail4) - f4) < 1e-15
    assert abs(c4.lhs.value - f4) < 1e-13


def test_decomposition_scan_holds(tables_2k):
    checks = decomposition_scan(1, 2000, tables=tables_2k)
    assert all(c.holds for c in checks)
    assert max(c.slack for c in checks) < 1e-9


def test_abel_examples(tables_2k):
    c1 = abel_rearrangement_check(1)
    assert c1.holds
    assert abs(c1.lhs.value - (-1.0)) < 1e-12
    assert abs(c1.rhs.value - (-1.0)) < 1e-12
    c2 = abel_rearrangement_check(2)
    assert c2.holds
    assert abs(c2.lhs.value - (h_direct(2).value - 1.0)) < 1e-12
    c10 = abel_rearrangement_check(10, tables=tables_2k)
    assert c10.holds and c10.slack <= 1e-12


def test_abel_scan_holds(tables_2k):
    checks = abel_scan(1, 2000, tables=tables_2k)
    assert all(c.holds for c in checks)
    assert max(c.slack for c in checks) < 1e-9


def test_abel_brute_force_cross_check():
    # term-by-term with scalar operations, no shared tables
    from mobsum.summatory import epsilon

    for x in (7, 23):
        rhs = 0.0
        for nu in range(1, x + 1):
            e = epsilon(nu).value
            rhs += e * (float(g_exact(Fraction(x, nu))) - float(g_exact(Fraction(x, nu + 1))))
        for nu in range(1, x):
            e = epsilon(nu).value
            rhs += e / (nu + 1) * float(g_exact(Fraction(x, nu + 1)))
        lhs = h_direct(x).value - 1.0
        assert abs(lhs - rhs) < 1e-12, x
        check = abel_rearrangement_check(x)
        assert abs(check.rhs.value - rhs) < 1e-12, x


def test_identitycheck_shape():
    c = gram_identity(5)
    assert isinstance(c, IdentityCheck)
    assert c.name == "gram_unit_sum"
    assert c.x == 5 and c.rhs == 1
