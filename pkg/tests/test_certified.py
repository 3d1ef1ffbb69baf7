import math
import random

import numpy as np
import pytest

from mobsum.certified import (
    EPS,
    EULER_GAMMA,
    CertifiedFloat,
    CompensatedSum,
    compare_le,
    compare_lt,
    from_exact,
)


def test_empty_sum_is_exact_zero():
    assert CompensatedSum().result() == CertifiedFloat(0.0, 0.0)


def test_single_term_has_no_rounding_error():
    acc = CompensatedSum()
    acc.add(0.1)
    r = acc.result()
    assert r.value == 0.1
    assert r.err == 0.0


def test_single_block_singleton_exact():
    acc = CompensatedSum()
    acc.add_block(np.array([1.0]))
    assert acc.result().err == 0.0


def test_bound_contains_true_sum():
    rng = random.Random(1)
    for _ in range(50):
        terms = [rng.uniform(-1, 1) for _ in range(1000)]
        acc = CompensatedSum()
        for t in terms:
            acc.add(t)
        r = acc.result()
        exact = math.fsum(terms)
        assert abs(r.value - exact) <= r.err + abs(exact) * EPS


def test_block_and_scalar_paths_agree_within_bounds():
    rng = np.random.default_rng(2)
    terms = rng.uniform(-1, 1, size=5000)
    a = CompensatedSum()
    for t in terms.tolist():
        a.add(t)
    b = CompensatedSum()
    b.add_block(terms)
    ra, rb = a.result(), b.result()
    assert abs(ra.value - rb.value) <= ra.err + rb.err


def test_negative_err_rejected():
    with pytest.raises(ValueError):
        CertifiedFloat(1.0, -1e-20)


def test_interval_arithmetic():
    a = CertifiedFloat(1.0, 0.25)
    b = CertifiedFloat(2.0, 0.5)
    s = a.add(b)
    assert s.value == 3.0 and s.err >= 0.75
    p = a.mul(b)
    assert p.value == 2.0
    assert p.err >= 1.0 * 0.5 + 2.0 * 0.25
    d = b.div_exact(4.0)
    assert d.value == 0.5 and d.err >= 0.125


def test_from_exact_is_tight():
    from fractions import Fraction

    assert from_exact(Fraction(1, 2)) == CertifiedFloat(0.5, 0.0)
    third = from_exact(Fraction(1, 3))
    assert abs(third.value - 1 / 3) == 0.0
    assert 0 < third.err <= EPS


def test_compare_verdicts():
    assert compare_le(CertifiedFloat(1.0, 0.1), CertifiedFloat(2.0, 0.1)) == "pass"
    assert compare_le(CertifiedFloat(3.0, 0.1), CertifiedFloat(2.0, 0.1)) == "violation"
    assert compare_le(CertifiedFloat(2.0, 0.2), CertifiedFloat(2.1, 0.2)) == "indeterminate"
    assert compare_lt(CertifiedFloat(1.0, 0.0), CertifiedFloat(1.0, 0.0)) == "violation"


def test_gamma_constant_digits():
    # correctly rounded double of 0.57721566490153286060...
    assert EULER_GAMMA == 0.5772156649015329
