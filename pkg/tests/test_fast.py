import random
from fractions import Fraction
from math import isqrt

import numpy as np
import pytest

from mobsum.fast import (
    FloorValueMap,
    MertensEvaluator,
    default_crossover,
    g_recursive,
    g_recursive_exact,
    g_recursive_float,
    m_recursive,
    mertens_floor_map,
    mertens_prefix_recursive,
    quotient_blocks,
)
from mobsum.summatory import big_m, g_exact, g_float


def test_quotient_blocks_examples():
    assert quotient_blocks(1) == [(1, 1, 1)]
    assert quotient_blocks(10) == [(10, 1, 1), (5, 2, 2), (3, 3, 3), (2, 4, 5), (1, 6, 10)]
    assert len(quotient_blocks(100)) <= 2 * 10  # 2 ceil(sqrt(x))


def test_quotient_blocks_partition_exhaustive():
    for x in range(1, 10**4 + 1):
        blocks = quotient_blocks(x)
        cursor = 1
        for q, lo, hi in blocks:
            assert lo == cursor and hi >= lo
            assert x // lo == q and x // hi == q
            if hi < x:
                assert x // (hi + 1) != q
            cursor = hi + 1
        assert cursor == x + 1
        assert len(blocks) <= 2 * (isqrt(x) + 1)


def test_quotient_blocks_partition_random_large():
    rng = random.Random(3)
    for _ in range(20):
        x = rng.randrange(10**6, 10**9)
        blocks = quotient_blocks(x)
        assert blocks[0] == (x, 1, 1)
        assert blocks[-1][2] == x
        for (q1, _, h1), (_, l2, _) in zip(blocks, blocks[1:]):
            assert l2 == h1 + 1
        assert len(blocks) <= 2 * (isqrt(x) + 1)


def test_m_recursive_examples():
    assert m_recursive(1) == 1
    assert m_recursive(6) == -1


def test_m_recursive_matches_sieve_small():
    for x in range(1, 2001):
        assert m_recursive(x) == big_m(x), x


def test_m_recursive_prefix_fill_matches_sieve():
    from mobsum.summatory import moebius_values_upto

    n = 20000
    rec = mertens_prefix_recursive(n)
    direct = np.cumsum(moebius_values_upto(n), dtype=np.int64)
    assert np.array_equal(rec[1:], direct[1:])


def test_m_recursive_shared_evaluator_random():
    ev = MertensEvaluator(10**6)
    rng = random.Random(11)
    xs = [rng.randrange(1, 10**6) for _ in range(25)]
    from mobsum.summatory import moebius_values_upto

    direct = np.cumsum(moebius_values_upto(10**6), dtype=np.int64)
    for x in xs:
        assert ev.value(x) == int(direct[x]), x


def test_m_recursive_crossover_knob():
    for k in (50, 316, 5000):
        assert m_recursive(10**5, crossover=k) == -48


def test_floor_value_map_structure():
    value, fmap = mertens_floor_map(10**4)
    assert isinstance(fmap, FloorValueMap)
    assert value == -23
    # every large key is an actual quotient nu = x // q
    quotients = {q for q, _, _ in quotient_blocks(10**4)}
    for nu, m in fmap.large.items():
        arg = 10**4 // nu
        assert arg in quotients
        assert fmap.get(arg) == m == big_m(arg)
    # small side mirrors the sieve prefix
    for k in (1, 17, fmap.crossover):
        assert fmap.get(k) == big_m(k)


def test_memo_growth_sqrt_like():
    for x in (10**4, 10**6, 10**8):
        _, fmap = mertens_floor_map(x)
        assert fmap.distinct_count() <= 3 * isqrt(x), x


def test_g_recursive_exact_examples():
    assert g_recursive_exact(1) == 1
    assert g_recursive_exact(3) == Fraction(1, 6)


def test_g_recursive_exact_matches_direct_to_500():
    from mobsum.fast import _ExactGTables

    tabs = _ExactGTables(500, default_crossover(500))
    pre_g = {x: g_exact(x) for x in range(1, 501)}
    for x in range(1, 501):
        assert g_recursive_exact(x, tables=tabs) == pre_g[x], x


def test_g_recursive_float_contains_exact():
    for x in (1, 2, 10, 100, 999, 1500):
        r = g_recursive_float(x)
        assert abs(Fraction(r.value) - g_exact(x)) <= Fraction(r.err), x


def test_g_recursive_float_matches_linear_scan():
    x = 10**5
    rec = g_recursive_float(x)
    lin = g_float(x)
    assert abs(rec.value - lin.value) <= rec.err + lin.err


def test_g_recursive_dispatch():
    assert isinstance(g_recursive(100), Fraction)
    out = g_recursive(100, exact=False)
    assert hasattr(out, "err")
    assert isinstance(g_recursive(10**5, cutoff=10**4), type(out))


def test_g_recursive_crossover_knob():
    expect = g_exact(3000)
    for k in (60, 300, 2000):
        assert g_recursive_exact(3000, crossover=k) == expect


def test_validation():
    with pytest.raises(ValueError):
        m_recursive(0)
    with pytest.raises(ValueError):
        g_recursive_exact(0)
    with pytest.raises(ValueError):
        quotient_blocks(0)
