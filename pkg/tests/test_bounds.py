import math

import pytest

from mobsum.bounds import (
    BoundReport,
    check_g_bound,
    check_harmonic_bound,
    check_mangoldt_bound,
    check_tail_bound,
    check_theta_bounds,
    empirical_G,
    gamma_oracle,
    h_convergence,
    log_square_sum_constant,
    m_over_x_convergence,
    tail_bound_scan,
)
from mobsum.certified import EULER_GAMMA


def test_g_bound_examples():
    r = check_g_bound(1, 100)
    assert r.passed and r.max_ratio == 1.0  # attained at x = 1
    r2 = check_g_bound(2, 2)
    assert r2.passed and abs(r2.max_ratio - 0.5) < 1e-15


def test_g_bound_spans_cutoff():
    r = check_g_bound(1, 1500, cutoff=1000)
    assert r.passed
    assert r.checked == 1500


def test_mangoldt_examples(tables_2k):
    r = check_mangoldt_bound(1, 1, tables=tables_2k)
    assert r.passed and r.max_ratio == 0.0
    assert r.gamma == EULER_GAMMA
    r3 = check_mangoldt_bound(3, 3, tables=tables_2k)
    assert r3.passed
    lhs = r3.max_ratio * (3 + EULER_GAMMA)
    expect = abs(math.log(3.0) / 6 + (math.log(2.0) / 2 + math.log(3.0) / 3))
    assert abs(lhs - expect) < 1e-12
    assert check_mangoldt_bound(1, 2000, tables=tables_2k).passed


def test_theta_bounds_examples():
    assert check_theta_bounds(1, 1).passed
    r = check_theta_bounds(10, 10)
    assert r.passed
    assert abs(r.max_ratio - math.log(210.0) / 20) < 1e-12
    assert check_theta_bounds(1, 10**5).passed


def test_theta_bounds_offset_range_matches_full():
    a = check_theta_bounds(50, 3000)
    b = check_theta_bounds(1, 3000)
    assert a.passed and b.passed
    assert abs(a.max_ratio - b.max_ratio) < 1e-15  # max sits above x = 50


def test_harmonic_bound_examples(tables_2k):
    r1 = check_harmonic_bound(1, 1, tables=tables_2k)
    assert r1.passed and r1.max_ratio == 1.0  # equality at x = 1
    r2 = check_harmonic_bound(2, 2, tables=tables_2k)
    assert r2.passed
    assert abs(r2.max_ratio - 1.5 / (math.log(2.0) + 1)) < 1e-12
    assert check_harmonic_bound(1, 2000, tables=tables_2k).passed


def test_tail_constant_certified():
    c = log_square_sum_constant()
    assert abs(c.value - 0.9375482543) < 1e-9
    assert c.err < 1e-10


def test_tail_bound_examples(tables_2k):
    r3 = check_tail_bound(3)
    assert r3.passed and r3.max_ratio == 0.0  # tail empty, 2^2 > 3
    assert check_tail_bound(1).passed
    scan = tail_bound_scan(1, 2000, tables=tables_2k)
    assert scan.passed and scan.max_ratio < 1.0


def test_report_shape(tables_2k):
    r = check_harmonic_bound(1, 10, tables=tables_2k)
    assert isinstance(r, BoundReport)
    assert r.violations == [] and r.indeterminate == []
    assert r.checked == 10


def test_empirical_g_trivial_delta(tables_2k):
    rep = empirical_G(3.3, 2000, tables=tables_2k)
    assert rep.G == 1  # delta/3 = 1.1 exceeds the global |eps| <= 1 envelope


def test_empirical_g_absent(tables_2k):
    rep = empirical_G(1e-9, 1000, tables=tables_2k)
    assert rep.G is None


def test_empirical_g_suffix_is_certified(tables_2k):
    rep = empirical_G(0.5, 2000, tables=tables_2k)
    assert rep.G is not None
    ev, ee = tables_2k.eps_arrays
    for nu in range(rep.G, 2001):
        assert abs(ev[nu]) + ee[nu] <= 0.5 / 3
    if rep.G > 1:
        assert abs(ev[rep.G - 1]) + ee[rep.G - 1] > 0.5 / 3


def test_empirical_g_monotone_in_delta(tables_2k):
    deltas = [0.2, 0.4, 0.8, 1.6]
    gs = [empirical_G(d, 2000, tables=tables_2k).G for d in deltas]
    assert all(g is not None for g in gs)
    assert all(a >= b for a, b in zip(gs, gs[1:]))


def test_empirical_g_validates():
    with pytest.raises(ValueError):
        empirical_G(-1.0, 100)
    with pytest.raises(ValueError):
        empirical_G(0.1, 1)


def test_h_convergence_huge_delta(tables_2k):
    rep = h_convergence(10.0, 100, 1, tables=tables_2k)
    assert rep.xi == 2  # first sample with a positive logarithm
    assert rep.bound_ok is True


def test_h_convergence_moderate(tables_2k):
    rep = h_convergence(0.9, 2000, 100, tables=tables_2k)
    assert rep.xi is not None
    assert all(r <= 0.9 for _, r in rep.samples if _ >= rep.xi)
    assert rep.bound_ok is True
    assert rep.G is not None


def test_h_convergence_envelope_definition(tables_2k):
    # every sampled |h| sits under 3G - 2 + (2/3) delta (1 + log x)
    delta = 0.9
    rep = h_convergence(delta, 2000, 50, tables=tables_2k)
    for x, _ in rep.samples:
        h = tables_2k.h_point(x)
        env = 3.0 * rep.G - 2.0 + (2.0 / 3.0) * delta + (2.0 / 3.0) * delta * math.log(x)
        assert abs(h.value) + h.err <= env, x


def test_h_convergence_validates():
    with pytest.raises(ValueError):
        h_convergence(0.0, 100)
    with pytest.raises(ValueError):
        h_convergence(0.1, 1)


def test_m_over_x_trivial(tables_2k):
    rep = m_over_x_convergence(1.0, 100, 1, tables=tables_2k)
    assert rep.xi == 1  # |M(x)|/x <= 1 with equality only at x = 1
    assert rep.abel_ok


def test_m_over_x_abel_identity_exact(tables_2k):
    rep = m_over_x_convergence(0.5, 2000, 13, tables=tables_2k)
    assert rep.abel_ok
    # hand check at x = 3: -(g(1) + g(2)) + g(3) * 3 = -3/2 + 1/2 = -1 = M(3)
    from fractions import Fraction

    from mobsum.summatory import big_m, g_exact

    assert -(g_exact(1) + g_exact(2)) + g_exact(3) * 3 == Fraction(-1) == big_m(3)


def test_m_over_x_validates():
    with pytest.raises(ValueError):
        m_over_x_convergence(-0.1, 100)


def test_gamma_oracle_agreement():
    g = gamma_oracle()
    assert g.err < 1e-12
    assert abs(g.value - EULER_GAMMA) <= g.err + 1e-12
