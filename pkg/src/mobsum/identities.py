"""Structural identity checks, exact where the arithmetic allows.

Verified here, each at a single evaluation point x:

  * the divisor sum  sum_{n|t} mu(n)  (1 at t = 1, else 0);
  * the unit identity  sum_{nu<=x} (1/nu) g(x/nu) = 1, checked in exact
    rational arithmetic only (a floating version would merely restate the
    rounding model);
  * the prime-power series  F(p, x) = -sum_{i>=1} p^(-i) g(x/p^i), truncated
    where p^i > x since g vanishes below 1;
  * the two-sum decomposition  f(x) = -h(x) - tail(x), where tail collects
    the i >= 2 prime powers;
  * the summation-by-parts rearrangement of h(x) - 1 over the increments of
    theta, including the boundary fact g(x/(floor(x)+1)) = 0.

Exact checks carry zero tolerance.  Certified checks hold when the observed
difference is within the combined error bounds plus ``IDENTITY_TOLERANCE``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

import numpy as np

from .certified import EPS, CertifiedFloat, CompensatedSum, _HEADROOM, log_certified
from .sieve import _primes_upto, is_prime, moebius_oracle
from .summatory import (
    EXACTNESS_CUTOFF,
    Real,
    ScaledMoebiusPrefix,
    SummatoryTables,
    f_value,
    floor_arg,
    floor_div,
    g_float,
    h_direct,
)

# Absolute tolerance added on top of both error bounds for certified checks;
# an order below the worst accumulated bound at the exactness cutoff.
IDENTITY_TOLERANCE = 1e-9


class CutoffExceededError(ValueError):
    """Exact-only check requested above the exactness cutoff."""


Value = Union[Fraction, CertifiedFloat]


@dataclass(frozen=True)
class IdentityCheck:
    """Verdict for one identity at one point.

    ``slack`` is 0 for exact checks that hold; for certified checks it is
    a bound on the true |lhs - rhs| (observed difference plus both error
    bounds).
    """

    name: str
    x: int
    lhs: Value
    rhs: Value
    holds: bool
    slack: float


def divisor_sum(t: int) -> int:
    """sum_{n|t} mu(n) by explicit divisor enumeration (oracle-backed)."""
    t = int(t)
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    total = 0
    for d in range(1, isqrt(t) + 1):
        if t % d == 0:
            total += moebius_oracle(d)
            e = t // d
            if e != d:
                total += moebius_oracle(e)
    return total


# ---------------------------------------------------------------------------
# Unit identity for the weighted floor sum (exact)
# ---------------------------------------------------------------------------


def _gram_scaled_sum(x: int, prefix: ScaledMoebiusPrefix) -> int:
    """sum_{nu<=x} (1/nu) g(floor(x/nu)), scaled by L^2, as an integer.

    Groups runs of nu sharing the same quotient; the per-run weight is a
    difference of scaled harmonic numbers.
    """
    gn = prefix.scaled_g
    hl = prefix.scaled_harmonic
    total = 0
    n = 1
    while n <= x:
        q = x // n
        n2 = x // q
        total += gn[q] * (hl[n2] - hl[n - 1])
        n = n2 + 1
    return total


def gram_identity(
    x: Real,
    *,
    cutoff: int = EXACTNESS_CUTOFF,
    prefix: ScaledMoebiusPrefix | None = None,
) -> IdentityCheck:
    """Exact check that sum_{nu<=x} (1/nu) g(x/nu) equals 1.

    Exact-rational only by design; raises CutoffExceededError above the
    cutoff unless a caller-supplied exact ``prefix`` covers x.
    """
    n = floor_arg(x)
    if n < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if prefix is None:
        if n > cutoff:
            raise CutoffExceededError(
                f"exact check at x = {n} exceeds cutoff {cutoff}"
            )
        prefix = ScaledMoebiusPrefix(n)
    elif n > prefix.limit:
        raise ValueError(f"prefix covers [1, {prefix.limit}] < x = {n}")
    ssum = _gram_scaled_sum(n, prefix)
    l2 = prefix.denominator * prefix.denominator
    holds = ssum == l2
    lhs = Fraction(1) if holds else Fraction(ssum, l2)
    return IdentityCheck(
        name="gram_unit_sum",
        x=n,
        lhs=lhs,
        rhs=Fraction(1),
        holds=holds,
        slack=0.0 if holds else abs(float(lhs - 1)),
    )


def gram_scan(
    lo: int, hi: int, *, prefix: ScaledMoebiusPrefix | None = None
) -> list[IdentityCheck]:
    """gram_identity at every integer in [lo, hi] over one shared table."""
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    if prefix is None:
        prefix = ScaledMoebiusPrefix(hi)
    return [gram_identity(x, prefix=prefix) for x in range(lo, hi + 1)]


# ---------------------------------------------------------------------------
# Prime-power series and the two-sum decomposition
# ---------------------------------------------------------------------------


def capital_f(
    p: int,
    x: Real,
    *,
    cutoff: int = EXACTNESS_CUTOFF,
    tables: SummatoryTables | None = None,
) -> CertifiedFloat:
    """-sum_{i>=1} p^(-i) g(x/p^i), truncated once p^i > x.

    The truncation is lossless: g of an argument below 1 is 0.  Inner g
    values are exact (converted to certified floats) when they stay within
    the cutoff, certified floats otherwise.
    """
    p = int(p)
    n = floor_arg(x)
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if p > n:
        raise ValueError(f"need p <= x, got p = {p}, x = {x}")
    top = n // p
    exact_pre: ScaledMoebiusPrefix | None = None
    if tables is None and top <= cutoff:
        exact_pre = ScaledMoebiusPrefix(max(top, 1))
    acc = CompensatedSum()
    pi = p
    while pi <= n:
        q = floor_div(x, pi)
        if exact_pre is not None:
            gq = exact_pre.g_certified(q)
        elif tables is not None:
            gq = tables.g_certified(q)
        else:
            gq = g_float(q)
        term = gq.div_exact(pi)
        acc.add(term.value, input_err=term.err)
        pi *= p
    return -acc.result()


def prime_power_tail(
    x: Real,
    *,
    cutoff: int = EXACTNESS_CUTOFF,
    tables: SummatoryTables | None = None,
) -> CertifiedFloat:
    """Signed i >= 2 part: sum_{p<=x} log p * sum_{i>=2} p^(-i) g(x/p^i)."""
    n = floor_arg(x)
    if n < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if tables is not None:
        return tables.tail_certified(n)
    top = n // 4
    exact_pre = ScaledMoebiusPrefix(max(top, 1)) if top <= cutoff else None
    acc = CompensatedSum()
    for p in _primes_upto(isqrt(n)):
        p = int(p)
        lp = log_certified(p)
        pi = p * p
        while pi <= n:
            q = floor_div(x, pi)
            gq = exact_pre.g_certified(q) if exact_pre is not None else g_float(q)
            term = lp.mul(gq).div_exact(pi)
            acc.add(term.value, input_err=term.err)
            pi *= p
    return acc.result()


def decomposition_check(
    x: Real,
    *,
    tables: SummatoryTables | None = None,
    tolerance: float = IDENTITY_TOLERANCE,
) -> IdentityCheck:
    """Certified check of f(x) = -h(x) - tail(x)."""
    n = floor_arg(x)
    if n < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if tables is not None:
        lhs = tables.f_certified(n)
        h = tables.h_certified(n)
        tail = tables.tail_certified(n)
    else:
        lhs = f_value(n)
        h = h_direct(n)
        tail = prime_power_tail(n)
    rhs = (-h).sub(tail)
    return _certified_check("prime_decomposition", n, lhs, rhs, tolerance)


def _certified_check(
    name: str, x: int, lhs: CertifiedFloat, rhs: CertifiedFloat, tolerance: float
) -> IdentityCheck:
    delta = abs(lhs.value - rhs.value)
    budget = lhs.err + rhs.err
    return IdentityCheck(
        name=name,
        x=x,
        lhs=lhs,
        rhs=rhs,
        holds=delta <= budget + tolerance,
        slack=delta + budget,
    )


# ---------------------------------------------------------------------------
# Summation-by-parts rearrangement
# ---------------------------------------------------------------------------


def abel_rearrangement_check(
    x: Real,
    *,
    tables: SummatoryTables | None = None,
    tolerance: float = IDENTITY_TOLERANCE,
) -> IdentityCheck:
    """Certified check of the rearranged form of h(x) - 1.

    The right side is  sum_{nu<=x} eps(nu) (g(x/nu) - g(x/(nu+1)))
    + sum_{nu<=x-1} eps(nu)/(nu+1) g(x/(nu+1)); the boundary term vanishes
    because x/(floor(x)+1) < 1, which is asserted explicitly.
    """
    n = floor_arg(x)
    if n < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if floor_div(x, n + 1) != 0:
        raise AssertionError(f"boundary argument floor(x/(n+1)) nonzero at x = {x}")
    if tables is None:
        tables = SummatoryTables(n)
    gv, ge = tables.g_arrays
    ev, ee = tables.eps_arrays
    nu = np.arange(1, n + 1, dtype=np.int64)
    q1 = n // nu
    q2 = n // (nu + 1)
    enu = ev[nu]
    enu_err = ee[nu]
    d = gv[q1] - gv[q2]
    d_err = ge[q1] + ge[q2] + EPS * np.abs(d)
    t1 = enu * d
    in1 = np.abs(enu) * d_err + enu_err * np.abs(d) + EPS * np.abs(t1)
    div = (nu + 1).astype(np.float64)
    gq2 = gv[q2]
    t2 = enu / div * gq2
    in2 = (np.abs(enu) * ge[q2] + enu_err * np.abs(gq2)) / div + 2.0 * EPS * np.abs(t2)
    mag = float(np.sum(np.abs(t1)) + np.sum(np.abs(t2)))
    rhs_val = float(np.sum(t1) + np.sum(t2))
    rhs_err = (
        EPS * mag * (2.0 * n + 8.0) + float(np.sum(in1) + np.sum(in2))
    ) * _HEADROOM
    rhs = CertifiedFloat(rhs_val, rhs_err)
    lhs = tables.h_point(n).add_exact(-1.0)
    return _certified_check("abel_rearrangement", n, lhs, rhs, tolerance)


# ---------------------------------------------------------------------------
# Exhaustive scans sharing one table set
# ---------------------------------------------------------------------------


def decomposition_scan(
    lo: int,
    hi: int,
    *,
    tables: SummatoryTables | None = None,
    tolerance: float = IDENTITY_TOLERANCE,
) -> list[IdentityCheck]:
    """decomposition_check at every integer in [lo, hi], vectorised."""
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    if tables is None:
        tables = SummatoryTables(hi)
    fv, fe = tables.f_arrays
    hv, he = tables.h_dense_arrays(hi)
    tv, te = tables.tail_dense_arrays(hi)
    out = []
    for x in range(lo, hi + 1):
        lhs = CertifiedFloat(float(fv[x]), float(fe[x]))
        rv = -hv[x] - tv[x]
        rhs = CertifiedFloat(
            float(rv), float((he[x] + te[x] + 2.0 * EPS * abs(rv)) * _HEADROOM)
        )
        out.append(_certified_check("prime_decomposition", x, lhs, rhs, tolerance))
    return out


def abel_scan(
    lo: int,
    hi: int,
    *,
    tables: SummatoryTables | None = None,
    tolerance: float = IDENTITY_TOLERANCE,
) -> list[IdentityCheck]:
    """abel_rearrangement_check at every integer in [lo, hi]."""
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    if tables is None:
        tables = SummatoryTables(hi)
    tables.h_dense_arrays(hi)
    return [
        abel_rearrangement_check(x, tables=tables, tolerance=tolerance)
        for x in range(lo, hi + 1)
    ]
