"""Inequality scans with certified verdicts, and empirical thresholds.

Scanned bounds (each proved unconditionally in classical prime-sum theory;
here re-verified numerically at desk scale):

    |g(x)| <= 1
    |log(x) g(x) - f(x)| <= 3 + gamma
    0 <= theta(x) < 2x           (equivalently -1 <= eps(x) < 1)
    sum_{k<=x} 1/k <= log(x) + 1
    |tail(x)| <= 2 sum_{nu>=1} log(nu)/nu^2

A certified comparison treats a bound as violated only when the whole error
interval sits on the wrong side; a value whose interval straddles the
boundary is reported as indeterminate and fails the scan conservatively.

Convergence reports locate empirical thresholds: the least G with
|eps(nu)| <= delta/3 on [G, scan_limit], and the least sampled xi beyond
which |h(x)|/log x (or |M(x)|/x) stays below delta.  These are explicitly
empirical up to scan_limit; nothing is claimed beyond it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .certified import (
    EPS,
    EULER_GAMMA,
    CertifiedFloat,
    _HEADROOM,
    compare_le,
)
from .sieve import DEFAULT_BLOCK_CAPACITY, prime_flags
from .summatory import (
    EXACTNESS_CUTOFF,
    ScaledMoebiusPrefix,
    SummatoryTables,
)

GAMMA_PROVENANCE = (
    "embedded double 0.5772156649015329 cross-checked against the "
    "harmonic-minus-log oracle at test time"
)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of scanning one inequality lhs <= rhs over an integer range.

    ``violations`` holds (x, lhs, rhs) triples certified to break the bound;
    ``indeterminate`` holds points whose error interval straddles it.  The
    scan passes only when both lists are empty.
    """

    name: str
    lo: int
    hi: int
    passed: bool
    max_ratio: float
    checked: int
    violations: list = field(default_factory=list)
    indeterminate: list = field(default_factory=list)
    gamma: float | None = None
    note: str = ""


@dataclass(frozen=True)
class ConvergenceReport:
    """Empirical threshold search over [1, scan_limit].

    ``G`` is the least integer with |eps(nu)| <= delta/3 certified on
    [G, scan_limit] (None if no suffix qualifies); ``xi`` the least sampled
    point beyond which every sampled ratio is certified <= delta.  ``samples``
    lists (x, ratio) pairs.  Valid only up to scan_limit.
    """

    kind: str
    delta: float
    scan_limit: int
    stride: int
    G: int | None
    xi: int | None
    samples: list
    bound_ok: bool | None = None
    abel_ok: bool | None = None
    note: str = ""


def _classify(
    xs, lhs_val, lhs_err, rhs_val, rhs_err, strict: bool = False
) -> tuple[list, list, float]:
    """Vector verdicts for lhs <= rhs (or < when strict); returns
    (violations, indeterminate, max value ratio)."""
    ok = (
        (lhs_val + lhs_err < rhs_val - rhs_err)
        if strict
        else (lhs_val + lhs_err <= rhs_val - rhs_err)
    )
    bad = (
        (lhs_val - lhs_err >= rhs_val + rhs_err)
        if strict
        else (lhs_val - lhs_err > rhs_val + rhs_err)
    )
    und = ~ok & ~bad
    violations = [
        (int(xs[i]), float(lhs_val[i]), float(rhs_val[i])) for i in np.nonzero(bad)[0]
    ]
    indeterminate = [
        (int(xs[i]), float(lhs_val[i]), float(rhs_val[i])) for i in np.nonzero(und)[0]
    ]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(rhs_val > 0, lhs_val / rhs_val, np.inf)
    max_ratio = float(np.max(ratios)) if ratios.size else 0.0
    return violations, indeterminate, max_ratio


def check_g_bound(
    lo: int,
    hi: int,
    *,
    cutoff: int = EXACTNESS_CUTOFF,
    tables: SummatoryTables | None = None,
    prefix: ScaledMoebiusPrefix | None = None,
) -> BoundReport:
    """Verify |g(x)| <= 1 at every integer x in [lo, hi].

    Exact rational comparison up to ``cutoff``; certified floats (requiring
    |value| + err <= 1) above it.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    violations: list = []
    indeterminate: list = []
    max_ratio = 0.0
    exact_hi = min(hi, cutoff)
    if lo <= exact_hi:
        if prefix is None or prefix.limit < exact_hi:
            prefix = ScaledMoebiusPrefix(exact_hi)
        L = prefix.denominator
        gn = prefix.scaled_g
        worst = 0
        for x in range(lo, exact_hi + 1):
            a = abs(gn[x])
            if a > worst:
                worst = a
            if a > L:
                violations.append((x, float(Fraction(gn[x], L)), 1.0))
        max_ratio = max(max_ratio, float(Fraction(worst, L)))
    if hi > exact_hi:
        flo = max(lo, exact_hi + 1)
        if tables is None or tables.limit < hi:
            tables = SummatoryTables(hi)
        gv, ge = tables.g_arrays
        xs = np.arange(flo, hi + 1, dtype=np.int64)
        av = np.abs(gv[xs])
        ae = ge[xs]
        v, u, r = _classify(xs, av, ae, np.ones_like(av), np.zeros_like(av))
        violations += v
        indeterminate += u
        max_ratio = max(max_ratio, r)
    return BoundReport(
        name="g_unit_bound",
        lo=lo,
        hi=hi,
        passed=not violations and not indeterminate,
        max_ratio=max_ratio,
        checked=hi - lo + 1,
        violations=violations,
        indeterminate=indeterminate,
        note=f"exact below {exact_hi + 1}; certified above",
    )


def check_mangoldt_bound(
    lo: int, hi: int, *, tables: SummatoryTables | None = None
) -> BoundReport:
    """Verify |log(x) g(x) - f(x)| <= 3 + gamma on [lo, hi], certified."""
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    if tables is None or tables.limit < hi:
        tables = SummatoryTables(hi)
    gv, ge = tables.g_arrays
    fv, fe = tables.f_arrays
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    lx = np.log(xs.astype(np.float64))
    prod = lx * gv[xs]
    prod_err = np.abs(lx) * ge[xs] + 2.0 * EPS * np.abs(lx) * np.abs(gv[xs]) + EPS * np.abs(prod)
    lhs = np.abs(prod - fv[xs])
    lhs_err = (prod_err + fe[xs] + EPS * lhs) * _HEADROOM
    rhs = 3.0 + EULER_GAMMA
    rhs_err = 2.0 * EPS * rhs
    v, u, r = _classify(xs, lhs, lhs_err, np.full_like(lhs, rhs), np.full_like(lhs, rhs_err))
    return BoundReport(
        name="mangoldt_bound",
        lo=lo,
        hi=hi,
        passed=not v and not u,
        max_ratio=r,
        checked=hi - lo + 1,
        violations=v,
        indeterminate=u,
        gamma=EULER_GAMMA,
        note=GAMMA_PROVENANCE,
    )


def check_theta_bounds(
    lo: int, hi: int, *, block_size: int = DEFAULT_BLOCK_CAPACITY
) -> BoundReport:
    """Verify 0 <= theta(x) < 2x (so |eps(x)| <= 1 with eps > -1 off x=1).

    Streams aligned sieve segments; memory stays at one block regardless of
    range size.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    violations: list = []
    indeterminate: list = []
    max_ratio = 0.0
    carry_val = 0.0
    carry_cnt = 0
    # theta carries history from x = 1, so stream from the start regardless of lo
    for b in range((hi - 1) // block_size + 1):
        blo = b * block_size + 1
        bhi = min(hi, (b + 1) * block_size)
        flags = prime_flags(blo, bhi)
        terms = np.zeros(bhi - blo + 1, dtype=np.float64)
        pos = np.nonzero(flags)[0]
        terms[pos] = np.log((pos + blo).astype(np.float64))
        th = carry_val + np.cumsum(terms)
        cnt = carry_cnt + np.cumsum(flags, dtype=np.int64)
        errs = (EPS * th * (cnt + 2.0 * b + 2.0)) * _HEADROOM
        if bhi >= lo:
            s = max(lo, blo)
            sl = slice(s - blo, bhi - blo + 1)
            xs = np.arange(s, bhi + 1, dtype=np.int64)
            two_x = 2.0 * xs.astype(np.float64)
            v, u, r = _classify(
                xs, th[sl], errs[sl], two_x, np.zeros_like(two_x), strict=True
            )
            violations += v
            indeterminate += u
            max_ratio = max(max_ratio, r)
            # non-negativity (eps >= -1): err is a multiple of th, so th - err
            # only dips below zero if the scan itself is broken
            for i in np.nonzero(th[sl] - errs[sl] < 0.0)[0]:
                indeterminate.append((int(xs[i]), float(th[sl][i]), 0.0))
        carry_val = float(th[-1])
        carry_cnt = int(cnt[-1])
    return BoundReport(
        name="theta_mertens_bounds",
        lo=lo,
        hi=hi,
        passed=not violations and not indeterminate,
        max_ratio=max_ratio,
        checked=hi - lo + 1,
        violations=violations,
        indeterminate=indeterminate,
        note="theta < 2x strict; theta >= 0 certifies eps >= -1",
    )


def check_harmonic_bound(
    lo: int, hi: int, *, tables: SummatoryTables | None = None
) -> BoundReport:
    """Verify sum_{k<=x} 1/k <= log(x) + 1 on [lo, hi], certified."""
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    if tables is None or tables.limit < hi:
        tables = SummatoryTables(hi)
    hv, he = tables.harmonic_arrays
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    lx = np.log(xs.astype(np.float64))
    rhs = lx + 1.0
    # log(1) = 0 exactly, making rhs exact at x = 1 (the equality case)
    rhs_err = np.where(lx == 0.0, 0.0, (2.0 * EPS * np.abs(lx) + EPS * rhs) * _HEADROOM)
    v, u, r = _classify(xs, hv[xs], he[xs], rhs, rhs_err)
    return BoundReport(
        name="harmonic_log_bound",
        lo=lo,
        hi=hi,
        passed=not v and not u,
        max_ratio=r,
        checked=hi - lo + 1,
        violations=v,
        indeterminate=u,
    )


# ---------------------------------------------------------------------------
# Prime-power tail bound
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=1)
def log_square_sum_constant() -> CertifiedFloat:
    """sum_{nu>=1} log(nu)/nu^2, certified to better than 1e-10.

    Direct exactly-rounded summation to N = 2e6, then the integral bracket
    for the monotone tail: the remainder lies between (log(N+1)+1)/(N+1)
    and (log N + 1)/N; the midpoint is taken and half the width charged.
    """
    n = 2_000_000
    ks = np.arange(1, n + 1, dtype=np.float64)
    terms = np.log(ks) / (ks * ks)
    s = math.fsum(terms.tolist())
    hi_tail = (math.log(n) + 1.0) / n
    lo_tail = (math.log(n + 1) + 1.0) / (n + 1)
    val = s + 0.5 * (hi_tail + lo_tail)
    err = (
        0.5 * (hi_tail - lo_tail)
        + 3.0 * EPS * s  # per-term log and division rounding, fsum half-ulp
        + 4.0 * EPS * abs(val)
    ) * _HEADROOM
    return CertifiedFloat(val, err)


def check_tail_bound(
    x: int, *, tables: SummatoryTables | None = None
) -> BoundReport:
    """Verify |tail(x)| <= 2 sum log(nu)/nu^2 at the single point x."""
    from .identities import prime_power_tail

    x = int(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    t = tables.tail_certified(x) if tables is not None else prime_power_tail(x)
    lhs = CertifiedFloat(abs(t.value), t.err)
    c = log_square_sum_constant()
    rhs = c.scale_exact(2.0)
    verdict = compare_le(lhs, rhs)
    entry = (x, lhs.value, rhs.value)
    return BoundReport(
        name="prime_power_tail_bound",
        lo=x,
        hi=x,
        passed=verdict == "pass",
        max_ratio=lhs.value / rhs.value,
        checked=1,
        violations=[entry] if verdict == "violation" else [],
        indeterminate=[entry] if verdict == "indeterminate" else [],
        note=f"2C with C = {c.value:.12f} +/- {c.err:.2e}",
    )


def tail_bound_scan(
    lo: int, hi: int, *, tables: SummatoryTables | None = None
) -> BoundReport:
    """check_tail_bound at every integer in [lo, hi] over shared tables."""
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    if tables is None or tables.limit < hi:
        tables = SummatoryTables(hi)
    tv, te = tables.tail_dense_arrays(hi)
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    lhs = np.abs(tv[xs])
    lhs_err = te[xs]
    c = log_square_sum_constant()
    rhs = np.full_like(lhs, 2.0 * c.value)
    rhs_err = np.full_like(lhs, (2.0 * c.err + EPS * 2.0 * c.value) * _HEADROOM)
    v, u, r = _classify(xs, lhs, lhs_err, rhs, rhs_err)
    return BoundReport(
        name="prime_power_tail_bound",
        lo=lo,
        hi=hi,
        passed=not v and not u,
        max_ratio=r,
        checked=hi - lo + 1,
        violations=v,
        indeterminate=u,
        note=f"2C with C = {c.value:.12f} +/- {c.err:.2e}",
    )


# ---------------------------------------------------------------------------
# Empirical thresholds
# ---------------------------------------------------------------------------


def empirical_G(
    delta: float, scan_limit: int, *, tables: SummatoryTables | None = None
) -> ConvergenceReport:
    """Least G with |eps(nu)| <= delta/3 certified for all nu in [G, scan_limit].

    Empirical up to scan_limit only; G is None when even the suffix {scan_limit}
    fails.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if scan_limit < 2:
        raise ValueError(f"scan_limit must be >= 2, got {scan_limit}")
    if tables is None or tables.limit < scan_limit:
        tables = SummatoryTables(scan_limit)
    ev, ee = tables.eps_arrays
    bound = delta / 3.0
    nus = np.arange(1, scan_limit + 1, dtype=np.int64)
    ok = np.abs(ev[nus]) + ee[nus] <= bound
    bad = np.nonzero(~ok)[0]
    if bad.size == 0:
        G = 1
    else:
        last_bad = int(nus[bad[-1]])
        G = last_bad + 1 if last_bad < scan_limit else None
    samples = []
    if G is not None:
        samples.append((G, float(abs(ev[G]))))
    return ConvergenceReport(
        kind="eps_threshold",
        delta=delta,
        scan_limit=scan_limit,
        stride=1,
        G=G,
        xi=None,
        samples=samples,
        note="empirical up to scan_limit; nothing claimed beyond",
    )


def _least_certified_suffix(xs: list[int], ok: list[bool]) -> int | None:
    """Least xs[i] with ok true from i through the end; None if the last fails."""
    xi = None
    for x, good in zip(reversed(xs), reversed(ok)):
        if not good:
            break
        xi = x
    return xi


def h_convergence(
    delta: float,
    scan_limit: int,
    stride: int = 1,
    *,
    tables: SummatoryTables | None = None,
) -> ConvergenceReport:
    """Sample |h(x)|/log x at multiples of stride and locate xi.

    Also verifies at each sample the assembled envelope
    |h(x)| <= 3G - 2 + (2/3) delta + (2/3) delta log x with G from
    empirical_G(delta, scan_limit); the envelope holds wherever the eps
    threshold was certified, i.e. on the scanned range.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if scan_limit < 2:
        raise ValueError(f"scan_limit must be >= 2, got {scan_limit}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if tables is None or tables.limit < scan_limit:
        tables = SummatoryTables(scan_limit)
    greport = empirical_G(delta, scan_limit, tables=tables)
    G = greport.G
    xs = [x for x in range(stride, scan_limit + 1, stride) if x >= 2]
    samples = []
    ok_ratio = []
    bound_ok: bool | None = None if G is None else True
    for x in xs:
        h = tables.h_point(x)
        lx = math.log(x)
        rv = abs(h.value) / lx
        rerr = (h.err / lx + 3.0 * EPS * rv) * _HEADROOM
        samples.append((x, rv))
        ok_ratio.append(rv + rerr <= delta)
        if G is not None:
            env = (3.0 * G - 2.0) + (2.0 / 3.0) * delta + (2.0 / 3.0) * delta * lx
            env_err = 8.0 * EPS * env
            if abs(h.value) + h.err > env - env_err:
                bound_ok = False
    xi = _least_certified_suffix(xs, ok_ratio)
    return ConvergenceReport(
        kind="h_over_log",
        delta=delta,
        scan_limit=scan_limit,
        stride=stride,
        G=G,
        xi=xi,
        samples=samples,
        bound_ok=bound_ok,
        note="" if G is not None else "no qualifying G; envelope unchecked",
    )


def m_over_x_convergence(
    delta: float,
    scan_limit: int,
    stride: int = 1,
    *,
    cutoff: int = EXACTNESS_CUTOFF,
    tables: SummatoryTables | None = None,
    prefix: ScaledMoebiusPrefix | None = None,
) -> ConvergenceReport:
    """Sample |M(x)|/x and locate xi; re-derive M by exact partial summation.

    At every sample x at or below the cutoff, M(x) = -sum_{k<x} g(k)
    + g(x) floor(x) is checked exactly in scaled integers (zero tolerance).
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if scan_limit < 2:
        raise ValueError(f"scan_limit must be >= 2, got {scan_limit}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if tables is None or tables.limit < scan_limit:
        tables = SummatoryTables(scan_limit)
    M = tables.mertens
    xs = list(range(stride, scan_limit + 1, stride))
    exact_hi = min(scan_limit, cutoff)
    if prefix is None or prefix.limit < exact_hi:
        prefix = ScaledMoebiusPrefix(exact_hi)
    gn = prefix.scaled_g
    sg = prefix.scaled_g_cumsum
    L = prefix.denominator
    samples = []
    ok_ratio = []
    abel_ok = True
    for x in xs:
        m = int(M[x])
        rv = abs(m) / x
        # |M| and x are exact doubles at desk scale; division by 1 is exact,
        # which preserves the equality case |M(1)|/1 = 1
        rerr = 0.0 if x == 1 else EPS * rv
        samples.append((x, rv))
        ok_ratio.append(rv + rerr <= delta)
        if x <= exact_hi:
            if m * L != -sg[x - 1] + gn[x] * x:
                abel_ok = False
    xi = _least_certified_suffix(xs, ok_ratio)
    return ConvergenceReport(
        kind="m_over_x",
        delta=delta,
        scan_limit=scan_limit,
        stride=stride,
        G=None,
        xi=xi,
        samples=samples,
        abel_ok=abel_ok,
        note=f"partial-summation identity checked exactly up to {exact_hi}",
    )


# ---------------------------------------------------------------------------
# Independent gamma oracle
# ---------------------------------------------------------------------------


def gamma_oracle(n: int = 4096) -> CertifiedFloat:
    """Euler-Mascheroni constant from H(n) - log n, asymptotically corrected.

    H(n) is computed exactly (rationals) and rounded once; the correction
    series 1/(2n) - 1/(12 n^2) + 1/(120 n^4) leaves a remainder below
    1/(252 n^6).  Independent of the embedded constant.
    """
    if n < 16:
        raise ValueError(f"n too small for the correction series, got {n}")
    hn = Fraction(0)
    for k in range(1, n + 1):
        hn += Fraction(1, k)
    nf = float(n)
    v = float(hn) - math.log(nf) - 0.5 / nf + 1.0 / (12.0 * nf * nf) - 1.0 / (
        120.0 * nf**4
    )
    rem = 1.0 / (252.0 * nf**6)
    err = (rem + 2.0 * EPS * abs(math.log(nf)) + 8.0 * EPS * abs(v)) * _HEADROOM
    return CertifiedFloat(v, err)
