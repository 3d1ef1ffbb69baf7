"""Summatory functions over the Moebius function and the primes.

Computed here, for real x (non-integer arguments are floored):

    g(x)      = sum_{k<=x} mu(k)/k          (exact rational or certified float)
    f(x)      = sum_{k<=x} mu(k) log(k)/k   (certified float)
    M(x)      = sum_{k<=x} mu(k)            (exact integer, the Mertens function)
    theta(x)  = sum_{p<=x} log p            (certified float, Chebyshev)
    eps(x)    = theta(x)/x - 1              (certified float)
    h(x)      = sum_{p<=x} (log p / p) g(x/p)   (certified float)
    H(x)      = sum_{k<=x} 1/k              (certified float, harmonic)

Exact rational values use a common-denominator representation: with
L = lcm(1..limit), the scaled prefix g(k)*L is an integer, so prefix tables
build with pure integer adds instead of per-term gcd normalisation.  The
rational results are identical; only the encoding differs.

``SummatoryTables`` holds certified-float prefix arrays over [1, limit] for
the scan-style consumers (identity checks, bound scans, series sampling).
All tables are immutable after construction and safe to share read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Union

import numpy as np

from .certified import (
    EPS,
    EULER_GAMMA,
    CertifiedFloat,
    CompensatedSum,
    ZERO,
    _HEADROOM,
    from_exact,
    log_certified,
)
from .sieve import DEFAULT_BLOCK_CAPACITY, _primes_upto, iter_moebius_blocks

# An exact rational value; always in lowest terms with positive denominator.
ExactRational = Fraction

# Largest x at which exact-rational evaluation is the default contract;
# common denominators grow like e^x, so costs explode beyond desk scale.
EXACTNESS_CUTOFF = 10_000

Real = Union[int, float, Fraction]


def floor_arg(x: Real) -> int:
    """Floor of a non-negative real argument, computed exactly."""
    if isinstance(x, (int, np.integer)):
        n = int(x)
    elif isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            raise ValueError(f"argument must be finite, got {x}")
        n = math.floor(x)
    elif isinstance(x, Fraction):
        n = math.floor(x)
    else:
        raise TypeError(f"unsupported argument type {type(x)!r}")
    if n < 0:
        raise ValueError(f"argument must be non-negative, got {x}")
    return n


def _exact_ratio(x: Real) -> Fraction:
    """The argument as an exact rational (floats via their binary expansion)."""
    return x if isinstance(x, Fraction) else Fraction(x)


def floor_div(x: Real, d: int) -> int:
    """floor(x / d) computed exactly for int, float, or Fraction x."""
    if isinstance(x, (int, np.integer)):
        return int(x) // d
    return math.floor(_exact_ratio(x) / d)


# ---------------------------------------------------------------------------
# Exact prefix tables over a common denominator
# ---------------------------------------------------------------------------


def lcm_upto(n: int) -> int:
    """lcm(1, 2, ..., n) as a product of maximal prime powers."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = 1
    for p in _primes_upto(n):
        p = int(p)
        pk = p
        while pk * p <= n:
            pk *= p
        out *= pk
    return out


class ScaledMoebiusPrefix:
    """Exact prefix sums of mu(k)/k, scaled by L = lcm(1..limit).

    ``scaled_g[k] = g(k) * L`` is an integer for every k <= limit, so the
    whole table builds with integer adds.  Optional companion tables (scaled
    harmonic numbers, scaled cumulative sums of g) are built lazily; they are
    what the exact identity checks consume.
    """

    def __init__(self, limit: int, mu: np.ndarray | None = None):
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        self.limit = limit
        self.denominator = lcm_upto(limit)
        if mu is None:
            mu = moebius_values_upto(limit)
        L = self.denominator
        gn = [0] * (limit + 1)
        acc = 0
        for k in range(1, limit + 1):
            m = int(mu[k])
            if m:
                acc += m * (L // k)
            gn[k] = acc
        self.scaled_g = gn
        self._scaled_harmonic: list[int] | None = None
        self._scaled_g_cumsum: list[int] | None = None

    def g_fraction(self, k: int) -> Fraction:
        return Fraction(self.scaled_g[k], self.denominator)

    def g_certified(self, k: int) -> CertifiedFloat:
        return from_exact(self.g_fraction(k))

    def g_abs_le_one(self, k: int) -> bool:
        """Exact test |g(k)| <= 1 without normalising the fraction."""
        return abs(self.scaled_g[k]) <= self.denominator

    @property
    def scaled_harmonic(self) -> list[int]:
        """H(k) * L as integers, H the harmonic number."""
        if self._scaled_harmonic is None:
            L = self.denominator
            hl = [0] * (self.limit + 1)
            acc = 0
            for k in range(1, self.limit + 1):
                acc += L // k
                hl[k] = acc
            self._scaled_harmonic = hl
        return self._scaled_harmonic

    @property
    def scaled_g_cumsum(self) -> list[int]:
        """(sum_{j<=k} g(j)) * L as integers."""
        if self._scaled_g_cumsum is None:
            sg = [0] * (self.limit + 1)
            acc = 0
            for k in range(1, self.limit + 1):
                acc += self.scaled_g[k]
                sg[k] = acc
            self._scaled_g_cumsum = sg
        return self._scaled_g_cumsum


def moebius_values_upto(limit: int) -> np.ndarray:
    """mu(0..limit) as one int8 array (mu[0] = 0 placeholder)."""
    out = np.zeros(limit + 1, dtype=np.int8)
    for block in iter_moebius_blocks(1, limit):
        out[block.lo : block.hi + 1] = block.values
    out.flags.writeable = False
    return out


# ---------------------------------------------------------------------------
# Scalar operations
# ---------------------------------------------------------------------------


def g_exact(x: Real) -> Fraction:
    """sum_{k<=x} mu(k)/k as an exact rational; 0 for x < 1.

    Cost grows like the common denominator lcm(1..x); intended for x up to
    the exactness cutoff (feasible somewhat beyond, at desk patience).
    """
    n = floor_arg(x)
    if n < 1:
        return Fraction(0)
    pre = ScaledMoebiusPrefix(n)
    return pre.g_fraction(n)


def big_m(x: Real) -> int:
    """Mertens function M(x) = sum_{k<=x} mu(k); 0 for x < 1."""
    n = floor_arg(x)
    total = 0
    if n >= 1:
        for block in iter_moebius_blocks(1, n):
            total += int(block.values.sum(dtype=np.int64))
    return total


def g_float(x: Real) -> CertifiedFloat:
    """Certified compensated evaluation of sum_{k<=x} mu(k)/k."""
    n = floor_arg(x)
    acc = CompensatedSum()
    if n >= 1:
        for block in iter_moebius_blocks(1, n):
            ks = np.arange(block.lo, block.hi + 1, dtype=np.float64)
            terms = block.values / ks
            # one inexact division per nonzero term: <= 1 ulp each
            acc.add_block(terms, input_err=float(EPS * np.sum(np.abs(terms))))
    return acc.result()


def f_value(x: Real) -> CertifiedFloat:
    """Certified evaluation of sum_{k<=x} mu(k) log(k)/k.

    Defined for x >= 1; the k = 1 term has weight log 1 = 0, so f is 0 on
    [1, 2).
    """
    n = floor_arg(x)
    if n < 1:
        raise ValueError(f"f is defined for x >= 1, got {x}")
    acc = CompensatedSum()
    for block in iter_moebius_blocks(1, n):
        ks = np.arange(block.lo, block.hi + 1, dtype=np.float64)
        terms = block.values * np.log(ks) / ks
        # log charged 2 ulp plus one division: <= 3 ulp per term
        acc.add_block(terms, input_err=float(3.0 * EPS * np.sum(np.abs(terms))))
    return acc.result()


def theta(x: Real) -> CertifiedFloat:
    """Chebyshev theta(x) = sum_{p<=x} log p, certified; 0 for x < 2."""
    n = floor_arg(x)
    acc = CompensatedSum()
    if n >= 2:
        logs = np.log(_primes_upto(n).astype(np.float64))
        acc.add_block(logs, input_err=float(2.0 * EPS * np.sum(logs)))
    return acc.result()


def epsilon(x: Real) -> CertifiedFloat:
    """Relative deviation theta(x)/x - 1; by convention 0 at x = 0."""
    xr = _exact_ratio(x)
    if xr == 0:
        return ZERO
    if xr < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    th = theta(x)
    xf = float(xr)
    if xf == xr:
        return th.div_exact(xf).add_exact(-1.0)
    return th.mul(from_exact(1 / xr)).add_exact(-1.0)


def harmonic(x: Real) -> CertifiedFloat:
    """Certified harmonic sum sum_{k<=x} 1/k for x >= 1."""
    n = floor_arg(x)
    if n < 1:
        raise ValueError(f"harmonic sum needs x >= 1, got {x}")
    acc = CompensatedSum()
    block = 1 << 20
    for lo in range(1, n + 1, block):
        hi = min(lo + block - 1, n)
        ks = np.arange(lo, hi + 1, dtype=np.float64)
        terms = 1.0 / ks
        # 1/k is exact when k is a power of two
        inexact = (np.arange(lo, hi + 1, dtype=np.int64) & np.arange(lo - 1, hi, dtype=np.int64)) != 0
        acc.add_block(terms, input_err=float(EPS * np.sum(terms[inexact])))
    return acc.result()


def h_direct(
    x: Real, *, cutoff: int = EXACTNESS_CUTOFF, tables: "SummatoryTables | None" = None
) -> CertifiedFloat:
    """Direct evaluation of h(x) = sum_{p<=x} (log p / p) g(x/p), certified.

    Inner g values come from the exact scaled prefix when floor(x/p) stays
    within ``cutoff`` (converted to certified floats), from certified float
    prefix tables otherwise.  One prime-indexed pass per call; scan consumers
    should share ``tables``.
    """
    n = floor_arg(x)
    if n < 1:
        raise ValueError(f"h is defined for x >= 1, got {x}")
    if n == 1:
        return ZERO
    max_inner = floor_div(x, 2)
    if tables is None and max_inner > cutoff:
        tables = SummatoryTables(max_inner)
    exact_pre = ScaledMoebiusPrefix(min(max_inner, cutoff)) if tables is None else None
    acc = CompensatedSum()
    for p in _primes_upto(n):
        p = int(p)
        w = log_certified(p).div_exact(p)
        q = floor_div(x, p)
        if exact_pre is not None:
            gq = exact_pre.g_certified(q)
        else:
            gq = tables.g_certified(q) if q > 0 else ZERO
        term = w.mul(gq)
        acc.add(term.value, input_err=term.err)
    return acc.result()


# ---------------------------------------------------------------------------
# Certified-float prefix tables
# ---------------------------------------------------------------------------


def _prefix_with_err(
    terms: np.ndarray, input_err_terms: np.ndarray, block_size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative sums of ``terms`` (index 0 unused) with certified bounds.

    Error accounting per element k: (number of float additions reaching k)
    * EPS * (cumulative magnitude) plus cumulative input error.  Element 1
    of a first block costs zero additions, keeping exact singletons at err 0.
    """
    n = terms.size - 1
    vals = np.zeros(n + 1, dtype=np.float64)
    errs = np.zeros(n + 1, dtype=np.float64)
    carry_val = 0.0
    carry_mag = 0.0
    carry_in = 0.0
    carry_ops = 0
    for lo in range(1, n + 1, block_size):
        hi = min(lo + block_size - 1, n)
        t = terms[lo : hi + 1]
        local = np.cumsum(t)
        localmag = np.cumsum(np.abs(t))
        localin = np.cumsum(input_err_terms[lo : hi + 1])
        first = lo == 1
        vals[lo : hi + 1] = local if first else carry_val + local
        mags = localmag if first else carry_mag + localmag
        ins = localin if first else carry_in + localin
        ops = np.arange(hi - lo + 1, dtype=np.float64) + (
            0 if first else carry_ops + 1
        )
        errs[lo : hi + 1] = (EPS * mags * ops + ins) * _HEADROOM
        carry_val = float(vals[hi])
        carry_mag = float(mags[-1])
        carry_in = float(ins[-1])
        carry_ops = int(ops[-1])
    vals.flags.writeable = False
    errs.flags.writeable = False
    return vals, errs


class SummatoryTables:
    """Shared certified prefix tables over [1, limit].

    Lazily built lanes (each an array indexed by x, position 0 a zero pad):

        mu          int8 Moebius values
        M           int64 Mertens prefix
        g, g_err    certified prefix of mu(k)/k
        f, f_err    certified prefix of mu(k) log(k)/k
        theta, theta_err    certified Chebyshev prefix
        eps, eps_err        theta/x - 1 pointwise
        H, H_err    certified harmonic prefix

    Immutable once built; safe to share read-only between scan consumers.
    """

    def __init__(self, limit: int, block_size: int = DEFAULT_BLOCK_CAPACITY):
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        self.limit = int(limit)
        self.block_size = int(block_size)
        self._mu: np.ndarray | None = None
        self._M: np.ndarray | None = None
        self._g: tuple[np.ndarray, np.ndarray] | None = None
        self._f: tuple[np.ndarray, np.ndarray] | None = None
        self._theta: tuple[np.ndarray, np.ndarray] | None = None
        self._eps: tuple[np.ndarray, np.ndarray] | None = None
        self._H: tuple[np.ndarray, np.ndarray] | None = None
        self._primes: np.ndarray | None = None
        self._prime_weights: tuple[np.ndarray, np.ndarray] | None = None
        self._h_dense: tuple[int, np.ndarray, np.ndarray] | None = None
        self._tail_dense: tuple[int, np.ndarray, np.ndarray] | None = None

    # -- integer lanes

    @property
    def mu(self) -> np.ndarray:
        if self._mu is None:
            self._mu = moebius_values_upto(self.limit)
        return self._mu

    @property
    def mertens(self) -> np.ndarray:
        if self._M is None:
            m = np.cumsum(self.mu, dtype=np.int64)
            m.flags.writeable = False
            self._M = m
        return self._M

    @property
    def primes(self) -> np.ndarray:
        if self._primes is None:
            self._primes = _primes_upto(self.limit)
        return self._primes

    # -- certified lanes

    def _build_g(self) -> tuple[np.ndarray, np.ndarray]:
        ks = np.arange(self.limit + 1, dtype=np.float64)
        ks[0] = 1.0
        terms = self.mu / ks
        ins = EPS * np.abs(terms)
        return _prefix_with_err(terms, ins, self.block_size)

    def _build_f(self) -> tuple[np.ndarray, np.ndarray]:
        ks = np.arange(self.limit + 1, dtype=np.float64)
        ks[0] = 1.0
        terms = self.mu * np.log(ks) / ks
        ins = 3.0 * EPS * np.abs(terms)
        return _prefix_with_err(terms, ins, self.block_size)

    def _build_theta(self) -> tuple[np.ndarray, np.ndarray]:
        terms = np.zeros(self.limit + 1, dtype=np.float64)
        ps = self.primes
        terms[ps] = np.log(ps.astype(np.float64))
        ins = 2.0 * EPS * terms
        return _prefix_with_err(terms, ins, self.block_size)

    def _build_eps(self) -> tuple[np.ndarray, np.ndarray]:
        th, th_err = self.theta_arrays
        xs = np.arange(self.limit + 1, dtype=np.float64)
        xs[0] = 1.0
        vals = th / xs - 1.0
        errs = (th_err / xs + EPS * (th / xs) + EPS * np.abs(vals)) * _HEADROOM
        vals[0] = 0.0
        errs[0] = 0.0
        vals.flags.writeable = False
        errs.flags.writeable = False
        return vals, errs

    def _build_H(self) -> tuple[np.ndarray, np.ndarray]:
        ks = np.arange(self.limit + 1, dtype=np.float64)
        ks[0] = 1.0
        terms = 1.0 / ks
        terms[0] = 0.0
        ki = np.arange(self.limit + 1, dtype=np.int64)
        inexact = (ki & (ki - 1)) != 0
        ins = np.where(inexact, EPS * terms, 0.0)
        return _prefix_with_err(terms, ins, self.block_size)

    @property
    def g_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._g is None:
            self._g = self._build_g()
        return self._g

    @property
    def f_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._f is None:
            self._f = self._build_f()
        return self._f

    @property
    def theta_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._theta is None:
            self._theta = self._build_theta()
        return self._theta

    @property
    def eps_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._eps is None:
            self._eps = self._build_eps()
        return self._eps

    @property
    def harmonic_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._H is None:
            self._H = self._build_H()
        return self._H

    @property
    def prime_weights(self) -> tuple[np.ndarray, np.ndarray]:
        """(log p / p, its input error) aligned with ``primes``."""
        if self._prime_weights is None:
            ps = self.primes.astype(np.float64)
            w = np.log(ps) / ps
            werr = 3.0 * EPS * w
            w.flags.writeable = False
            werr.flags.writeable = False
            self._prime_weights = (w, werr)
        return self._prime_weights

    # -- pointwise certified accessors

    def g_certified(self, k: int) -> CertifiedFloat:
        v, e = self.g_arrays
        return CertifiedFloat(float(v[k]), float(e[k]))

    def f_certified(self, k: int) -> CertifiedFloat:
        v, e = self.f_arrays
        return CertifiedFloat(float(v[k]), float(e[k]))

    def theta_certified(self, k: int) -> CertifiedFloat:
        v, e = self.theta_arrays
        return CertifiedFloat(float(v[k]), float(e[k]))

    def eps_certified(self, k: int) -> CertifiedFloat:
        v, e = self.eps_arrays
        return CertifiedFloat(float(v[k]), float(e[k]))

    def h_certified(self, x: int) -> CertifiedFloat:
        """h(x) via one vectorised pass over the primes <= x."""
        if x < 1 or x > self.limit:
            raise ValueError(f"x must lie in [1, {self.limit}], got {x}")
        ps = self.primes
        cnt = int(np.searchsorted(ps, x, side="right"))
        if cnt == 0:
            return ZERO
        w, werr = self.prime_weights
        gv, ge = self.g_arrays
        idx = x // ps[:cnt]
        gvals = gv[idx]
        terms = w[:cnt] * gvals
        mag = float(np.sum(np.abs(terms)))
        input_err = float(
            np.sum(
                np.abs(w[:cnt]) * ge[idx]
                + werr[:cnt] * np.abs(gvals)
                + EPS * np.abs(terms)
            )
        )
        val = float(np.sum(terms))
        err = (EPS * mag * (cnt + 8) + input_err) * _HEADROOM
        return CertifiedFloat(val, err)

    def h_point(self, x: int) -> CertifiedFloat:
        """h(x), served from the dense cache when it covers x."""
        if self._h_dense is not None and self._h_dense[0] >= x >= 1:
            _, hv, he = self._h_dense
            return CertifiedFloat(float(hv[x]), float(he[x]))
        return self.h_certified(x)

    def tail_certified(self, x: int) -> CertifiedFloat:
        """sum_{p<=x} log p * sum_{i>=2, p^i<=x} g(x/p^i)/p^i, certified (signed)."""
        if x < 1 or x > self.limit:
            raise ValueError(f"x must lie in [1, {self.limit}], got {x}")
        gv, ge = self.g_arrays
        acc = CompensatedSum()
        for p in _primes_upto(isqrt(x)):
            p = int(p)
            lp = log_certified(p)
            pi = p * p
            while pi <= x:
                q = x // pi
                gq = CertifiedFloat(float(gv[q]), float(ge[q]))
                term = lp.mul(gq).div_exact(pi)
                acc.add(term.value, input_err=term.err)
                pi *= p
        return acc.result()

    # -- dense per-x arrays for exhaustive identity scans

    def h_dense_arrays(self, upto: int) -> tuple[np.ndarray, np.ndarray]:
        """h(x) and its error for every x in [0, upto], one pass per prime.

        Cost is ~pi(upto) * upto element operations; intended for exhaustive
        checks at x up to the exactness cutoff, not for large sparse scans.
        """
        if upto < 1 or upto > self.limit:
            raise ValueError(f"upto must lie in [1, {self.limit}], got {upto}")
        if self._h_dense is not None and self._h_dense[0] >= upto:
            _, hv, he = self._h_dense
            return hv[: upto + 1], he[: upto + 1]
        gv, ge = self.g_arrays
        w, werr = self.prime_weights
        ps = self.primes
        cnt = int(np.searchsorted(ps, upto, side="right"))
        hv = np.zeros(upto + 1, dtype=np.float64)
        mag = np.zeros(upto + 1, dtype=np.float64)
        ins = np.zeros(upto + 1, dtype=np.float64)
        nterms = np.zeros(upto + 1, dtype=np.float64)
        for j in range(cnt):
            p = int(ps[j])
            idx = np.arange(p, upto + 1, dtype=np.int64) // p
            gval = gv[idx]
            term = w[j] * gval
            hv[p:] += term
            mag[p:] += np.abs(term)
            ins[p:] += w[j] * ge[idx] + werr[j] * np.abs(gval) + EPS * np.abs(term)
            nterms[p:] += 1.0
        he = (EPS * mag * (nterms + 8.0) + ins) * _HEADROOM
        hv.flags.writeable = False
        he.flags.writeable = False
        self._h_dense = (upto, hv, he)
        return hv, he

    def tail_dense_arrays(self, upto: int) -> tuple[np.ndarray, np.ndarray]:
        """Signed prime-power tail and its error for every x in [0, upto]."""
        if upto < 1 or upto > self.limit:
            raise ValueError(f"upto must lie in [1, {self.limit}], got {upto}")
        if self._tail_dense is not None and self._tail_dense[0] >= upto:
            _, tv, te = self._tail_dense
            return tv[: upto + 1], te[: upto + 1]
        gv, ge = self.g_arrays
        tv = np.zeros(upto + 1, dtype=np.float64)
        mag = np.zeros(upto + 1, dtype=np.float64)
        ins = np.zeros(upto + 1, dtype=np.float64)
        nterms = np.zeros(upto + 1, dtype=np.float64)
        for p in _primes_upto(isqrt(upto)):
            p = int(p)
            lp = log_certified(p)
            pi = p * p
            while pi <= upto:
                wv = lp.value / pi
                we = lp.err / pi + EPS * wv
                idx = np.arange(pi, upto + 1, dtype=np.int64) // pi
                gval = gv[idx]
                term = wv * gval
                tv[pi:] += term
                mag[pi:] += np.abs(term)
                ins[pi:] += wv * ge[idx] + we * np.abs(gval) + EPS * np.abs(term)
                nterms[pi:] += 1.0
                pi *= p
        te = (EPS * mag * (nterms + 8.0) + ins) * _HEADROOM
        tv.flags.writeable = False
        te.flags.writeable = False
        self._tail_dense = (upto, tv, te)
        return tv, te


# ---------------------------------------------------------------------------
# Series scanning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SamplePoint:
    x: int
    g: CertifiedFloat
    f: CertifiedFloat
    M: int
    theta: CertifiedFloat
    epsilon: CertifiedFloat
    h: CertifiedFloat


@dataclass(frozen=True)
class SummatorySeries:
    """Columnar table of sample records at x = stride, 2*stride, ...

    Fields are parallel arrays; ``record(i)`` materialises one SamplePoint.
    """

    xs: np.ndarray
    g: np.ndarray
    g_err: np.ndarray
    f: np.ndarray
    f_err: np.ndarray
    M: np.ndarray
    theta: np.ndarray
    theta_err: np.ndarray
    epsilon: np.ndarray
    epsilon_err: np.ndarray
    h: np.ndarray
    h_err: np.ndarray

    def __len__(self) -> int:
        return int(self.xs.size)

    def record(self, i: int) -> SamplePoint:
        return SamplePoint(
            x=int(self.xs[i]),
            g=CertifiedFloat(float(self.g[i]), float(self.g_err[i])),
            f=CertifiedFloat(float(self.f[i]), float(self.f_err[i])),
            M=int(self.M[i]),
            theta=CertifiedFloat(float(self.theta[i]), float(self.theta_err[i])),
            epsilon=CertifiedFloat(float(self.epsilon[i]), float(self.epsilon_err[i])),
            h=CertifiedFloat(float(self.h[i]), float(self.h_err[i])),
        )

    def __iter__(self) -> Iterator[SamplePoint]:
        return (self.record(i) for i in range(len(self)))


def series_scan(
    limit: int, stride: int, *, tables: SummatoryTables | None = None
) -> SummatorySeries:
    """One streaming pass producing sample records at multiples of ``stride``.

    Each record agrees with the pointwise operations: exactly for the integer
    lanes, within combined error bounds for the certified lanes.  h costs one
    prime-indexed pass per sample, which dominates for small strides.
    """
    if limit < 1 or stride < 1:
        raise ValueError(f"need limit >= 1 and stride >= 1, got {limit}, {stride}")
    if tables is None:
        tables = SummatoryTables(limit)
    elif tables.limit < limit:
        raise ValueError(f"tables cover [1, {tables.limit}] < limit {limit}")
    xs = np.arange(stride, limit + 1, stride, dtype=np.int64)
    gv, ge = tables.g_arrays
    fv, fe = tables.f_arrays
    tv, te = tables.theta_arrays
    ev, ee = tables.eps_arrays
    hv = np.empty(xs.size, dtype=np.float64)
    he = np.empty(xs.size, dtype=np.float64)
    for i, x in enumerate(xs.tolist()):
        hx = tables.h_certified(x)
        hv[i] = hx.value
        he[i] = hx.err
    return SummatorySeries(
        xs=xs,
        g=gv[xs].copy(),
        g_err=ge[xs].copy(),
        f=fv[xs].copy(),
        f_err=fe[xs].copy(),
        M=tables.mertens[xs].copy(),
        theta=tv[xs].copy(),
        theta_err=te[xs].copy(),
        epsilon=ev[xs].copy(),
        epsilon_err=ee[xs].copy(),
        h=hv,
        h_err=he,
    )


# ---------------------------------------------------------------------------
# Certified harmonic numbers at large arguments (asymptotic)
# ---------------------------------------------------------------------------

_H_SMALL_LIMIT = 512


def _build_small_harmonic() -> list[CertifiedFloat]:
    vals = [ZERO]
    acc = Fraction(0)
    for k in range(1, _H_SMALL_LIMIT + 1):
        acc += Fraction(1, k)
        vals.append(from_exact(acc))
    return vals


_H_SMALL: list[CertifiedFloat] | None = None


def harmonic_number(n: int) -> CertifiedFloat:
    """Certified H(n) in O(1) for large n.

    Small n come from an exact table.  Large n use the expansion
    H(n) = log n + gamma + 1/(2n) - 1/(12 n^2) + 1/(120 n^4) - r_n with
    0 < r_n < 1/(252 n^6); the published error covers the remainder interval
    plus evaluation rounding.  Used by the floor-quotient recursion for g,
    where per-block harmonic segment weights must not cost O(block length).
    """
    global _H_SMALL
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n <= _H_SMALL_LIMIT:
        if _H_SMALL is None:
            _H_SMALL = _build_small_harmonic()
        return _H_SMALL[n]
    nf = float(n)
    rem = 1.0 / (252.0 * nf**6)
    v = math.log(nf) + EULER_GAMMA + 0.5 / nf - 1.0 / (12.0 * nf * nf) + 1.0 / (120.0 * nf**4)
    v -= 0.5 * rem
    err = (0.5 * rem + 8.0 * EPS * abs(v)) * _HEADROOM
    return CertifiedFloat(v, err)


def harmonic_segment(lo: int, hi: int) -> CertifiedFloat:
    """Certified sum_{k=lo..hi} 1/k via harmonic-number differences."""
    if lo > hi:
        return ZERO
    return harmonic_number(hi).sub(harmonic_number(lo - 1))
