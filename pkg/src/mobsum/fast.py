"""Sub-linear evaluation of g(x) and M(x) by floor-quotient recursion.

Both recursions fall out of the unit identities for the weighted and
unweighted divisor sums of mu:

    sum_{nu<=x} (1/nu) g(floor(x/nu)) = 1      =>  g(x) = 1 - sum_{nu>=2} ...
    sum_{nu<=x} M(floor(x/nu)) = 1             =>  M(x) = 1 - sum_{nu>=2} ...

floor(x/nu) takes O(sqrt(x)) distinct values; grouping runs of equal
quotient and sieving base values up to a crossover K (default ~x^(2/3))
gives O(x^(2/3)) work overall.  The memo is filled iteratively in
increasing argument order, never by deep call chains.

Exact mode works in integers scaled by L = lcm(1..x): g(y) * L is an
integer for every y <= x, block weights are differences of scaled harmonic
numbers, and each level's division by L is checked to be exact.  Certified
float mode uses the asymptotic harmonic evaluator for block weights and
propagates error bounds through the recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Union

import numpy as np

from .certified import EPS, CertifiedFloat, _HEADROOM
from .summatory import (
    EXACTNESS_CUTOFF,
    ScaledMoebiusPrefix,
    SummatoryTables,
    harmonic_number,
    moebius_values_upto,
)

Value = Union[int, float, Fraction]


def default_crossover(x: int) -> int:
    """Crossover K for root x: ~x^(2/3), at least sqrt(x)+1, below x."""
    k = max(round(x ** (2.0 / 3.0)), isqrt(x) + 1)
    return max(1, min(k, x - 1)) if x > 1 else 1


def quotient_blocks(x: int) -> list[tuple[int, int, int]]:
    """Maximal runs (q, nu_lo, nu_hi) with floor(x/nu) = q for nu in the run.

    The runs partition [1, x]; there are at most 2*ceil(sqrt(x)) of them.
    """
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    out = []
    n = 1
    while n <= x:
        q = x // n
        n2 = x // q
        out.append((q, n, n2))
        n = n2 + 1
    return out


@dataclass(frozen=True)
class FloorValueMap:
    """Memo over the distinct floor-quotient arguments of a root x.

    ``small`` holds sieve-computed prefix values for arguments 1..crossover;
    ``large`` maps nu = x // q to the value at argument q > crossover (the nu
    keys are dense small integers).
    """

    x: int
    crossover: int
    small: np.ndarray
    large: dict = field(default_factory=dict)

    def get(self, arg: int) -> Value:
        if arg <= self.crossover:
            return int(self.small[arg])
        return self.large[self.x // arg]

    def distinct_count(self) -> int:
        """Distinct floor-quotient arguments the evaluation touched."""
        small_args = sum(1 for q, _, _ in quotient_blocks(self.x) if q <= self.crossover)
        return small_args + len(self.large)


def _chain_values(x: int, crossover: int) -> list[int]:
    """Distinct values x//j above the crossover, ascending."""
    vals = []
    j = 1
    while True:
        y = x // j
        if y <= crossover:
            break
        vals.append(y)
        j += 1
    return sorted(set(vals))


# ---------------------------------------------------------------------------
# Mertens recursion (exact integers)
# ---------------------------------------------------------------------------


def _mertens_sum(y: int, K: int, small, by_val: dict) -> int:
    """sum_{nu=2}^{y} M(floor(y/nu)) from the base table and the value memo."""
    s = isqrt(y)
    total = 0
    nu_big_hi = min(s, y // (K + 1))
    for nu in range(2, nu_big_hi + 1):
        total += by_val[y // nu]
    lo = max(2, nu_big_hi + 1)
    if lo <= s:
        if s - lo < 48:
            for nu in range(lo, s + 1):
                total += small[y // nu]
        else:
            nus = np.arange(lo, s + 1, dtype=np.int64)
            total += int(np.sum(small[y // nus]))
    qmax = y // (s + 1)
    q_small_hi = min(qmax, K)
    if q_small_hi >= 1:
        if q_small_hi < 48:
            for q in range(1, q_small_hi + 1):
                n1 = max(y // (q + 1) + 1, s + 1)
                n2 = y // q
                if n2 >= n1:
                    total += (n2 - n1 + 1) * small[q]
        else:
            qs = np.arange(1, q_small_hi + 1, dtype=np.int64)
            n1 = np.maximum(y // (qs + 1) + 1, s + 1)
            n2 = y // qs
            cnt = np.clip(n2 - n1 + 1, 0, None)
            total += int(np.sum(cnt * small[qs]))
    for q in range(q_small_hi + 1, qmax + 1):
        n1 = max(y // (q + 1) + 1, s + 1)
        n2 = y // q
        if n2 >= n1:
            total += (n2 - n1 + 1) * by_val[q]
    return total


def _mertens_small_table(limit: int) -> np.ndarray:
    mu = moebius_values_upto(limit)
    return np.cumsum(mu, dtype=np.int64)


def mertens_floor_map(x: int, *, crossover: int | None = None) -> tuple[int, FloorValueMap]:
    """M(x) together with the populated floor-quotient memo."""
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    K = default_crossover(x) if crossover is None else max(1, min(int(crossover), x))
    small = _mertens_small_table(K)
    by_val: dict[int, int] = {}
    for y in _chain_values(x, K):
        by_val[y] = 1 - _mertens_sum(y, K, small, by_val)
    value = int(small[x]) if x <= K else by_val[x]
    large = {x // v: m for v, m in by_val.items()}
    return value, FloorValueMap(x=x, crossover=K, small=small, large=large)


def m_recursive(x: int, *, crossover: int | None = None) -> int:
    """Exact M(x) by the floor-quotient recursion; O(x^(2/3)) time."""
    value, _ = mertens_floor_map(x, crossover=crossover)
    return value


class MertensEvaluator:
    """Shared-memo Mertens evaluator for batches of roots.

    M is a function of its argument alone, so exact values computed for one
    root are sound for every other; sharing the value memo makes repeated
    evaluation (random spot checks, exhaustive sweeps) cheap.
    """

    def __init__(self, max_x: int, *, crossover: int | None = None):
        if max_x < 1:
            raise ValueError(f"max_x must be >= 1, got {max_x}")
        self.max_x = max_x
        self.crossover = (
            default_crossover(max_x) if crossover is None else max(1, min(crossover, max_x))
        )
        self.small = _mertens_small_table(self.crossover)
        self.by_val: dict[int, int] = {}

    def value(self, x: int) -> int:
        if not 1 <= x <= self.max_x:
            raise ValueError(f"x must lie in [1, {self.max_x}], got {x}")
        if x <= self.crossover:
            return int(self.small[x])
        cached = self.by_val.get(x)
        if cached is not None:
            return cached
        for y in _chain_values(x, self.crossover):
            if y not in self.by_val:
                self.by_val[y] = 1 - _mertens_sum(y, self.crossover, self.small, self.by_val)
        return self.by_val[x]


def mertens_prefix_recursive(limit: int, *, base_limit: int = 1) -> np.ndarray:
    """M(x) for every x in [0, limit] by ascending recursion fill.

    Only [1, base_limit] comes from the sieve (default just M(1)); every
    later entry is 1 minus the blocked sum over already-filled entries.
    Used to cross-check the recursion against direct sieving, exhaustively.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    base_limit = max(1, min(base_limit, limit))
    M = np.zeros(limit + 1, dtype=np.int64)
    M[1 : base_limit + 1] = _mertens_small_table(base_limit)[1:]
    for x in range(base_limit + 1, limit + 1):
        s = isqrt(x)
        total = 0
        if s >= 2:
            nus = np.arange(2, s + 1, dtype=np.int64)
            total += int(np.sum(M[x // nus]))
        qmax = x // (s + 1)
        if qmax >= 1:
            qs = np.arange(1, qmax + 1, dtype=np.int64)
            n1 = np.maximum(x // (qs + 1) + 1, s + 1)
            n2 = x // qs
            cnt = np.clip(n2 - n1 + 1, 0, None)
            total += int(np.sum(cnt * M[qs]))
        M[x] = 1 - total
    return M


# ---------------------------------------------------------------------------
# g recursion, exact mode (lcm-scaled integers)
# ---------------------------------------------------------------------------


class _ExactGTables:
    """Shared scaled tables for exact g recursion up to ``limit``."""

    def __init__(self, limit: int, crossover: int):
        self.limit = limit
        self.prefix = ScaledMoebiusPrefix(limit)
        self.L = self.prefix.denominator
        self.hl = self.prefix.scaled_harmonic
        # base values g(k) * L for k <= crossover come straight off the prefix
        self.crossover = crossover

    def g_scaled_base(self, k: int) -> int:
        return self.prefix.scaled_g[k]


def _g_exact_sum_scaled(y: int, K: int, tab: _ExactGTables, by_val: dict) -> int:
    """sum_{nu=2}^{y} (1/nu) g(floor(y/nu)), scaled by L^2, as an integer."""
    L = tab.L
    hl = tab.hl
    gval = tab.prefix.scaled_g
    s = isqrt(y)
    total = 0
    nu_big_hi = min(s, y // (K + 1))
    for nu in range(2, nu_big_hi + 1):
        total += (L // nu) * by_val[y // nu]
    lo = max(2, nu_big_hi + 1)
    for nu in range(lo, s + 1):
        total += (L // nu) * gval[y // nu]
    qmax = y // (s + 1)
    for q in range(1, qmax + 1):
        n1 = max(y // (q + 1) + 1, s + 1)
        n2 = y // q
        if n2 < n1:
            continue
        w = hl[n2] - hl[n1 - 1]
        total += w * (gval[q] if q <= K else by_val[q])
    return total


def g_recursive_exact(
    x: int, *, crossover: int | None = None, tables: _ExactGTables | None = None
) -> Fraction:
    """Exact g(x) by the floor-quotient recursion in scaled integers."""
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    K = default_crossover(x) if crossover is None else max(1, min(int(crossover), x))
    if tables is None:
        tables = _ExactGTables(x, K)
    elif tables.limit < x:
        raise ValueError(f"tables cover [1, {tables.limit}] < x = {x}")
    L = tables.L
    by_val: dict[int, int] = {}
    for y in _chain_values(x, K):
        t = _g_exact_sum_scaled(y, K, tables, by_val)
        # t = L * (L - g(y) L); exact divisibility is a structural invariant
        if t % L:
            raise AssertionError(f"scaled recursion lost exact divisibility at {y}")
        by_val[y] = L - t // L
    scaled = tables.g_scaled_base(x) if x <= K else by_val[x]
    return Fraction(scaled, L)


# ---------------------------------------------------------------------------
# g recursion, certified float mode
# ---------------------------------------------------------------------------

# memoized values are plain (value, err) tuples; the fold keeps the hot loop
# free of per-term object allocation


def _g_float_sum(
    y: int, K: int, gv, ge, by_val: dict
) -> tuple[float, float]:
    """sum_{nu=2}^{y} (1/nu) g(floor(y/nu)) with a propagated error bound."""
    s = isqrt(y)
    total = 0.0
    comp = 0.0
    mag = 0.0
    ins = 0.0
    nterms = 0
    nu_big_hi = min(s, y // (K + 1))

    def fold(term: float, ierr: float) -> None:
        nonlocal total, comp, mag, ins
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        mag += abs(term)
        ins += ierr

    for nu in range(2, nu_big_hi + 1):
        w = 1.0 / nu
        gval, gerr = by_val[y // nu]
        term = w * gval
        fold(term, w * gerr + EPS * abs(term) * 2.0)
        nterms += 1
    for nu in range(max(2, nu_big_hi + 1), s + 1):
        w = 1.0 / nu
        q = y // nu
        term = w * gv[q]
        fold(term, w * ge[q] + EPS * abs(term) * 2.0)
        nterms += 1
    qmax = y // (s + 1)
    for q in range(1, qmax + 1):
        n1 = max(y // (q + 1) + 1, s + 1)
        n2 = y // q
        if n2 < n1:
            continue
        hseg = harmonic_number(n2).sub(harmonic_number(n1 - 1))
        if q <= K:
            gval, gerr = float(gv[q]), float(ge[q])
        else:
            gval, gerr = by_val[q]
        term = hseg.value * gval
        ierr = abs(hseg.value) * gerr + hseg.err * abs(gval) + EPS * abs(term)
        fold(term, ierr)
        nterms += 1
    err = (EPS * mag * (nterms + 4.0) + ins) * _HEADROOM
    return total + comp, err


def g_recursive_float(
    x: int, *, crossover: int | None = None, tables: SummatoryTables | None = None
) -> CertifiedFloat:
    """Certified g(x) by the floor-quotient recursion; O(x^(2/3)) time."""
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    K = default_crossover(x) if crossover is None else max(1, min(int(crossover), x))
    if tables is None or tables.limit < K:
        tables = SummatoryTables(K)
    gv, ge = tables.g_arrays
    by_val: dict[int, tuple[float, float]] = {}
    for y in _chain_values(x, K):
        sv, serr = _g_float_sum(y, K, gv, ge, by_val)
        v = 1.0 - sv
        by_val[y] = (v, (serr + EPS * abs(v)) * _HEADROOM)
    if x <= K:
        return CertifiedFloat(float(gv[x]), float(ge[x]))
    v, e = by_val[x]
    return CertifiedFloat(v, e)


def g_recursive(
    x: int,
    *,
    exact: bool | None = None,
    crossover: int | None = None,
    cutoff: int = EXACTNESS_CUTOFF,
) -> Fraction | CertifiedFloat:
    """g(x) by floor-quotient recursion: exact rational at or below the
    cutoff (or when forced), certified float above."""
    x = int(x)
    if exact is None:
        exact = x <= cutoff
    if exact:
        return g_recursive_exact(x, crossover=crossover)
    return g_recursive_float(x, crossover=crossover)
