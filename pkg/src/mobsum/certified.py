"""Certified floating-point arithmetic: doubles paired with absolute error bounds.

A :class:`CertifiedFloat` carries a computed double ``value`` together with a
sound absolute bound ``err``, so that the true mathematical quantity is
guaranteed to lie in ``[value - err, value + err]``.

Error model
-----------
Sums are accumulated with two-term (Neumaier) compensation, and the published
bound is the cheap worst-case estimate

    err <= (number of float additions) * EPS * (sum of |terms|) + input errors

where EPS is the double-precision machine epsilon (2^-52).  This bound is
valid for *any* summation order, including the blocked/vectorised prefix
passes elsewhere in the package, and it dominates the true compensated error
by orders of magnitude.  Per-term input errors account for inexact term
construction: platform logarithms are assumed correct to 1 ulp and are charged
2 ulp each; a division is charged 1 ulp unless it is exact.

A sum of zero or one terms involves no float addition, so its rounding error
is exactly zero; only input errors survive.  This keeps trivially exact
quantities (empty sums, single exact terms) certified at +/- 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 2.0 ** -52

# Correctly rounded double of the Euler-Mascheroni constant
# 0.57721566490153286060651209008240243...; cross-checked at test time
# against the harmonic-minus-log limit, Euler-Maclaurin accelerated.
EULER_GAMMA = 0.5772156649015329

# Relative headroom absorbing second-order effects (rounding of the error
# accounting itself; sound up to ~10^8 accumulated operations).  Keeps exact
# zeros exactly zero.
_HEADROOM = 1.0 + 2.0 ** -24


@dataclass(frozen=True)
class CertifiedFloat:
    """A double plus a sound absolute error bound."""

    value: float
    err: float

    def __post_init__(self) -> None:
        if self.err < 0.0 or math.isnan(self.err):
            raise ValueError(f"error bound must be non-negative, got {self.err}")

    @property
    def lower(self) -> float:
        return self.value - self.err

    @property
    def upper(self) -> float:
        return self.value + self.err

    @property
    def abs_upper(self) -> float:
        """Upper bound on the absolute value of the true quantity."""
        return abs(self.value) + self.err

    def __neg__(self) -> "CertifiedFloat":
        return CertifiedFloat(-self.value, self.err)

    def add(self, other: "CertifiedFloat") -> "CertifiedFloat":
        v = self.value + other.value
        return CertifiedFloat(v, (self.err + other.err + EPS * abs(v)) * _HEADROOM)

    def sub(self, other: "CertifiedFloat") -> "CertifiedFloat":
        v = self.value - other.value
        return CertifiedFloat(v, (self.err + other.err + EPS * abs(v)) * _HEADROOM)

    def add_exact(self, c: float) -> "CertifiedFloat":
        """Add an exactly representable constant (e.g. an integer, 1.0)."""
        v = self.value + c
        return CertifiedFloat(v, (self.err + EPS * abs(v)) * _HEADROOM)

    def mul(self, other: "CertifiedFloat") -> "CertifiedFloat":
        v = self.value * other.value
        e = (
            abs(self.value) * other.err
            + abs(other.value) * self.err
            + self.err * other.err
            + EPS * abs(v)
        )
        return CertifiedFloat(v, e * _HEADROOM)

    def scale_exact(self, c: float) -> "CertifiedFloat":
        """Multiply by an exactly representable constant."""
        v = self.value * c
        return CertifiedFloat(v, (self.err * abs(c) + EPS * abs(v)) * _HEADROOM)

    def div_exact(self, d: float) -> "CertifiedFloat":
        """Divide by an exactly representable nonzero constant."""
        v = self.value / d
        return CertifiedFloat(v, (self.err / abs(d) + EPS * abs(v)) * _HEADROOM)


ZERO = CertifiedFloat(0.0, 0.0)


def from_exact(q) -> CertifiedFloat:
    """Certify an exact number (int or Fraction) as its nearest double.

    ``float(Fraction)`` and int->float conversion are correctly rounded, so
    the conversion error is at most half an ulp.
    """
    v = float(q)
    if v == q:
        return CertifiedFloat(v, 0.0)
    return CertifiedFloat(v, EPS * abs(v))


def log_certified(x: float) -> CertifiedFloat:
    """Platform log with the 1-ulp correctness assumption charged as 2 ulp."""
    v = math.log(x)
    return CertifiedFloat(v, 2.0 * EPS * abs(v))


class CompensatedSum:
    """Streaming Neumaier-compensated sum publishing the worst-case bound.

    ``add`` takes one term, ``add_block`` a numpy array of terms (reduced with
    numpy's pairwise ``sum``, then folded in; the published per-addition bound
    covers any summation tree).  ``input_err`` accumulates the callers'
    per-term construction errors.
    """

    __slots__ = ("_hi", "_lo", "_mag", "_adds", "_input_err")

    def __init__(self) -> None:
        self._hi = 0.0
        self._lo = 0.0
        self._mag = 0.0
        self._adds = 0
        self._input_err = 0.0

    def add(self, term: float, input_err: float = 0.0) -> None:
        if self._adds or self._hi or self._lo:
            self._adds += 1
        t = self._hi + term
        if abs(self._hi) >= abs(term):
            self._lo += (self._hi - t) + term
        else:
            self._lo += (term - t) + self._hi
        self._hi = t
        self._mag += abs(term)
        self._input_err += input_err

    def add_block(self, terms, input_err: float = 0.0) -> None:
        import numpy as np

        n = terms.size
        if n == 0:
            self._input_err += input_err
            return
        s = float(np.sum(terms))
        m = float(np.sum(np.abs(terms)))
        self.add(s, input_err)
        self._mag += m - abs(s)
        # n - 1 additions inside the block reduction; the fold-in add is
        # already counted by ``add`` when the accumulator was nonempty
        self._adds += n - 1

    @property
    def value(self) -> float:
        return self._hi + self._lo

    def result(self) -> CertifiedFloat:
        err = (EPS * self._mag * self._adds + self._input_err) * _HEADROOM
        return CertifiedFloat(self._hi + self._lo, err)


def compare_le(lhs: CertifiedFloat, rhs: CertifiedFloat) -> str:
    """Certified verdict for ``lhs <= rhs``.

    Returns ``"pass"`` when the inequality holds for every pair of true values
    in the two intervals, ``"violation"`` when it fails for every pair, and
    ``"indeterminate"`` when the intervals straddle the boundary.
    """
    if lhs.upper <= rhs.lower:
        return "pass"
    if lhs.lower > rhs.upper:
        return "violation"
    return "indeterminate"


def compare_lt(lhs: CertifiedFloat, rhs: CertifiedFloat) -> str:
    """Certified verdict for the strict inequality ``lhs < rhs``."""
    if lhs.upper < rhs.lower:
        return "pass"
    if lhs.lower >= rhs.upper:
        return "violation"
    return "indeterminate"
