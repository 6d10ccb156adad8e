"""Scalar definitions of the inequality measures.

Everything here follows the definitional two-atan2 form of the angular
difference; the engine module carries the optimized evaluation strategies
and is tested against these functions.
"""

from __future__ import annotations

import math

import numpy as np

from .sample import (
    DEGENERATE,
    IndexReport,
    Sample,
    require_valid,
)

TWO_OVER_PI = 2.0 / math.pi


def angular_difference(a: float, b: float) -> float:
    """Proportional difference between two values as a scaled angle.

    Returns (2/pi) * |atan2(a, b) - atan2(b, a)|.  Symmetric in (a, b) and
    invariant under positive rescaling of both arguments.  For nonnegative
    inputs the result lies in [0, 1]; with exactly one negative argument it
    can exceed 1 (reported, never clamped).  (0, 0) is defined as exactly 0
    regardless of platform atan2 conventions.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("angular_difference requires finite inputs")
    if a == b:
        return 0.0
    return TWO_OVER_PI * abs(math.atan2(a, b) - math.atan2(b, a))


def angular_difference_single_atan(a: float, b: float) -> float:
    """Single-arctangent identity for nonnegative pairs: 1 - (4/pi)*atan(min/max)."""
    if a < 0 or b < 0:
        raise ValueError("single-atan identity only holds for nonnegative pairs")
    if a == b:
        return 0.0
    lo, hi = (a, b) if a < b else (b, a)
    return 1.0 - (4.0 / math.pi) * math.atan(lo / hi)


def pair_contribution(y_i: float, y_j: float, population: float, mean: float) -> float:
    """One unordered pair's share of the Gini: |y_i - y_j| / (population^2 * mean)."""
    if population <= 0:
        raise ValueError("population must be positive")
    if mean <= 0:
        raise ValueError("pair contribution undefined for nonpositive mean")
    return abs(y_i - y_j) / (population * population * mean)


def _pair_sums(values: np.ndarray, weights: np.ndarray, want_angle: bool):
    """Row-wise accumulation of the weighted pair sums.

    Returns (sum of w_i*w_j*|y_i-y_j|, sum of w_i*w_j*|y_i-y_j|*angle,
    sum of w_i*w_j*angle) over unordered pairs i<j.  Pairs with equal values
    contribute exactly zero without evaluating atan2.
    """
    n = values.size
    abs_rows = []
    va_rows = []
    ang_rows = []
    for i in range(n - 1):
        yi = values[i]
        rest = values[i + 1:]
        ww = weights[i] * weights[i + 1:]
        diff = np.abs(rest - yi)
        abs_rows.append(float(np.dot(ww, diff)))
        if want_angle:
            angle = TWO_OVER_PI * np.abs(
                np.arctan2(yi, rest) - np.arctan2(rest, yi)
            )
            angle[rest == yi] = 0.0
            va_rows.append(float(np.dot(ww, diff * angle)))
            ang_rows.append(float(np.dot(ww, angle)))
    return math.fsum(abs_rows), math.fsum(va_rows), math.fsum(ang_rows)


def gini(s: Sample, strict: bool = False) -> IndexReport:
    """Classical Gini coefficient as the sum of pairwise contributions.

    Sum over unordered pairs of w_i*w_j*|y_i - y_j| / (W^2 * mu).
    """
    verdict = require_valid(s, "gini", strict)
    w = s.effective_weights()
    pop = s.population()
    mu = s.mean()
    abs_sum, _, _ = _pair_sums(s.values, w, want_angle=False)
    return IndexReport(
        measure="gini",
        value=abs_sum / (pop * pop * mu),
        population=pop,
        mean=mu,
        nonpositive_share=s.nonpositive_share(),
        warnings=list(verdict.warnings),
    )


def vega(s: Sample, strict: bool = False) -> IndexReport:
    """Angular-scaled inequality index.

    Sum over unordered pairs of w_i*w_j*|y_i - y_j|*angle(y_i, y_j)
    / (W^2 * mu).  Zero iff all values are equal; for unit weights on
    nonnegative values it is bounded by (n-1)/n and by the Gini of the
    same input.
    """
    verdict = require_valid(s, "vega", strict)
    w = s.effective_weights()
    pop = s.population()
    mu = s.mean()
    _, va_sum, _ = _pair_sums(s.values, w, want_angle=True)
    return IndexReport(
        measure="vega",
        value=va_sum / (pop * pop * mu),
        population=pop,
        mean=mu,
        nonpositive_share=s.nonpositive_share(),
        warnings=list(verdict.warnings),
    )


def mean_angular_difference(s: Sample, strict: bool = False) -> IndexReport:
    """Weighted mean of the pairwise angular difference.

    Denominator is the weighted count of cross pairs, (W^2 - sum w_i^2)/2;
    no mean appears, so the measure is defined even when the mean is not
    positive.  A sample with a single observation is degenerate and reports
    zero with a warning.
    """
    verdict = require_valid(s, "angular_mean", strict)
    w = s.effective_weights()
    pop = s.population()
    mu = s.mean()
    warnings = list(verdict.warnings)
    denom = (pop * pop - float(np.dot(w, w))) / 2.0
    if denom <= 0:
        warnings.append(DEGENERATE)
        value = 0.0
    else:
        _, _, ang_sum = _pair_sums(s.values, w, want_angle=True)
        value = ang_sum / denom
    return IndexReport(
        measure="angular_mean",
        value=value,
        population=pop,
        mean=mu,
        nonpositive_share=s.nonpositive_share(),
        warnings=warnings,
    )


def compute(s: Sample, measure: str, strict: bool = False) -> IndexReport:
    """Dispatch by measure name."""
    if measure == "gini":
        return gini(s, strict)
    if measure == "vega":
        return vega(s, strict)
    if measure == "angular_mean":
        return mean_angular_difference(s, strict)
    raise ValueError("unknown measure: %r" % measure)
