"""Synthetic data, transfer utilities, and a brute-force reference implementation.

The oracle here is deliberately the most literal rendering of the pair
sums: a nested double loop over ordered pairs divided by two, plain
accumulation, no fast paths.  Everything else in the package is tested
against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .sample import Sample

_ORACLE_MAX_N = 5000


@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible synthetic sample: family in {lognormal, pareto, uniform, point_mass}."""

    family: str
    n: int
    seed: int
    mu: float = 0.0
    sigma: float = 1.0
    alpha: float = 1.5
    x_min: float = 1.0
    lo: float = 0.0
    hi: float = 1.0
    value: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.family == "lognormal" and self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.family == "pareto" and (self.alpha <= 0 or self.x_min <= 0):
            raise ValueError("pareto needs alpha > 0 and x_min > 0")
        if self.family == "uniform" and not self.lo < self.hi:
            raise ValueError("uniform needs lo < hi")
        if self.family not in ("lognormal", "pareto", "uniform", "point_mass"):
            raise ValueError("unknown family: %r" % self.family)


def generate(spec: GeneratorSpec) -> Sample:
    """Draw a seeded sample from the requested family."""
    rng = np.random.default_rng(spec.seed)
    if spec.family == "lognormal":
        values = rng.lognormal(spec.mu, spec.sigma, spec.n)
    elif spec.family == "pareto":
        values = spec.x_min * (1.0 + rng.pareto(spec.alpha, spec.n))
    elif spec.family == "uniform":
        values = rng.uniform(spec.lo, spec.hi, spec.n)
    else:
        values = np.full(spec.n, float(spec.value))
    return Sample(values)


@dataclass(frozen=True)
class Transfer:
    """A progressive transfer: amount moves from a richer to a poorer position."""

    from_index: int
    to_index: int
    amount: float


@dataclass
class TransferResult:
    sample: Sample
    ranks_preserved: bool


def apply_transfer(s: Sample, t: Transfer) -> TransferResult:
    """Move t.amount from the richer donor to the poorer recipient.

    The total is unchanged and exactly two entries are modified.  Reports
    whether the value ordering survived the transfer (checked explicitly,
    not inferred from bounds on the amount).
    """
    if s.weights is not None:
        raise ValueError("transfers are defined on unit-weight samples")
    if t.amount <= 0:
        raise ValueError("transfer amount must be positive")
    values = s.values
    if values[t.from_index] <= values[t.to_index]:
        raise ValueError("transfer must be progressive (richer to poorer)")
    new_values = values.copy()
    new_values[t.from_index] -= t.amount
    new_values[t.to_index] += t.amount
    preserved = bool(np.array_equal(
        np.argsort(values, kind="stable"),
        np.argsort(new_values, kind="stable"),
    ))
    return TransferResult(sample=Sample(new_values), ranks_preserved=preserved)


def oracle(s: Sample, measure: str) -> float:
    """Definitional double loop over ordered pairs, divided by two."""
    values = [float(v) for v in s.values]
    weights = [float(w) for w in s.effective_weights()]
    n = len(values)
    if n > _ORACLE_MAX_N:
        raise ValueError("oracle limited to n <= %d" % _ORACLE_MAX_N)
    pop = sum(weights)
    mu = sum(w * v for w, v in zip(weights, values)) / pop
    if measure in ("gini", "vega") and mu <= 0:
        raise ValueError("nonpositive mean")
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = abs(values[i] - values[j])
            if measure == "gini":
                term = d
            else:
                ang = core.angular_difference(values[i], values[j])
                term = d * ang if measure == "vega" else ang
            total += weights[i] * weights[j] * term
    total /= 2.0
    if measure == "angular_mean":
        denom = (pop * pop - sum(w * w for w in weights)) / 2.0
        return total / denom if denom > 0 else 0.0
    return total / (pop * pop * mu)


@dataclass
class DiminishingTransferReport:
    sample: Sample
    delta_low: float
    delta_high: float
    ok: bool


def diminishing_transfer_check(a: float, b: float, d: float,
                               eps: float) -> DiminishingTransferReport:
    """Compare equal-sized transfers inside a poor pair and a rich pair.

    Builds {a, a+d, b, b+d} with a <= b, all positive, and applies the same
    transfer eps within each pair.  The reduction from the poor-pair
    transfer must be at least as large (strictly larger when a < b), and
    both reductions must be positive.
    """
    if a <= 0 or b <= 0 or d <= 0:
        raise ValueError("a, b, d must be positive")
    if a > b:
        raise ValueError("expected a <= b (poor pair first)")
    if a < b and a + d >= b:
        raise ValueError("overlapping ranks: need a + d < b")
    if not eps < d / 2:
        raise ValueError("eps must be smaller than d/2")
    base = Sample(np.array([a, a + d, b, b + d]))
    v0 = core.vega(base).value
    low = Sample(np.array([a + eps, a + d - eps, b, b + d]))
    high = Sample(np.array([a, a + d, b + eps, b + d - eps]))
    delta_low = v0 - core.vega(low).value
    delta_high = v0 - core.vega(high).value
    if a == b:
        ok = math.isclose(delta_low, delta_high, rel_tol=1e-9) and delta_high > 0
    else:
        ok = delta_low > delta_high > 0
    return DiminishingTransferReport(sample=base, delta_low=delta_low,
                                     delta_high=delta_high, ok=ok)


@dataclass
class AngularMeanWitness:
    before: Sample
    after: Sample
    angular_before: float
    angular_after: float
    vega_before: float
    vega_after: float
    gini_before: float
    gini_after: float
    angular_increased: bool
    vega_decreased: bool
    gini_decreased: bool


def angular_mean_witness() -> AngularMeanWitness:
    """Fixed progressive transfer on which the mean angular difference rises.

    {1, 2, 10} -> {1, 3, 9} moves one unit from the richest to the middle
    observation; both scaled indices fall, yet the mean angular difference
    increases, which is why the plain mean of angles is not an inequality
    measure.
    """
    before = Sample(np.array([1.0, 2.0, 10.0]))
    after = apply_transfer(before, Transfer(from_index=2, to_index=1, amount=1.0)).sample
    ang_b = core.mean_angular_difference(before).value
    ang_a = core.mean_angular_difference(after).value
    veg_b = core.vega(before).value
    veg_a = core.vega(after).value
    gin_b = core.gini(before).value
    gin_a = core.gini(after).value
    return AngularMeanWitness(
        before=before, after=after,
        angular_before=ang_b, angular_after=ang_a,
        vega_before=veg_b, vega_after=veg_a,
        gini_before=gin_b, gini_after=gin_a,
        angular_increased=ang_a > ang_b,
        vega_decreased=veg_a < veg_b,
        gini_decreased=gin_a < gin_b,
    )
