"""Input containers, validation, and result records for the inequality measures."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MEASURES = ("gini", "vega", "angular_mean")

# diagnostic codes
NONPOSITIVE_MAJORITY = "NONPOSITIVE_MAJORITY"
ANGLE_ABOVE_ONE = "ANGLE_ABOVE_ONE"
DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class Sample:
    """A vector of observation values with optional nonnegative frequency weights.

    Integer weights behave exactly like explicit replication of observations.
    """

    values: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        if self.weights is not None:
            object.__setattr__(self, "weights", np.asarray(self.weights, dtype=np.float64))

    @property
    def n(self) -> int:
        return self.values.size

    def effective_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.n)
        return self.weights

    def population(self) -> float:
        """Total weight W (observation count when unweighted)."""
        if self.weights is None:
            return float(self.n)
        return float(np.sum(self.weights))

    def mean(self) -> float:
        """Weighted mean of the values."""
        w = self.effective_weights()
        return float(np.dot(w, self.values) / np.sum(w))

    def nonpositive_share(self) -> float:
        """Weighted share of values <= 0."""
        w = self.effective_weights()
        total = np.sum(w)
        if total <= 0:
            return 0.0
        return float(np.sum(w[self.values <= 0.0]) / total)


@dataclass(frozen=True)
class GroupedSample:
    """A Sample plus one group label per observation, for subgroup decomposition."""

    sample: Sample
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))


@dataclass
class IndexReport:
    """A computed measure value with diagnostics."""

    measure: str
    value: float
    population: float
    mean: float
    nonpositive_share: float
    warnings: list = field(default_factory=list)


@dataclass
class ValidationVerdict:
    ok: bool
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def validate(s: Sample, measure: str = "vega", strict: bool = False) -> ValidationVerdict:
    """Check a Sample against the preconditions of the requested measure.

    Hard errors: empty input, non-finite entries, weight shape/sign problems,
    and (for gini/vega) nonpositive weighted mean.  A weighted share of
    nonpositive values at or above one half degrades the transfer principle:
    it is reported as NONPOSITIVE_MAJORITY, escalated to an error in strict
    mode.  Any negative value can push pairwise angles above one, reported
    as ANGLE_ABOVE_ONE.
    """
    errors = []
    warnings = []
    v = s.values
    if v.size == 0:
        errors.append("empty sample")
        return ValidationVerdict(ok=False, errors=errors, warnings=warnings)
    if not np.all(np.isfinite(v)):
        errors.append("non-finite value entries")
    if s.weights is not None:
        w = s.weights
        if w.shape != v.shape:
            errors.append("weights length differs from values length")
        else:
            if not np.all(np.isfinite(w)):
                errors.append("non-finite weight entries")
            elif np.any(w < 0):
                errors.append("negative weights")
            elif np.sum(w) <= 0:
                errors.append("total weight is not positive")
    if errors:
        return ValidationVerdict(ok=False, errors=errors, warnings=warnings)

    if measure in ("gini", "vega") and s.mean() <= 0:
        errors.append("nonpositive mean: %s is undefined" % measure)

    if np.any(v < 0):
        warnings.append(ANGLE_ABOVE_ONE)
    if s.nonpositive_share() >= 0.5:
        if strict:
            errors.append(NONPOSITIVE_MAJORITY)
        else:
            warnings.append(NONPOSITIVE_MAJORITY)

    return ValidationVerdict(ok=not errors, errors=errors, warnings=warnings)


def require_valid(s: Sample, measure: str, strict: bool = False) -> ValidationVerdict:
    """Validate and raise ValueError on any error."""
    verdict = validate(s, measure, strict)
    if not verdict.ok:
        raise ValueError("; ".join(verdict.errors))
    return verdict
