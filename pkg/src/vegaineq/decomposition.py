"""Additive split of the angular-scaled index into within- and between-group terms.

Because the index is a sum over unordered pairs, partitioning the
observations partitions the pair set into within-group and cross-group
pairs, and the split is an algebraic identity: the within part of group k
equals omega_k * V_k with omega_k = (W_k^2 * mu_k) / (W^2 * mu), and the
between term collects every cross-group pair.  The weights are derived
from the pair-contribution denominator, which is the unique choice that
makes the identity exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import core
from .sample import GroupedSample, IndexReport, Sample, require_valid


@dataclass
class GroupTerm:
    label: str
    population: float
    mean: float
    within_index: float | None  # None when the group mean is not positive
    weight: float
    contribution: float
    flagged: bool = False


@dataclass
class DecompositionReport:
    groups: list = field(default_factory=list)
    between_term: float = 0.0
    total: float = 0.0
    residual: float = 0.0


def _cross_numerator(values_a, weights_a, values_b, weights_b) -> float:
    """Sum of w_i*w_j*|y_i-y_j|*angle over all pairs across two groups."""
    rows = []
    for yi, wi in zip(values_a, weights_a):
        diff = np.abs(values_b - yi)
        angle = core.TWO_OVER_PI * np.abs(
            np.arctan2(yi, values_b) - np.arctan2(values_b, yi)
        )
        angle[values_b == yi] = 0.0
        rows.append(float(np.dot(wi * weights_b, diff * angle)))
    return math.fsum(rows)


def decompose(g: GroupedSample, strict: bool = False) -> DecompositionReport:
    """Split vega over a partition into weighted within-group terms plus a between term.

    Groups appear in first-occurrence order.  A group whose mean is not
    positive has no defined within index; its raw within-pair sum is folded
    into the contribution so the reconstruction identity still holds, and
    the group is flagged.
    """
    s = g.sample
    if len(g.labels) != s.n:
        raise ValueError("labels length differs from values length")
    if any(label == "" for label in g.labels):
        raise ValueError("empty group label")
    require_valid(s, "vega", strict)

    values = s.values
    weights = s.effective_weights()
    pop = s.population()
    mu = s.mean()
    denom = pop * pop * mu

    order = []
    members = {}
    for idx, label in enumerate(g.labels):
        if label not in members:
            members[label] = []
            order.append(label)
        members[label].append(idx)

    report = DecompositionReport()
    for label in order:
        idx = np.array(members[label])
        sub = Sample(values[idx], weights[idx] if s.weights is not None else None)
        w_k = sub.population()
        mu_k = sub.mean()
        if mu_k > 0:
            v_k = core.vega(sub).value
            omega = (w_k * w_k * mu_k) / denom
            contribution = omega * v_k
            flagged = False
        else:
            v_k = None
            omega = (w_k * w_k * mu_k) / denom
            contribution = _within_numerator(sub) / denom
            flagged = True
        report.groups.append(GroupTerm(
            label=label, population=w_k, mean=mu_k, within_index=v_k,
            weight=omega, contribution=contribution, flagged=flagged,
        ))

    between_rows = []
    for a in range(len(order)):
        ia = np.array(members[order[a]])
        for b in range(a + 1, len(order)):
            ib = np.array(members[order[b]])
            between_rows.append(_cross_numerator(
                values[ia], weights[ia], values[ib], weights[ib]))
    report.between_term = math.fsum(between_rows) / denom

    report.total = core.vega(s).value
    recombined = math.fsum(t.contribution for t in report.groups) + report.between_term
    report.residual = abs(report.total - recombined)
    return report


def _within_numerator(sub: Sample) -> float:
    """Raw within-pair vega numerator for a group (no normalization)."""
    _, va_sum, _ = core._pair_sums(sub.values, sub.effective_weights(), want_angle=True)
    return va_sum
