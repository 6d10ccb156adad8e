"""Invariant checks on randomly generated inputs."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vegaineq import Sample, Transfer, apply_transfer, gini, oracle, vega

values_lists = st.lists(
    st.floats(min_value=0.01, max_value=1e6, allow_nan=False),
    min_size=2, max_size=40,
)


@given(values_lists, st.floats(min_value=1e-6, max_value=1e6))
@settings(max_examples=60, deadline=None)
def test_scale_invariance(values, c):
    base = vega(Sample(values)).value
    scaled = vega(Sample(np.array(values) * c)).value
    assert scaled == pytest.approx(base, abs=1e-10)


@given(values_lists, st.integers(min_value=2, max_value=5))
@settings(max_examples=40, deadline=None)
def test_population_invariance(values, k):
    base = vega(Sample(values)).value
    replicated = vega(Sample(values * k)).value
    assert replicated == pytest.approx(base, abs=1e-10)


@given(values_lists, st.integers(min_value=1, max_value=7))
@settings(max_examples=40, deadline=None)
def test_integer_weights_equal_replication(values, k):
    weighted = vega(Sample(values, [float(k)] * len(values))).value
    replicated = vega(Sample(values * k)).value
    assert weighted == pytest.approx(replicated, abs=1e-12)


@given(values_lists)
@settings(max_examples=60, deadline=None)
def test_vega_dominated_by_gini(values):
    s = Sample(values)
    assert vega(s).value <= gini(s).value + 1e-14


@given(values_lists)
@settings(max_examples=60, deadline=None)
def test_bounds_unit_weights(values):
    n = len(values)
    v = vega(Sample(values)).value
    assert -1e-14 <= v <= (n - 1) / n + 1e-12


@given(values_lists)
@settings(max_examples=30, deadline=None)
def test_matches_oracle(values):
    s = Sample(values)
    assert vega(s).value == pytest.approx(oracle(s, "vega"), abs=1e-12)
    assert gini(s).value == pytest.approx(oracle(s, "gini"), abs=1e-12)


@given(st.lists(st.floats(min_value=0.1, max_value=1e4, allow_nan=False),
                min_size=3, max_size=30, unique=True))
@settings(max_examples=60, deadline=None)
def test_pigou_dalton_strict_decrease(values):
    s = Sample(values)
    order = np.argsort(s.values)
    rich, poor = int(order[-1]), int(order[0])
    gap = s.values[rich] - s.values[poor]
    eps = gap * 1e-3
    result = apply_transfer(s, Transfer(from_index=rich, to_index=poor, amount=eps))
    if result.ranks_preserved:
        assert vega(result.sample).value < vega(s).value
