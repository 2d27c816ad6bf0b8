"""Value and shape checks for the truncation transform and its envelopes."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relmean import TruncationScale, psi, psi_lower, psi_upper, scaled_psi

import oracles

finite_values = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)


def test_psi_pinned_values():
    assert psi(0.0) == 0.0
    assert math.isclose(psi(1.0), oracles.PSI_ONE, rel_tol=1e-9)
    assert psi(-1.0) == -psi(1.0)


def test_envelope_pinned_values():
    assert psi_upper(0.0) == 0.0
    assert psi_upper(-2.0) == 0.0  # ln(1 - 2 + 2) = ln 1, analytically forced
    assert math.isclose(psi_upper(1.0), oracles.PSI_ONE, rel_tol=1e-9)
    assert psi_lower(0.0) == 0.0
    assert math.isclose(psi_lower(1.0), oracles.PSI_LOWER_ONE, rel_tol=1e-9)
    assert math.isclose(psi_lower(-1.0), -oracles.PSI_ONE, rel_tol=1e-9)


def test_scaled_psi_pinned_values():
    assert scaled_psi(TruncationScale(2.0), 0.0) == 0.0
    assert math.isclose(scaled_psi(TruncationScale(1.0), 1.0), oracles.PSI_ONE, rel_tol=1e-9)
    # near-identity regime: the transform deviates from u only at cubic order
    assert abs(scaled_psi(TruncationScale(0.001), 1.0) - 1.0) < 1e-6
    assert scaled_psi(0.5, 2.0) == pytest.approx(psi(1.0) / 0.5, rel=1e-15)


def test_truncation_scale_validation():
    with pytest.raises(ValueError):
        TruncationScale(0.0)
    with pytest.raises(ValueError):
        TruncationScale(-1.0)
    with pytest.raises(ValueError):
        TruncationScale(math.inf)


def test_rejects_non_finite_input():
    with pytest.raises(ValueError):
        psi(math.nan)
    with pytest.raises(ValueError):
        psi_upper(np.array([1.0, math.inf]))


def _at_most(value: float, limit: float, ulps: int = 2) -> bool:
    """value <= limit, allowing limit to be short by a couple of ulps."""
    for _ in range(ulps):
        limit = math.nextafter(limit, math.inf)
    return value <= limit


@settings(max_examples=200, derandomize=True)
@given(finite_values)
def test_envelope_property(u):
    # near zero the true gaps shrink like u^4/4, far below one ulp of the
    # values themselves, so the float evaluations may invert by an ulp
    assert _at_most(psi_lower(u), psi(u))
    assert _at_most(psi(u), psi_upper(u))


@settings(max_examples=200, derandomize=True)
@given(finite_values)
def test_exact_oddness(u):
    assert psi(-u) == -psi(u)


@settings(max_examples=200, derandomize=True)
@given(finite_values, st.floats(min_value=1e-6, max_value=1e4))
def test_scaled_psi_shrinks(u, alpha):
    # same ulp caveat as the envelope: for |alpha*u| tiny the true slack is
    # cubic and drops below float resolution
    assert _at_most(abs(scaled_psi(TruncationScale(alpha), u)), abs(u))


def test_envelope_on_dense_grid():
    grid = np.linspace(-100.0, 100.0, 100_001)
    low, mid, high = psi_lower(grid), psi(grid), psi_upper(grid)
    assert np.all(low <= mid) and np.all(mid <= high)


def test_monotone_on_sorted_random_grid():
    rng = np.random.default_rng(7)
    pts = np.sort(rng.uniform(-100.0, 100.0, 10_000))
    assert np.all(np.diff(psi(pts)) >= 0.0)


def test_exponential_identity():
    grid = np.linspace(-10.0, 10.0, 20_001)
    lhs = np.exp(psi_upper(grid))
    rhs = 1.0 + grid + 0.5 * grid * grid
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=0.0)


def test_lower_upper_mirror_symmetry():
    grid = np.linspace(-50.0, 50.0, 5_001)
    assert np.allclose(psi_lower(-grid), -psi_upper(grid), rtol=1e-13, atol=0.0)
