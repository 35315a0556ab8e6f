"""Transmission window model: evaluation, sideband pairs, extremes."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sqzfilter import (
    LineshapeParams,
    TransmissionTrace,
    eval_lineshape,
    lineshape_extremes,
    sideband_pair,
    validate_bounds,
)

SYMMETRIC = LineshapeParams(a_sym=0.24, b_asym=0.0, c_bg=0.28, gamma=4.0e6)
MIXED = LineshapeParams(a_sym=0.24, b_asym=0.05, c_bg=0.28, gamma=2.0e6)


class TestParams:
    def test_rejects_nonpositive_width(self):
        with pytest.raises(ValueError):
            LineshapeParams(0.2, 0.0, 0.1, 0.0)
        with pytest.raises(ValueError):
            LineshapeParams(0.2, 0.0, 0.1, -1.0e6)

    def test_as_dict_keys(self):
        d = MIXED.as_dict()
        assert set(d) == {"a_sym", "b_asym", "c_bg", "gamma_hz", "delta0_hz"}
        assert d["gamma_hz"] == 2.0e6


class TestEval:
    def test_peak_value(self):
        assert_allclose(eval_lineshape(SYMMETRIC, 0.0), 0.52, rtol=1e-15)

    def test_peak_is_sum_of_amplitude_and_background(self):
        for a in (0.1, 0.24, 0.4):
            p = LineshapeParams(a, 0.0, 0.05, 1.0e6)
            assert_allclose(eval_lineshape(p, 0.0), a + 0.05, rtol=1e-15)

    def test_half_width_point(self):
        # symmetric part falls to half its peak at one width off center
        p = LineshapeParams(0.4, 0.0, 0.1, 2.0e6)
        assert_allclose(eval_lineshape(p, 2.0e6), 0.3, rtol=1e-14)
        assert_allclose(eval_lineshape(p, -2.0e6), 0.3, rtol=1e-14)

    def test_asymmetric_contribution(self):
        assert_allclose(eval_lineshape(MIXED, 2.0e6), 0.425, rtol=1e-14)
        assert_allclose(eval_lineshape(MIXED, -2.0e6), 0.375, rtol=1e-14)

    def test_center_offset_shifts_curve(self):
        p = LineshapeParams(0.24, 0.05, 0.28, 2.0e6, delta0=5.0e5)
        assert_allclose(eval_lineshape(p, 0.0),
                        eval_lineshape(MIXED, 5.0e5), rtol=1e-15)

    def test_background_limit(self):
        assert_allclose(eval_lineshape(MIXED, 1e13), MIXED.c_bg, atol=1e-6)

    def test_vectorized(self):
        delta = np.linspace(-5e6, 5e6, 11)
        values = eval_lineshape(MIXED, delta)
        assert values.shape == (11,)
        assert_allclose(values[5], 0.52, rtol=1e-15)


class TestSidebandPair:
    def test_zero_frequency_pair_is_equal(self):
        t_plus, t_minus = sideband_pair(MIXED, 0.0)
        assert t_plus == t_minus

    def test_symmetric_window_gives_equal_pair(self):
        for omega in (1e5, 7e5, 2.3e6, 9e6):
            t_plus, t_minus = sideband_pair(SYMMETRIC, omega)
            assert t_plus == t_minus

    def test_asymmetric_window_splits_pair(self):
        t_plus, t_minus = sideband_pair(MIXED, 2.0e6)
        assert_allclose(t_plus, 0.425, rtol=1e-14)
        assert_allclose(t_minus, 0.375, rtol=1e-14)

    def test_matches_eval_at_opposite_detunings(self):
        p = LineshapeParams(0.3, -0.04, 0.1, 1.5e6, delta0=2.0e5)
        for omega in (0.0, 3e5, 1.1e6, 4e6):
            t_plus, t_minus = sideband_pair(p, omega)
            assert t_plus == eval_lineshape(p, omega)
            assert t_minus == eval_lineshape(p, -omega)


class TestExtremes:
    def test_symmetric_extremes(self):
        lo, hi = lineshape_extremes(SYMMETRIC, -2e7, 2e7)
        assert_allclose(hi, 0.52, rtol=1e-12)
        # background is approached but never reached on a finite interval
        assert SYMMETRIC.c_bg < lo < 0.30

    def test_asymmetric_extremes_match_dense_scan(self):
        p = LineshapeParams(0.2, 0.05, 0.05, 1.4e6)
        lo, hi = lineshape_extremes(p, -1.5e7, 1.5e7)
        delta = np.linspace(-1.5e7, 1.5e7, 2_000_001)
        values = eval_lineshape(p, delta)
        assert lo <= values.min() + 1e-12
        assert hi >= values.max() - 1e-12
        assert_allclose(lo, values.min(), atol=1e-8)
        assert_allclose(hi, values.max(), atol=1e-8)

    def test_stationary_points_outside_interval_ignored(self):
        # far off center the window is nearly flat background
        lo, hi = lineshape_extremes(MIXED, 8e7, 9e7)
        assert hi - lo < 0.01
        assert abs(lo - MIXED.c_bg) < 0.01


class TestValidateBounds:
    def test_passes_for_passive_window(self):
        validate_bounds(MIXED, -2e7, 2e7)

    def test_rejects_transmission_above_unity(self):
        p = LineshapeParams(0.9, 0.0, 0.2, 1.0e6)
        with pytest.raises(ValueError):
            validate_bounds(p, -5e6, 5e6)

    def test_rejects_negative_transmission(self):
        # strong asymmetry drags one wing below zero
        p = LineshapeParams(0.1, 0.5, 0.05, 1.0e6)
        with pytest.raises(ValueError):
            validate_bounds(p, -5e6, 5e6)


class TestTrace:
    def test_requires_five_points(self):
        with pytest.raises(ValueError):
            TransmissionTrace(detuning=(0.0, 1.0, 2.0),
                              transmission=(0.5, 0.5, 0.5))

    def test_requires_increasing_detuning(self):
        with pytest.raises(ValueError):
            TransmissionTrace(detuning=(0.0, 2.0, 1.0, 3.0, 4.0),
                              transmission=(0.5,) * 5)

    def test_requires_bounded_transmission(self):
        with pytest.raises(ValueError):
            TransmissionTrace(detuning=(0.0, 1.0, 2.0, 3.0, 4.0),
                              transmission=(0.5, 0.5, 1.2, 0.5, 0.5))

    def test_kind_whitelist(self):
        with pytest.raises(ValueError):
            TransmissionTrace(detuning=(0.0, 1.0, 2.0, 3.0, 4.0),
                              transmission=(0.5,) * 5, kind="power")
