"""Frequency-resolved filter response assembly and sideband sampling."""

import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sqzfilter import FilterResponse, LineshapeParams, rotation_angle

from_lineshape = FilterResponse.from_lineshape
from_table = FilterResponse.from_table

SYMMETRIC = LineshapeParams(0.24, 0.0, 0.28, 4.0e6)
ASYMMETRIC = LineshapeParams(0.20, 0.05, 0.05, 1.4e6)


class TestFromLineshape:
    def test_zero_phase_at_center(self):
        resp = from_lineshape(SYMMETRIC, "zero-phase", omega_max=2.0e6)
        tr = resp.at(0.0)
        assert_allclose(tr.t_plus, 0.52, rtol=1e-12)
        assert_allclose(tr.t_minus, 0.52, rtol=1e-12)
        assert tr.theta_plus == 0.0
        assert tr.theta_minus == 0.0

    def test_tail_approaches_background(self):
        p = LineshapeParams(0.4, 0.0, 0.1, 1.0e6)
        resp = from_lineshape(p, "zero-phase", omega_max=1.0e12)
        tr = resp.at(1.0e12)
        assert_allclose(tr.t_plus, 0.1, atol=1e-9)

    def test_passivity_over_random_frequencies(self):
        rng = np.random.default_rng(5)
        resp = from_lineshape(ASYMMETRIC, "zero-phase", omega_max=5.0e6)
        t_plus, t_minus, _, _ = resp.arrays(rng.uniform(0.0, 5.0e6, 500))
        assert np.all(t_plus >= 0.0) and np.all(t_plus <= 1.0)
        assert np.all(t_minus >= 0.0) and np.all(t_minus <= 1.0)

    def test_arrays_match_at(self):
        resp = from_lineshape(ASYMMETRIC, "minimum-phase", omega_max=2.0e6)
        omegas = np.array([1.0e5, 7.0e5, 1.9e6])
        t_plus, t_minus, th_plus, th_minus = resp.arrays(omegas)
        for i, omega in enumerate(omegas):
            tr = resp.at(float(omega))
            assert tr.t_plus == t_plus[i]
            assert tr.t_minus == t_minus[i]
            assert tr.theta_plus == th_plus[i]
            assert tr.theta_minus == th_minus[i]

    def test_rejects_active_window(self):
        hot = LineshapeParams(0.9, 0.0, 0.2, 1.0e6)
        with pytest.raises(ValueError):
            from_lineshape(hot, "zero-phase", omega_max=2.0e6)

    def test_rejects_unknown_phase_model(self):
        with pytest.raises(ValueError):
            from_lineshape(SYMMETRIC, "cepstral", omega_max=1.0e6)


class TestMinimumPhaseModel:
    def test_symmetric_window_gives_no_quadrature_rotation(self):
        # equal-magnitude mirror sidebands acquire opposite phases, so
        # the induced rotation angle cancels everywhere
        resp = from_lineshape(SYMMETRIC, "minimum-phase", omega_max=2.0e6)
        omegas = np.linspace(0.0, 2.0e6, 401)
        _, _, th_plus, th_minus = resp.arrays(omegas)
        phi = 0.5 * (th_plus + th_minus)
        assert np.max(np.abs(phi)) < 1e-3

    def test_asymmetric_window_rotates(self):
        resp = from_lineshape(ASYMMETRIC, "minimum-phase", omega_max=2.0e6)
        omegas = np.linspace(1.0e5, 2.0e6, 96)
        _, _, th_plus, th_minus = resp.arrays(omegas)
        phi = np.array([rotation_angle(a, b)
                        for a, b in zip(th_plus, th_minus)])
        assert np.ptp(phi) > 0.05

    def test_phase_tabulated_once_then_interpolated(self):
        resp = from_lineshape(ASYMMETRIC, "minimum-phase", omega_max=2.0e6)
        assert resp.phase_detuning is not None
        grid = np.asarray(resp.phase_detuning)
        values = np.asarray(resp.phase_values)
        omega = 1.25e6
        tr = resp.at(omega)
        assert_allclose(tr.theta_plus, np.interp(omega, grid, values),
                        rtol=1e-12)
        assert_allclose(tr.theta_minus, np.interp(-omega, grid, values),
                        rtol=1e-12)


class TestGoldenPhaseProfile:
    def test_asymmetric_profile_is_frozen(self, golden_dir):
        # regression pin: regenerating this file requires a deliberate
        # decision that the reconstruction itself changed
        doc = json.loads(
            (golden_dir / "asymmetric_minphase_profile.json").read_text())
        w = doc["window"]
        params = LineshapeParams(w["a_sym"], w["b_asym"], w["c_bg"],
                                 w["gamma_hz"], delta0=w["delta0_hz"])
        resp = from_lineshape(params, "minimum-phase", omega_max=2.0e6)
        grid = np.asarray(resp.phase_detuning)
        values = np.asarray(resp.phase_values)
        for row in doc["profile"]:
            got = np.interp(row["detuning_hz"], grid, values)
            assert abs(got - row["theta_rad"]) < 1e-9, row


class TestExplicitTable:
    def test_phase_table_is_used_verbatim(self):
        det = np.linspace(-3.0e6, 3.0e6, 61)
        phase = 1.0e-7 * det
        resp = from_lineshape(SYMMETRIC, "explicit-table", omega_max=2.0e6,
                              phase_table=(det, phase))
        tr = resp.at(1.0e6)
        assert_allclose(tr.theta_plus, 0.1, rtol=1e-12)
        assert_allclose(tr.theta_minus, -0.1, rtol=1e-12)

    def test_requires_table(self):
        with pytest.raises(ValueError):
            from_lineshape(SYMMETRIC, "explicit-table", omega_max=2.0e6)

    def test_table_must_cover_band(self):
        det = np.linspace(-0.5e6, 0.5e6, 11)
        with pytest.raises(ValueError):
            from_lineshape(SYMMETRIC, "explicit-table", omega_max=2.0e6,
                           phase_table=(det, np.zeros(11)))


class TestFromTable:
    def test_interpolates_measured_magnitude(self):
        det = np.linspace(-5.0e6, 5.0e6, 11)
        mag = np.full(11, 0.5)
        mag[5] = 0.9
        resp = from_table(det, mag)
        # halfway between grid points: linear interpolation
        tr = resp.at(0.5e6)
        assert_allclose(tr.t_plus, 0.7, rtol=1e-12)
        assert resp.omega_max == 5.0e6

    def test_band_limit_from_shorter_side(self):
        det = np.linspace(-2.0e6, 6.0e6, 81)
        resp = from_table(det, np.full(81, 0.5))
        assert resp.omega_max == 2.0e6

    def test_rejects_out_of_range_magnitude(self):
        det = np.linspace(-1.0e6, 1.0e6, 11)
        mag = np.full(11, 0.5)
        mag[3] = 1.2
        with pytest.raises(ValueError):
            from_table(det, mag)

    def test_rounding_slack_is_clipped(self):
        det = np.linspace(-1.0e6, 1.0e6, 11)
        mag = np.full(11, 1.0 + 1e-9)
        resp = from_table(det, mag)
        t_plus, _, _, _ = resp.arrays(np.array([0.5e6]))
        assert t_plus[0] == 1.0


class TestFilterResponseValidation:
    def test_needs_exactly_one_magnitude_source(self):
        with pytest.raises(ValueError):
            FilterResponse(phase_model="zero-phase", omega_max=1.0e6)

    def test_minimum_phase_requires_phase_grid(self):
        with pytest.raises(ValueError):
            FilterResponse(phase_model="minimum-phase", omega_max=1.0e6,
                           params=SYMMETRIC)
