"""Complex filter response: magnitude model plus a phase completion.

A FilterResponse maps a sideband frequency ``omega`` (Hz, >= 0) to the
complex transmissions seen by the two noise sidebands at ``+omega`` and
``-omega``.  The magnitude comes either from fitted lineshape parameters or
from a tabulated trace; the phase from one of three models:

``zero-phase``
    Both sideband phases are zero (attenuation only, no ellipse rotation).
``minimum-phase``
    Phases reconstructed from the magnitude by the causal (Hilbert
    transform) completion; symmetric magnitudes then produce no rotation,
    asymmetric ones a frequency-dependent rotation.
``explicit-table``
    Caller-supplied phase table over detuning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lineshape import (LineshapeParams, eval_lineshape, sideband_pair,
                        validate_bounds, RANGE_SLACK)
from .minphase import minimum_phase
from .noise import SidebandTransmission

__all__ = ["FilterResponse", "make_filter_response", "PHASE_MODELS"]

PHASE_MODELS = ("zero-phase", "minimum-phase", "explicit-table")

#: Detuning-grid size used when tabulating the minimum-phase profile of an
#: analytic lineshape (odd so zero detuning is a grid point).
_PHASE_GRID_POINTS = 4097


@dataclass(frozen=True)
class FilterResponse:
    """Frequency-resolved complex sideband transmission of a passive filter.

    Evaluable for ``omega`` in [0, ``omega_max``].  Either ``params`` is set
    (analytic magnitude) or a magnitude table is; phase tables are present
    for the non-trivial phase models.  Construct via :meth:`from_lineshape`
    or :meth:`from_table`.
    """

    phase_model: str
    omega_max: float
    params: LineshapeParams | None = None
    mag_detuning: tuple | None = None
    mag_values: tuple | None = None
    phase_detuning: tuple | None = None
    phase_values: tuple | None = None

    def __post_init__(self):
        if self.phase_model not in PHASE_MODELS:
            raise ValueError(
                f"phase_model must be one of {PHASE_MODELS}, "
                f"got {self.phase_model!r}")
        if not self.omega_max > 0.0:
            raise ValueError(f"omega_max must be positive, got {self.omega_max}")
        if (self.params is None) == (self.mag_detuning is None):
            raise ValueError(
                "exactly one magnitude source required: params or table")
        if self.phase_model != "zero-phase" and self.phase_detuning is None:
            raise ValueError(f"{self.phase_model} model requires a phase table")

    @classmethod
    def from_lineshape(cls, params: LineshapeParams, phase_model: str,
                       omega_max: float,
                       phase_table: tuple | None = None) -> "FilterResponse":
        """Build a response from window parameters.

        The lineshape is validated to stay within [0, 1] over the sideband
        domain.  For the minimum-phase model the phase profile is tabulated
        internally on a symmetric detuning grid wide enough that edge
        truncation does not disturb the band; for the explicit-table model
        pass ``phase_table = (detuning_hz, theta_rad)``.
        """
        if phase_model not in PHASE_MODELS:
            raise ValueError(
                f"phase_model must be one of {PHASE_MODELS}, got {phase_model!r}")
        validate_bounds(params, -omega_max, omega_max)
        phase_det = phase_val = None
        if phase_model == "minimum-phase":
            if phase_table is not None:
                raise ValueError(
                    "phase_table is only meaningful with explicit-table")
            span = max(2.0 * omega_max, abs(params.delta0) + 8.0 * params.gamma)
            grid = np.linspace(-span, span, _PHASE_GRID_POINTS)
            mag = np.asarray(eval_lineshape(params, grid))
            theta = minimum_phase(grid, mag)
            phase_det = tuple(float(x) for x in grid)
            phase_val = tuple(float(x) for x in theta)
        elif phase_model == "explicit-table":
            if phase_table is None:
                raise ValueError("explicit-table model requires phase_table")
            det, theta = phase_table
            phase_det = tuple(float(x) for x in det)
            phase_val = tuple(float(x) for x in theta)
            _check_phase_table(phase_det, phase_val, omega_max)
        elif phase_table is not None:
            raise ValueError("phase_table is only meaningful with explicit-table")
        return cls(phase_model=phase_model, omega_max=float(omega_max),
                   params=params, phase_detuning=phase_det,
                   phase_values=phase_val)

    @classmethod
    def from_table(cls, detuning, magnitude, phase_model: str = "zero-phase",
                   phase_table: tuple | None = None) -> "FilterResponse":
        """Build a response from a tabulated magnitude over detuning.

        ``detuning`` must cover both signs of the sideband domain; the
        served ``omega_max`` is the smaller one-sided reach.  Magnitude is
        interpolated linearly between nodes; the minimum-phase model
        additionally requires the uniform symmetric grid its reconstruction
        needs.
        """
        det = np.asarray(detuning, dtype=np.float64)
        mag = np.asarray(magnitude, dtype=np.float64)
        if det.ndim != 1 or det.shape != mag.shape or det.size < 2:
            raise ValueError("detuning and magnitude must be equal-length 1-D")
        if np.any(np.diff(det) <= 0):
            raise ValueError("detuning must be strictly increasing")
        if float(np.min(mag)) < -RANGE_SLACK or float(np.max(mag)) > 1.0 + RANGE_SLACK:
            raise ValueError(
                f"magnitude outside [0, 1]: range "
                f"[{float(np.min(mag))}, {float(np.max(mag))}]")
        omega_max = float(min(-det[0], det[-1]))
        if not omega_max > 0.0:
            raise ValueError(
                "detuning grid must extend to both signs to serve both "
                f"sidebands; got [{det[0]}, {det[-1]}]")
        mag = np.clip(mag, 0.0, 1.0)
        phase_det = phase_val = None
        if phase_model == "minimum-phase":
            if phase_table is not None:
                raise ValueError(
                    "phase_table is only meaningful with explicit-table")
            theta = minimum_phase(det, mag)
            phase_det = tuple(float(x) for x in det)
            phase_val = tuple(float(x) for x in theta)
        elif phase_model == "explicit-table":
            if phase_table is None:
                raise ValueError("explicit-table model requires phase_table")
            pdet, pval = phase_table
            phase_det = tuple(float(x) for x in pdet)
            phase_val = tuple(float(x) for x in pval)
            _check_phase_table(phase_det, phase_val, omega_max)
        return cls(phase_model=phase_model, omega_max=omega_max,
                   mag_detuning=tuple(float(x) for x in det),
                   mag_values=tuple(float(x) for x in mag),
                   phase_detuning=phase_det, phase_values=phase_val)

    def _check_domain(self, omegas: np.ndarray) -> None:
        if omegas.size and (float(np.min(omegas)) < 0.0
                            or float(np.max(omegas)) > self.omega_max * (1 + 1e-12)):
            raise ValueError(
                f"sideband frequency outside filter domain [0, {self.omega_max}]: "
                f"requested up to {float(np.max(omegas))}")

    def arrays(self, omegas) -> tuple:
        """Vectorized evaluation: (t_plus, t_minus, theta_plus, theta_minus).

        ``omegas``: 1-D array of sideband frequencies within the domain.
        """
        om = np.asarray(omegas, dtype=np.float64)
        self._check_domain(om)
        if self.params is not None:
            t_plus, t_minus = sideband_pair(self.params, om)
            t_plus = np.clip(np.asarray(t_plus, dtype=np.float64), 0.0, 1.0)
            t_minus = np.clip(np.asarray(t_minus, dtype=np.float64), 0.0, 1.0)
        else:
            det = np.asarray(self.mag_detuning)
            mag = np.asarray(self.mag_values)
            t_plus = np.interp(om, det, mag)
            t_minus = np.interp(-om, det, mag)
        if self.phase_model == "zero-phase":
            theta_plus = np.zeros_like(t_plus)
            theta_minus = np.zeros_like(t_minus)
        else:
            pdet = np.asarray(self.phase_detuning)
            pval = np.asarray(self.phase_values)
            theta_plus = np.interp(om, pdet, pval)
            theta_minus = np.interp(-om, pdet, pval)
        return t_plus, t_minus, theta_plus, theta_minus

    def at(self, omega: float) -> SidebandTransmission:
        """Complex sideband transmission at one frequency."""
        t_plus, t_minus, theta_plus, theta_minus = self.arrays(
            np.array([float(omega)]))
        return SidebandTransmission(
            t_plus=float(t_plus[0]), t_minus=float(t_minus[0]),
            theta_plus=float(theta_plus[0]), theta_minus=float(theta_minus[0]))


def _check_phase_table(phase_det: tuple, phase_val: tuple,
                       omega_max: float) -> None:
    if len(phase_det) != len(phase_val) or len(phase_det) < 2:
        raise ValueError("phase table needs equal-length arrays (>= 2 points)")
    det = np.asarray(phase_det)
    if np.any(np.diff(det) <= 0):
        raise ValueError("phase table detuning must be strictly increasing")
    if det[0] > -omega_max or det[-1] < omega_max:
        raise ValueError(
            f"phase table [{det[0]}, {det[-1]}] does not cover the "
            f"sideband domain +/-{omega_max}")


def make_filter_response(params: LineshapeParams, phase_model: str,
                         omega_max: float,
                         phase_table: tuple | None = None) -> FilterResponse:
    """Bind window parameters to a phase model; see FilterResponse."""
    return FilterResponse.from_lineshape(params, phase_model, omega_max,
                                         phase_table=phase_table)
