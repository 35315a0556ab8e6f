"""Phase completion of a measured magnitude response.

A causal response is fully determined by its magnitude if it has no
right-half-plane zeros; its phase is then the Hilbert transform of the log
magnitude.  This module reconstructs that minimum-phase profile on a
uniform, carrier-symmetric detuning grid via FFT, extending the magnitude
with constant tails (4x the measured span by default) to suppress
truncation error near the grid edges.

For magnitudes symmetric about the carrier the reconstructed phase is odd
in detuning, so the two sidebands of any noise component see equal and
opposite phases and the noise ellipse does not rotate.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PhaseReconstructionError

__all__ = ["minimum_phase", "hilbert_transform"]

PAD_FACTOR = 4
_GRID_RTOL = 1e-9


def hilbert_transform(values: np.ndarray) -> np.ndarray:
    """Discrete Hilbert transform (periodic, FFT-based).

    Returns the imaginary part of the analytic signal of ``values``; with
    this convention the transform maps cos to sin.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    weights = np.zeros(n)
    weights[0] = 1.0
    if n % 2 == 0:
        weights[1:n // 2] = 2.0
        weights[n // 2] = 1.0
    else:
        weights[1:(n + 1) // 2] = 2.0
    analytic = np.fft.ifft(np.fft.fft(values) * weights)
    return np.imag(analytic)


def _check_grid(detuning: np.ndarray) -> None:
    n = detuning.size
    if n < 5:
        raise PhaseReconstructionError(
            f"grid needs at least 5 points, got {n}")
    step = (detuning[-1] - detuning[0]) / (n - 1)
    if not step > 0:
        raise PhaseReconstructionError("grid must be strictly increasing")
    diffs = np.diff(detuning)
    if np.max(np.abs(diffs - step)) > _GRID_RTOL * abs(step):
        raise PhaseReconstructionError(
            "non-uniform detuning grid; resample the magnitude onto a "
            "uniform grid before phase reconstruction")
    span = detuning[-1] - detuning[0]
    if abs(detuning[0] + detuning[-1]) > _GRID_RTOL * span:
        raise PhaseReconstructionError(
            "grid must be symmetric about zero detuning (the carrier); "
            f"got endpoints [{detuning[0]}, {detuning[-1]}]")


def minimum_phase(detuning, magnitude, pad_factor: int = PAD_FACTOR):
    """Minimum-phase profile (radians) for a tabulated magnitude response.

    ``detuning``: uniform grid symmetric about zero, Hz.  ``magnitude``:
    strictly positive amplitude response on that grid.  Returns the phase at
    each grid point, with the convention that the complex response is
    ``magnitude * exp(1j * phase)`` and a magnitude falling away from the
    carrier produces phase increasing with detuning.

    Raises PhaseReconstructionError for non-uniform or asymmetric grids and
    for non-positive magnitude values (log singularity).
    """
    det = np.asarray(detuning, dtype=np.float64)
    mag = np.asarray(magnitude, dtype=np.float64)
    if det.shape != mag.shape or det.ndim != 1:
        raise PhaseReconstructionError(
            f"detuning and magnitude must be equal-length 1-D arrays, got "
            f"shapes {det.shape} and {mag.shape}")
    _check_grid(det)
    if not np.all(mag > 0.0):
        bad = int(np.argmin(mag))
        raise PhaseReconstructionError(
            f"magnitude must be strictly positive for the log transform; "
            f"point {bad} (detuning {det[bad]}) is {mag[bad]}")
    if pad_factor < 1:
        raise PhaseReconstructionError(
            f"pad_factor must be >= 1, got {pad_factor}")
    n = det.size
    pad_each = int(math.ceil(0.5 * (pad_factor - 1) * n))
    log_mag = np.log(mag)
    extended = np.concatenate([
        np.full(pad_each, log_mag[0]),
        log_mag,
        np.full(pad_each, log_mag[-1]),
    ])
    phase = hilbert_transform(extended)
    return phase[pad_each:pad_each + n]
