"""Damped least-squares fitting of the transmission window model.

A small Levenberg-Marquardt-style engine specialized to the five-parameter
window: analytic Jacobian, log-parameterization of the width (keeps
``gamma > 0`` without constrained optimization), monotone non-increasing
residual across accepted steps, and explicit failure objects carrying the
best parameters reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import LineshapeFitError
from .lineshape import LineshapeParams, TransmissionTrace, validate_bounds

__all__ = ["FitResult", "fit_lineshape", "initial_guess"]

MAX_ITERATIONS = 200
#: Converged when an accepted step reduces the SSR by less than this fraction.
RELATIVE_SSR_TOL = 1e-10
#: Traces whose transmission spans less than this are treated as constant.
DEGENERATE_SPAN = 1e-6

_DAMPING_GROW = 7.0
_DAMPING_SHRINK = 3.0
_MAX_REJECTED_IN_A_ROW = 60


@dataclass(frozen=True)
class FitResult:
    """Fitted parameters plus diagnostics.

    ``std_errors`` holds per-parameter one-sigma estimates from the local
    linearization (keys match LineshapeParams fields); values are NaN when
    the problem is too small or too degenerate to estimate them.
    """

    params: LineshapeParams
    residual_rms: float
    iterations: int
    converged: bool
    std_errors: dict


def initial_guess(trace: TransmissionTrace) -> LineshapeParams:
    """Starting parameters for a single-window trace.

    Background from the trace minimum, amplitude from the peak-to-background
    span, center from the peak position, width from the half-height
    crossings (falling back to a quarter of the span when the flanks are not
    resolved), no asymmetry.
    """
    det = np.asarray(trace.detuning)
    tra = np.asarray(trace.transmission)
    c_bg = float(tra.min())
    a_sym = float(tra.max() - tra.min())
    i_peak = int(np.argmax(tra))
    # model centers the window where delta0 + delta = 0
    delta0 = -float(det[i_peak])
    half = c_bg + 0.5 * a_sym
    left = None
    for i in range(i_peak, 0, -1):
        if tra[i - 1] < half <= tra[i]:
            frac = (half - tra[i - 1]) / (tra[i] - tra[i - 1])
            left = float(det[i - 1] + frac * (det[i] - det[i - 1]))
            break
    right = None
    for i in range(i_peak, len(det) - 1):
        if tra[i + 1] < half <= tra[i]:
            frac = (tra[i] - half) / (tra[i] - tra[i + 1])
            right = float(det[i] + frac * (det[i + 1] - det[i]))
            break
    span = float(det[-1] - det[0])
    if left is not None and right is not None and right > left:
        gamma = 0.5 * (right - left)
    else:
        gamma = 0.25 * span
    gamma = max(gamma, 1e-6 * span)
    return LineshapeParams(a_sym=a_sym, b_asym=0.0, c_bg=c_bg,
                           gamma=gamma, delta0=delta0)


def _pack(params: LineshapeParams) -> np.ndarray:
    return np.array([params.a_sym, params.b_asym, params.c_bg,
                     math.log(params.gamma), params.delta0])


def _unpack(x: np.ndarray) -> LineshapeParams:
    return LineshapeParams(a_sym=float(x[0]), b_asym=float(x[1]),
                           c_bg=float(x[2]), gamma=math.exp(float(x[3])),
                           delta0=float(x[4]))


def _model(x: np.ndarray, det: np.ndarray) -> np.ndarray:
    gamma = math.exp(float(x[3]))
    return _kernels.lineshape_eval(float(x[0]), float(x[1]), float(x[2]),
                                   gamma, float(x[4]), det)


def _jacobian(x: np.ndarray, det: np.ndarray) -> np.ndarray:
    gamma = math.exp(float(x[3]))
    jac = np.asarray(_kernels.lineshape_jacobian(
        float(x[0]), float(x[1]), float(x[2]), gamma, float(x[4]), det))
    jac[:, 3] *= gamma  # chain rule: d/d(log gamma) = gamma * d/d(gamma)
    return jac


def _std_errors(jac: np.ndarray, ssr: float, gamma: float) -> dict:
    n, p = jac.shape
    names = ("a_sym", "b_asym", "c_bg", "gamma_hz", "delta0_hz")
    if n <= p:
        return {k: math.nan for k in names}
    s2 = ssr / (n - p)
    try:
        cov = np.linalg.pinv(jac.T @ jac) * s2
        sigma = np.sqrt(np.maximum(np.diag(cov), 0.0))
    except np.linalg.LinAlgError:
        return {k: math.nan for k in names}
    # width error back-transformed from the log parameterization
    return {
        "a_sym": float(sigma[0]),
        "b_asym": float(sigma[1]),
        "c_bg": float(sigma[2]),
        "gamma_hz": float(sigma[3] * gamma),
        "delta0_hz": float(sigma[4]),
    }


def fit_lineshape(trace: TransmissionTrace,
                  init: LineshapeParams | None = None) -> FitResult:
    """Least-squares fit of the window model to a transmission trace.

    Raises LineshapeFitError for constant traces (width unidentifiable), on
    hitting the iteration cap without convergence, or when the converged
    model leaves [0, 1] on the trace domain; non-convergence errors carry
    the best parameters reached.
    """
    det = np.asarray(trace.detuning, dtype=np.float64)
    tra = np.asarray(trace.transmission, dtype=np.float64)
    if float(np.ptp(tra)) < DEGENERATE_SPAN:
        raise LineshapeFitError(
            "degenerate trace: transmission is constant within "
            f"{DEGENERATE_SPAN}, width (gamma) is unidentifiable",
            params=None,
            residual_rms=float(np.std(tra)),
        )
    x = _pack(init if init is not None else initial_guess(trace))
    resid = _model(x, det) - tra
    ssr = float(resid @ resid)
    lam = 1e-3
    n = det.size
    converged = False
    iterations = 0
    for iterations in range(1, MAX_ITERATIONS + 1):
        jac = _jacobian(x, det)
        jtj = jac.T @ jac
        grad = jac.T @ resid
        diag = np.diag(jtj).copy()
        floor = 1e-14 * float(diag.max()) if diag.max() > 0 else 1e-14
        diag[diag < floor] = floor
        accepted = False
        for _ in range(_MAX_REJECTED_IN_A_ROW):
            try:
                step = np.linalg.solve(jtj + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                lam *= _DAMPING_GROW
                continue
            x_new = x + step
            resid_new = _model(x_new, det) - tra
            ssr_new = float(resid_new @ resid_new)
            if math.isfinite(ssr_new) and ssr_new <= ssr:
                accepted = True
                break
            lam *= _DAMPING_GROW
        if not accepted:
            break
        drop = ssr - ssr_new
        x, resid, ssr = x_new, resid_new, ssr_new
        lam = max(lam / _DAMPING_SHRINK, 1e-14)
        if drop <= RELATIVE_SSR_TOL * max(ssr, 1e-300):
            converged = True
            break
    params = _unpack(x)
    rms = math.sqrt(ssr / n)
    if not converged:
        raise LineshapeFitError(
            f"fit did not converge within {MAX_ITERATIONS} iterations "
            f"(residual RMS {rms:.3e})",
            params=params,
            residual_rms=rms,
        )
    try:
        validate_bounds(params, float(det[0]), float(det[-1]))
    except ValueError as exc:
        raise LineshapeFitError(
            f"converged parameters are unphysical: {exc}",
            params=params,
            residual_rms=rms,
        ) from exc
    errors = _std_errors(_jacobian(x, det), ssr, params.gamma)
    return FitResult(params=params, residual_rms=rms, iterations=iterations,
                     converged=True, std_errors=errors)
