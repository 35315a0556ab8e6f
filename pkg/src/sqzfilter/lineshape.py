"""Empirical transmission-window lineshape of an atomic filter.

The window is modeled as a symmetric Lorentzian of amplitude ``a_sym`` plus
an antisymmetric (dispersive) component of amplitude ``b_asym`` on a flat
background ``c_bg``:

    T(delta) = a_sym*g^2/(g^2 + u^2) + b_asym*g*u/(g^2 + u^2) + c_bg,
    u = delta0 + delta

with ``g = gamma`` the half width at half maximum of the symmetric part and
``delta0`` the offset of the window center from the noise carrier.  ``delta``
is the probe detuning from the carrier; the two noise sidebands of a state at
sideband frequency ``omega`` see the window at ``delta = +omega`` and
``delta = -omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels

__all__ = [
    "LineshapeParams",
    "TransmissionTrace",
    "eval_lineshape",
    "sideband_pair",
    "lineshape_extremes",
    "validate_bounds",
]

#: Slack allowed on the [0, 1] transmission range for measured data.
RANGE_SLACK = 1e-6


@dataclass(frozen=True)
class LineshapeParams:
    """Five-parameter empirical transmission window.

    ``a_sym``: peak amplitude of the symmetric Lorentzian component.
    ``b_asym``: amplitude of the antisymmetric (dispersive) component.
    ``c_bg``: flat background transmission.
    ``gamma``: half width at half maximum of the symmetric component, Hz.
    ``delta0``: center offset from the carrier, Hz.

    Only ``gamma > 0`` is enforced here; whether the evaluated transmission
    stays within [0, 1] depends on the frequency domain of use, so that check
    is a separate step (:func:`validate_bounds`) run by consumers that declare
    a domain.
    """

    a_sym: float
    b_asym: float
    c_bg: float
    gamma: float
    delta0: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def as_dict(self) -> dict:
        return {
            "a_sym": self.a_sym,
            "b_asym": self.b_asym,
            "c_bg": self.c_bg,
            "gamma_hz": self.gamma,
            "delta0_hz": self.delta0,
        }


@dataclass(frozen=True)
class TransmissionTrace:
    """Measured transmission versus probe detuning.

    ``transmission`` holds amplitude transmission values; traces recorded as
    intensity must be converted (square root) before construction, with
    ``kind`` recording the original calibration ('amplitude' or 'intensity').
    """

    detuning: tuple
    transmission: tuple
    kind: str = "amplitude"

    def __post_init__(self):
        det = tuple(float(x) for x in self.detuning)
        tra = tuple(float(x) for x in self.transmission)
        object.__setattr__(self, "detuning", det)
        object.__setattr__(self, "transmission", tra)
        if self.kind not in ("amplitude", "intensity"):
            raise ValueError(f"unknown trace kind {self.kind!r}")
        if len(det) != len(tra):
            raise ValueError(
                f"detuning and transmission lengths differ: "
                f"{len(det)} vs {len(tra)}"
            )
        if len(det) < 5:
            raise ValueError(f"trace needs at least 5 points, got {len(det)}")
        for i in range(1, len(det)):
            if not det[i] > det[i - 1]:
                raise ValueError(
                    f"detuning must be strictly increasing; "
                    f"point {i} ({det[i]}) does not exceed point {i - 1} "
                    f"({det[i - 1]})"
                )
        for i, t in enumerate(tra):
            if not (-RANGE_SLACK <= t <= 1.0 + RANGE_SLACK):
                raise ValueError(
                    f"transmission at point {i} is {t}, outside [0, 1]"
                )


def eval_lineshape(params: LineshapeParams, delta):
    """Window transmission at probe detuning ``delta`` (Hz, scalar or array).

    No clamping is applied; see :func:`validate_bounds` for range checks.
    """
    out = _kernels.lineshape_eval(
        params.a_sym, params.b_asym, params.c_bg, params.gamma,
        params.delta0, delta,
    )
    if np.ndim(delta) == 0:
        return float(out)
    return out


def sideband_pair(params: LineshapeParams, omega):
    """Amplitude transmissions seen by the two sidebands at +/-``omega``.

    ``omega`` is a sideband frequency (Hz, >= 0; scalar or array).  Returns
    ``(t_plus, t_minus)``, the window evaluated at detunings ``+omega`` and
    ``-omega``.  At ``omega = 0`` the two coincide; they coincide at every
    ``omega`` when the window is symmetric (``b_asym = 0, delta0 = 0``).
    """
    omega_arr = np.asarray(omega, dtype=np.float64)
    t_plus = _kernels.lineshape_eval(
        params.a_sym, params.b_asym, params.c_bg, params.gamma,
        params.delta0, omega_arr,
    )
    t_minus = _kernels.lineshape_eval(
        params.a_sym, params.b_asym, params.c_bg, params.gamma,
        params.delta0, -omega_arr,
    )
    if np.ndim(omega) == 0:
        return float(t_plus), float(t_minus)
    return t_plus, t_minus


def lineshape_extremes(params: LineshapeParams, delta_lo: float,
                       delta_hi: float) -> tuple:
    """Exact (min, max) of the window over detunings [delta_lo, delta_hi].

    Uses the closed-form stationary points of the rational model, so no grid
    scan is involved.
    """
    if not delta_hi >= delta_lo:
        raise ValueError(f"empty domain [{delta_lo}, {delta_hi}]")
    a, b, g = params.a_sym, params.b_asym, params.gamma
    u_lo = params.delta0 + delta_lo
    u_hi = params.delta0 + delta_hi
    candidates = [u_lo, u_hi]
    if b == 0.0:
        # symmetric part peaks at window center
        if u_lo <= 0.0 <= u_hi:
            candidates.append(0.0)
    else:
        # stationary points of (a*g^2 + b*g*u)/(g^2 + u^2)
        root = math.hypot(a, b)
        for u_star in (g * (-a + root) / b, g * (-a - root) / b):
            if u_lo <= u_star <= u_hi:
                candidates.append(u_star)
    values = [
        eval_lineshape(params, u - params.delta0) for u in candidates
    ]
    return min(values), max(values)


def validate_bounds(params: LineshapeParams, delta_lo: float,
                    delta_hi: float, tol: float = RANGE_SLACK) -> None:
    """Check that the window stays within [0, 1] over a detuning domain.

    Raises ValueError naming the violated bound; consumers that bind the
    lineshape to a declared frequency domain (filter construction, fitting)
    call this.
    """
    lo, hi = lineshape_extremes(params, delta_lo, delta_hi)
    if lo < -tol or hi > 1.0 + tol:
        raise ValueError(
            f"transmission leaves [0, 1] on detunings "
            f"[{delta_lo}, {delta_hi}]: range [{lo}, {hi}]"
        )
