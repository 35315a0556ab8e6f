"""Gaussian sideband quadrature noise and its transformation by passive filters.

A zero-mean Gaussian noise state at one sideband frequency is fully described
by the second moments of the amplitude/phase quadrature pair (X+, X-).  The
shot-noise (standard quantum limit) normalization is variance 1 per
quadrature, so vacuum is the identity covariance.

A medium with amplitude transmissions ``t_plus``/``t_minus`` for the upper and
lower sidebands attenuates the quadrature variances and couples in vacuum to
replace the absorbed field; phase lags ``theta_plus``/``theta_minus`` rotate
the noise ellipse by their mean while their half-difference is a pure delay
that leaves measured noise powers unchanged.

All functions here are pure and operate on immutable scalar values; they are
the reference implementations against which the vectorized kernels in
``sqzfilter._kernels`` are checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "QuadratureCovariance",
    "SqueezeParams",
    "SidebandTransmission",
    "QuadratureExtremes",
    "make_covariance",
    "propagate_diagonal",
    "rotation_angle",
    "apply_rotation",
    "propagate",
    "homodyne_variance",
    "min_max_quadratures",
    "variance_to_db",
    "db_to_variance",
]

PHYSICALITY_TOL = 1e-9


@dataclass(frozen=True)
class QuadratureCovariance:
    """Symmetric second-moment matrix of (X+, X-) at one sideband frequency.

    ``v_plus`` and ``v_minus`` are the quadrature variances (shot noise = 1),
    ``c_cross`` the symmetrized cross covariance.  Positivity of the variances
    is enforced; physicality (uncertainty product) is advisory because
    measured input spectra may carry detector artifacts.
    """

    v_plus: float
    v_minus: float
    c_cross: float = 0.0

    def __post_init__(self):
        if not (self.v_plus > 0.0 and self.v_minus > 0.0):
            raise ValueError(
                f"quadrature variances must be positive, got "
                f"({self.v_plus}, {self.v_minus})"
            )

    @property
    def det(self) -> float:
        """Determinant of the covariance matrix (uncertainty product)."""
        return self.v_plus * self.v_minus - self.c_cross**2

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        """Whether the state satisfies the uncertainty bound det >= 1 - tol."""
        return self.det >= 1.0 - tol

    def matrix(self):
        """The 2x2 covariance matrix as a nested list [[v+, c], [c, v-]]."""
        return [[self.v_plus, self.c_cross], [self.c_cross, self.v_minus]]


@dataclass(frozen=True)
class SqueezeParams:
    """Principal-axis description of a squeezed noise state.

    ``angle`` is the quadrature orientation of the minimum-noise axis in the
    (X+, X-) plane; it is normalized to [0, pi) since quadrature directions
    have period pi.
    """

    v_min: float
    v_max: float
    angle: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.v_min <= self.v_max):
            raise ValueError(
                f"need 0 < v_min <= v_max, got ({self.v_min}, {self.v_max})"
            )
        object.__setattr__(self, "angle", self.angle % math.pi)


@dataclass(frozen=True)
class SidebandTransmission:
    """Complex transmission of a filter at the two sidebands +/-Omega.

    ``t_plus``/``t_minus`` are amplitude transmissions (a passive filter
    cannot exceed 1), ``theta_plus``/``theta_minus`` the corresponding phase
    lags in radians.
    """

    t_plus: float
    t_minus: float
    theta_plus: float = 0.0
    theta_minus: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.t_plus <= 1.0 and 0.0 <= self.t_minus <= 1.0):
            raise ValueError(
                f"amplitude transmissions must lie in [0, 1], got "
                f"({self.t_plus}, {self.t_minus})"
            )


class QuadratureExtremes(NamedTuple):
    theta_min: float
    v_min: float
    theta_max: float
    v_max: float


def make_covariance(params: SqueezeParams) -> QuadratureCovariance:
    """Covariance of a noise state with given principal variances and angle.

    Equivalent to R(angle) @ diag(v_min, v_max) @ R(angle).T with the
    counterclockwise rotation matrix R, so the minimum-noise quadrature sits
    at ``params.angle``.
    """
    c = math.cos(params.angle)
    s = math.sin(params.angle)
    return QuadratureCovariance(
        v_plus=params.v_min * c * c + params.v_max * s * s,
        v_minus=params.v_min * s * s + params.v_max * c * c,
        c_cross=(params.v_min - params.v_max) * c * s,
    )


def propagate_diagonal(
    t_plus: float, t_minus: float, v_in: QuadratureCovariance
) -> QuadratureCovariance:
    """Noise transformation by sideband amplitude transmissions, no phases.

    Valid only for diagonal input covariances.  Each output variance is a
    convex mix of the two inputs weighted by the squared half-sum and
    half-difference of the transmissions, plus the vacuum contribution that
    replaces the absorbed field:

        v_out = a_sum^2 * v_plus + a_diff^2 * v_minus + 1 - (a_sum^2 + a_diff^2)

    with a_sum = (t+ + t-)/2 and a_diff = (t+ - t-)/2 (and the weights
    swapped for the other quadrature).  For states with cross correlations
    use :func:`propagate`.
    """
    if not (0.0 <= t_plus <= 1.0 and 0.0 <= t_minus <= 1.0):
        raise ValueError(
            f"amplitude transmissions must lie in [0, 1], got ({t_plus}, {t_minus})"
        )
    if v_in.c_cross != 0.0:
        raise ValueError(
            "propagate_diagonal requires c_cross = 0; "
            "use propagate() for correlated quadratures"
        )
    a_sum = 0.5 * (t_plus + t_minus)
    a_diff = 0.5 * (t_plus - t_minus)
    p = a_sum * a_sum
    q = a_diff * a_diff
    vac = 1.0 - (p + q)
    return QuadratureCovariance(
        v_plus=p * v_in.v_plus + q * v_in.v_minus + vac,
        v_minus=q * v_in.v_plus + p * v_in.v_minus + vac,
        c_cross=0.0,
    )


def rotation_angle(theta_plus: float, theta_minus: float) -> float:
    """Noise-ellipse rotation produced by the sideband phase lags.

    The mean of the two phases rotates the state; the result is not range
    normalized.  A lineshape symmetric about the carrier has
    theta_plus = -theta_minus and therefore produces no rotation.
    """
    return 0.5 * (theta_plus + theta_minus)


def apply_rotation(cov: QuadratureCovariance, phi: float) -> QuadratureCovariance:
    """Rotate the noise ellipse by ``phi`` (counterclockwise in (X+, X-)).

    Eigenvalues are preserved; the minimum-noise quadrature angle shifts by
    ``phi`` modulo pi.
    """
    v_plus, v_minus, c_cross = _rotate_components(
        cov.v_plus, cov.v_minus, cov.c_cross, phi
    )
    return QuadratureCovariance(v_plus, v_minus, c_cross)


def _rotate_components(a: float, b: float, c: float, phi: float):
    # Formulated so that phi = 0 (and any isotropic state) is exact, not
    # merely within rounding: the update terms vanish identically.
    d = 0.5 * (a - b)
    cos2 = math.cos(2.0 * phi)
    sin2 = math.sin(2.0 * phi)
    shrink = d * (1.0 - cos2)
    return (
        a - shrink - c * sin2,
        b + shrink + c * sin2,
        d * sin2 + c * cos2,
    )


def propagate(
    t: SidebandTransmission, v_in: QuadratureCovariance
) -> QuadratureCovariance:
    """Full noise transformation by a complex sideband transmission pair.

    The upper sideband amplitude is scaled by ``t_plus * exp(i*theta_plus)``,
    the lower by ``t_minus * exp(i*theta_minus)``, and the absorbed fraction
    of each sideband is replaced by uncorrelated vacuum.  Measured noise
    powers are symmetrized spectral second moments, so the antisymmetric
    phase half-difference acts as a pure delay and drops out; only the mean
    phase rotates the ellipse.

    With zero phases and a diagonal input this reduces exactly to
    :func:`propagate_diagonal`; with unit transmissions it reduces exactly to
    :func:`apply_rotation` at :func:`rotation_angle` of the phases.
    """
    a_sum = 0.5 * (t.t_plus + t.t_minus)
    a_diff = 0.5 * (t.t_plus - t.t_minus)
    p = a_sum * a_sum
    q = a_diff * a_diff
    vac = 1.0 - (p + q)
    core_plus = p * v_in.v_plus + q * v_in.v_minus
    core_minus = q * v_in.v_plus + p * v_in.v_minus
    core_cross = (p - q) * v_in.c_cross
    phi = rotation_angle(t.theta_plus, t.theta_minus)
    rot_plus, rot_minus, rot_cross = _rotate_components(
        core_plus, core_minus, core_cross, phi
    )
    return QuadratureCovariance(rot_plus + vac, rot_minus + vac, rot_cross)


def homodyne_variance(cov: QuadratureCovariance, lo_angle: float) -> float:
    """Noise variance measured by a homodyne detector at LO angle ``lo_angle``.

    Projection of the covariance onto the quadrature
    cos(theta) X+ + sin(theta) X-.
    """
    c = math.cos(lo_angle)
    s = math.sin(lo_angle)
    return c * c * cov.v_plus + s * s * cov.v_minus + 2.0 * s * c * cov.c_cross


def min_max_quadratures(cov: QuadratureCovariance) -> QuadratureExtremes:
    """Principal noise quadratures: angles in [0, pi) and their variances.

    The degenerate (isotropic) case returns ``theta_min = 0`` by convention.
    """
    mean = 0.5 * (cov.v_plus + cov.v_minus)
    half_diff = 0.5 * (cov.v_plus - cov.v_minus)
    radius = math.hypot(half_diff, cov.c_cross)
    if radius == 0.0:
        return QuadratureExtremes(0.0, mean, 0.5 * math.pi, mean)
    theta_max = 0.5 * math.atan2(cov.c_cross, half_diff) % math.pi
    theta_min = (theta_max + 0.5 * math.pi) % math.pi
    return QuadratureExtremes(theta_min, mean - radius, theta_max, mean + radius)


def variance_to_db(v: float) -> float:
    """Noise power in dB relative to shot noise: 10*log10(v)."""
    if not v > 0.0:
        raise ValueError(f"variance must be positive, got {v}")
    return 10.0 * math.log10(v)


def db_to_variance(db: float) -> float:
    """Inverse of :func:`variance_to_db`."""
    return 10.0 ** (db / 10.0)
