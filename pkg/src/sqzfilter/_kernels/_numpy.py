"""Pure-numpy kernel backend.

Reference vectorized implementations.  The Cython backend mirrors these
expressions term for term; any change here must be applied there as well to
keep the backends numerically interchangeable.
"""

from __future__ import annotations

import numpy as np


def lineshape_eval(a, b, c, gamma, delta0, delta):
    """Transmission window model evaluated at probe detunings ``delta``.

    Symmetric core of half width ``gamma`` plus a dispersive (odd) component,
    both centered where ``delta0 + delta`` vanishes, on a flat background:

        T(delta) = (a*gamma^2 + b*gamma*u) / (gamma^2 + u^2) + c,
        u = delta0 + delta
    """
    delta = np.asarray(delta, dtype=np.float64)
    u = delta0 + delta
    g2 = gamma * gamma
    denom = g2 + u * u
    return (a * g2 + b * gamma * u) / denom + c


def lineshape_jacobian(a, b, c, gamma, delta0, delta):
    """Partial derivatives of the window model at each detuning.

    Returns an (n, 5) array with columns d/da, d/db, d/dc, d/dgamma,
    d/ddelta0, in that order.
    """
    delta = np.asarray(delta, dtype=np.float64)
    u = delta0 + delta
    g2 = gamma * gamma
    denom = g2 + u * u
    denom2 = denom * denom
    out = np.empty((delta.size, 5), dtype=np.float64)
    out[:, 0] = g2 / denom
    out[:, 1] = gamma * u / denom
    out[:, 2] = 1.0
    out[:, 3] = u * (2.0 * a * gamma * u + b * (u * u - g2)) / denom2
    out[:, 4] = gamma * (b * g2 - b * u * u - 2.0 * a * gamma * u) / denom2
    return out


def propagate_arrays(t_plus, t_minus, theta_plus, theta_minus,
                     v_plus, v_minus, c_cross):
    """Elementwise noise propagation through a complex sideband filter.

    All inputs broadcast together; returns (v_plus_out, v_minus_out,
    c_cross_out).  Matches ``sqzfilter.noise.propagate`` applied pointwise,
    with identical operation ordering so the zero-phase path is exact.
    """
    t_plus = np.asarray(t_plus, dtype=np.float64)
    t_minus = np.asarray(t_minus, dtype=np.float64)
    theta_plus = np.asarray(theta_plus, dtype=np.float64)
    theta_minus = np.asarray(theta_minus, dtype=np.float64)
    v_plus = np.asarray(v_plus, dtype=np.float64)
    v_minus = np.asarray(v_minus, dtype=np.float64)
    c_cross = np.asarray(c_cross, dtype=np.float64)

    a_sum = 0.5 * (t_plus + t_minus)
    a_diff = 0.5 * (t_plus - t_minus)
    p = a_sum * a_sum
    q = a_diff * a_diff
    vac = 1.0 - (p + q)
    core_p = p * v_plus + q * v_minus
    core_m = q * v_plus + p * v_minus
    core_c = (p - q) * c_cross

    phi = 0.5 * (theta_plus + theta_minus)
    cos2 = np.cos(2.0 * phi)
    sin2 = np.sin(2.0 * phi)
    d = 0.5 * (core_p - core_m)
    shrink = d * (1.0 - cos2)
    out_p = core_p - shrink - core_c * sin2 + vac
    out_m = core_m + shrink + core_c * sin2 + vac
    out_c = d * sin2 + core_c * cos2
    return out_p, out_m, out_c


def homodyne_surface(thetas, v_plus, v_minus, c_cross):
    """Homodyne noise variance on a (LO angle x frequency) grid.

    ``thetas`` has shape (m,), the covariance arrays shape (n,); returns an
    (m, n) array of variances.
    """
    thetas = np.asarray(thetas, dtype=np.float64)[:, None]
    v_plus = np.asarray(v_plus, dtype=np.float64)[None, :]
    v_minus = np.asarray(v_minus, dtype=np.float64)[None, :]
    c_cross = np.asarray(c_cross, dtype=np.float64)[None, :]
    ct = np.cos(thetas)
    st = np.sin(thetas)
    return ct * ct * v_plus + st * st * v_minus + 2.0 * st * ct * c_cross


def minmax_arrays(v_plus, v_minus, c_cross):
    """Elementwise principal quadratures of covariance arrays.

    Returns (theta_min, var_min, theta_max, var_max); angles in [0, pi),
    degenerate points get theta_min = 0 by convention.
    """
    v_plus = np.asarray(v_plus, dtype=np.float64)
    v_minus = np.asarray(v_minus, dtype=np.float64)
    c_cross = np.asarray(c_cross, dtype=np.float64)
    mean = 0.5 * (v_plus + v_minus)
    half_diff = 0.5 * (v_plus - v_minus)
    radius = np.hypot(half_diff, c_cross)
    theta_max = np.mod(0.5 * np.arctan2(c_cross, half_diff), np.pi)
    theta_min = np.mod(theta_max + 0.5 * np.pi, np.pi)
    degenerate = radius == 0.0
    theta_max = np.where(degenerate, 0.5 * np.pi, theta_max)
    theta_min = np.where(degenerate, 0.0, theta_min)
    return theta_min, mean - radius, theta_max, mean + radius
