# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Mirrors ``sqzfilter._kernels._numpy`` term for term; the expression ordering
must stay identical so both backends agree to rounding and the zero-phase
propagation path stays exact.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, hypot, sin, M_PI

cnp.import_array()


cdef inline double _mod_pi(double x) nogil:
    # Python-style modulo: result in [0, pi) for finite x (up to rounding).
    cdef double r = x - M_PI * <long long>(x / M_PI)
    if r < 0.0:
        r += M_PI
    elif r >= M_PI:
        r -= M_PI
    return r


def lineshape_eval(double a, double b, double c, double gamma, double delta0,
                   delta):
    """See ``sqzfilter._kernels._numpy.lineshape_eval``."""
    arr = np.asarray(delta, dtype=np.float64)
    shape = arr.shape
    cdef double[::1] u = np.ascontiguousarray(arr.ravel())
    cdef Py_ssize_t n = u.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double g2 = gamma * gamma
    cdef double ui, denom
    cdef Py_ssize_t i
    for i in range(n):
        ui = delta0 + u[i]
        denom = g2 + ui * ui
        out[i] = (a * g2 + b * gamma * ui) / denom + c
    return out_arr.reshape(shape)


def lineshape_jacobian(double a, double b, double c, double gamma,
                       double delta0, delta):
    """See ``sqzfilter._kernels._numpy.lineshape_jacobian``."""
    arr = np.asarray(delta, dtype=np.float64)
    cdef double[::1] d = np.ascontiguousarray(arr.ravel())
    cdef Py_ssize_t n = d.shape[0]
    out_arr = np.empty((n, 5), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double g2 = gamma * gamma
    cdef double ui, denom, denom2
    cdef Py_ssize_t i
    for i in range(n):
        ui = delta0 + d[i]
        denom = g2 + ui * ui
        denom2 = denom * denom
        out[i, 0] = g2 / denom
        out[i, 1] = gamma * ui / denom
        out[i, 2] = 1.0
        out[i, 3] = ui * (2.0 * a * gamma * ui + b * (ui * ui - g2)) / denom2
        out[i, 4] = gamma * (b * g2 - b * ui * ui - 2.0 * a * gamma * ui) / denom2
    return out_arr


def propagate_arrays(t_plus, t_minus, theta_plus, theta_minus,
                     v_plus, v_minus, c_cross):
    """See ``sqzfilter._kernels._numpy.propagate_arrays``."""
    tp, tm, hp, hm, vp, vm, cc = np.broadcast_arrays(
        np.asarray(t_plus, dtype=np.float64),
        np.asarray(t_minus, dtype=np.float64),
        np.asarray(theta_plus, dtype=np.float64),
        np.asarray(theta_minus, dtype=np.float64),
        np.asarray(v_plus, dtype=np.float64),
        np.asarray(v_minus, dtype=np.float64),
        np.asarray(c_cross, dtype=np.float64),
    )
    shape = tp.shape
    cdef double[::1] tpv = np.ascontiguousarray(tp.ravel())
    cdef double[::1] tmv = np.ascontiguousarray(tm.ravel())
    cdef double[::1] hpv = np.ascontiguousarray(hp.ravel())
    cdef double[::1] hmv = np.ascontiguousarray(hm.ravel())
    cdef double[::1] vpv = np.ascontiguousarray(vp.ravel())
    cdef double[::1] vmv = np.ascontiguousarray(vm.ravel())
    cdef double[::1] ccv = np.ascontiguousarray(cc.ravel())
    cdef Py_ssize_t n = tpv.shape[0]
    op_arr = np.empty(n, dtype=np.float64)
    om_arr = np.empty(n, dtype=np.float64)
    oc_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] op = op_arr
    cdef double[::1] om = om_arr
    cdef double[::1] oc = oc_arr
    cdef double a_sum, a_diff, p, q, vac, core_p, core_m, core_c
    cdef double phi, cos2, sin2, dd, shrink
    cdef Py_ssize_t i
    for i in range(n):
        a_sum = 0.5 * (tpv[i] + tmv[i])
        a_diff = 0.5 * (tpv[i] - tmv[i])
        p = a_sum * a_sum
        q = a_diff * a_diff
        vac = 1.0 - (p + q)
        core_p = p * vpv[i] + q * vmv[i]
        core_m = q * vpv[i] + p * vmv[i]
        core_c = (p - q) * ccv[i]
        phi = 0.5 * (hpv[i] + hmv[i])
        cos2 = cos(2.0 * phi)
        sin2 = sin(2.0 * phi)
        dd = 0.5 * (core_p - core_m)
        shrink = dd * (1.0 - cos2)
        op[i] = core_p - shrink - core_c * sin2 + vac
        om[i] = core_m + shrink + core_c * sin2 + vac
        oc[i] = dd * sin2 + core_c * cos2
    return op_arr.reshape(shape), om_arr.reshape(shape), oc_arr.reshape(shape)


def homodyne_surface(thetas, v_plus, v_minus, c_cross):
    """See ``sqzfilter._kernels._numpy.homodyne_surface``."""
    cdef double[::1] th = np.ascontiguousarray(
        np.asarray(thetas, dtype=np.float64).ravel())
    vp, vm, cc = np.broadcast_arrays(
        np.asarray(v_plus, dtype=np.float64),
        np.asarray(v_minus, dtype=np.float64),
        np.asarray(c_cross, dtype=np.float64),
    )
    cdef double[::1] vpv = np.ascontiguousarray(vp.ravel())
    cdef double[::1] vmv = np.ascontiguousarray(vm.ravel())
    cdef double[::1] ccv = np.ascontiguousarray(cc.ravel())
    cdef Py_ssize_t m = th.shape[0]
    cdef Py_ssize_t n = vpv.shape[0]
    out_arr = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double ct, st, ct2, st2, cross
    cdef Py_ssize_t i, j
    for i in range(m):
        ct = cos(th[i])
        st = sin(th[i])
        ct2 = ct * ct
        st2 = st * st
        cross = 2.0 * st * ct
        for j in range(n):
            out[i, j] = ct2 * vpv[j] + st2 * vmv[j] + cross * ccv[j]
    return out_arr


def minmax_arrays(v_plus, v_minus, c_cross):
    """See ``sqzfilter._kernels._numpy.minmax_arrays``."""
    vp, vm, cc = np.broadcast_arrays(
        np.asarray(v_plus, dtype=np.float64),
        np.asarray(v_minus, dtype=np.float64),
        np.asarray(c_cross, dtype=np.float64),
    )
    shape = vp.shape
    cdef double[::1] vpv = np.ascontiguousarray(vp.ravel())
    cdef double[::1] vmv = np.ascontiguousarray(vm.ravel())
    cdef double[::1] ccv = np.ascontiguousarray(cc.ravel())
    cdef Py_ssize_t n = vpv.shape[0]
    tmin_arr = np.empty(n, dtype=np.float64)
    vmin_arr = np.empty(n, dtype=np.float64)
    tmax_arr = np.empty(n, dtype=np.float64)
    vmax_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] tmin = tmin_arr
    cdef double[::1] vmin = vmin_arr
    cdef double[::1] tmax = tmax_arr
    cdef double[::1] vmax = vmax_arr
    cdef double mean, half_diff, radius, th_max
    cdef Py_ssize_t i
    for i in range(n):
        mean = 0.5 * (vpv[i] + vmv[i])
        half_diff = 0.5 * (vpv[i] - vmv[i])
        radius = hypot(half_diff, ccv[i])
        if radius == 0.0:
            tmin[i] = 0.0
            tmax[i] = 0.5 * M_PI
        else:
            th_max = _mod_pi(0.5 * atan2(ccv[i], half_diff))
            tmax[i] = th_max
            tmin[i] = _mod_pi(th_max + 0.5 * M_PI)
        vmin[i] = mean - radius
        vmax[i] = mean + radius
    return (tmin_arr.reshape(shape), vmin_arr.reshape(shape),
            tmax_arr.reshape(shape), vmax_arr.reshape(shape))
