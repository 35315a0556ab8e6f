"""Vectorized kernels: agreement between backends and with the scalar path."""

import importlib
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from sqzfilter import QuadratureCovariance, propagate, SidebandTransmission
from sqzfilter._kernels import _numpy as knp
from sqzfilter._kernels import backend, get_backend

try:
    from sqzfilter._kernels import _core as kcy
except ImportError:
    kcy = None

needs_compiled = pytest.mark.skipif(kcy is None,
                                    reason="compiled backend not built")

RNG = np.random.default_rng(77)
N = 4096


def random_batch():
    v_plus = RNG.uniform(0.2, 5.0, N)
    v_minus = RNG.uniform(0.2, 5.0, N)
    bound = np.sqrt(v_plus * v_minus) * 0.95
    c_cross = RNG.uniform(-1.0, 1.0, N) * bound
    t_plus = RNG.uniform(0.0, 1.0, N)
    t_minus = RNG.uniform(0.0, 1.0, N)
    th_plus = RNG.uniform(-math.pi, math.pi, N)
    th_minus = RNG.uniform(-math.pi, math.pi, N)
    return v_plus, v_minus, c_cross, t_plus, t_minus, th_plus, th_minus


def test_backend_identifier():
    assert get_backend() in ("cython", "numpy")
    assert get_backend() == backend


def test_lineshape_eval_matches_plain_formula():
    delta = np.linspace(-8e6, 8e6, 1001)
    a, b, c, gamma, delta0 = 0.24, 0.05, 0.28, 2.0e6, 3.0e5
    u = delta0 + delta
    expect = (a * gamma ** 2 + b * gamma * u) / (gamma ** 2 + u ** 2) + c
    got = knp.lineshape_eval(a, b, c, gamma, delta0, delta)
    assert_allclose(got, expect, rtol=1e-14)


def test_propagate_arrays_matches_scalar_loop():
    v_plus, v_minus, c_cross, t_plus, t_minus, th_plus, th_minus = \
        random_batch()
    out_p, out_m, out_c = knp.propagate_arrays(
        t_plus, t_minus, th_plus, th_minus, v_plus, v_minus, c_cross)
    for i in range(0, N, 37):
        ref = propagate(
            SidebandTransmission(t_plus[i], t_minus[i],
                                 th_plus[i], th_minus[i]),
            QuadratureCovariance(v_plus[i], v_minus[i], c_cross[i]))
        # same arithmetic ordering: bitwise agreement, not just close
        assert out_p[i] == ref.v_plus
        assert out_m[i] == ref.v_minus
        assert out_c[i] == ref.c_cross


def test_zero_phase_propagation_drops_no_bits():
    v_plus, v_minus, c_cross, t_plus, t_minus, _, _ = random_batch()
    zeros = np.zeros(N)
    out = knp.propagate_arrays(t_plus, t_minus, zeros, zeros,
                               v_plus, v_minus, np.zeros(N))
    p = (0.5 * (t_plus + t_minus)) ** 2
    q = (0.5 * (t_plus - t_minus)) ** 2
    vac = 1.0 - (p + q)
    assert_array_equal(out[0], p * v_plus + q * v_minus + vac)
    assert_array_equal(out[1], p * v_minus + q * v_plus + vac)
    assert_array_equal(out[2], 0.0 * c_cross)


def test_homodyne_surface_shape_and_values():
    thetas = np.linspace(0.0, math.pi, 7, endpoint=False)
    v_plus = np.array([0.5, 1.0])
    v_minus = np.array([2.0, 1.0])
    c_cross = np.array([0.0, 0.0])
    surf = knp.homodyne_surface(thetas, v_plus, v_minus, c_cross)
    assert surf.shape == (7, 2)
    assert_allclose(surf[0], [0.5, 1.0], rtol=1e-15)
    # vacuum column is flat to rounding (cos^2 + sin^2 within 1 ulp of 1)
    assert_allclose(surf[:, 1], np.ones(7), rtol=1e-15)


def test_minmax_arrays_degenerate_convention():
    v = np.array([1.3])
    th_min, v_min, th_max, v_max = knp.minmax_arrays(v, v, np.zeros(1))
    assert th_min[0] == 0.0
    assert th_max[0] == math.pi / 2
    assert v_min[0] == v_max[0] == 1.3


@needs_compiled
class TestCompiledBackend:
    def test_lineshape_eval(self):
        delta = np.linspace(-8e6, 8e6, 1001)
        args = (0.24, 0.05, 0.28, 2.0e6, 3.0e5)
        assert_allclose(kcy.lineshape_eval(*args, delta),
                        knp.lineshape_eval(*args, delta), rtol=1e-14)

    def test_lineshape_jacobian(self):
        delta = np.linspace(-8e6, 8e6, 257)
        args = (0.24, 0.05, 0.28, 2.0e6, 3.0e5)
        assert_allclose(kcy.lineshape_jacobian(*args, delta),
                        knp.lineshape_jacobian(*args, delta), rtol=1e-13)

    def test_propagate_arrays(self):
        batch = random_batch()
        v_plus, v_minus, c_cross, t_plus, t_minus, th_plus, th_minus = batch
        got = kcy.propagate_arrays(t_plus, t_minus, th_plus, th_minus,
                                   v_plus, v_minus, c_cross)
        expect = knp.propagate_arrays(t_plus, t_minus, th_plus, th_minus,
                                      v_plus, v_minus, c_cross)
        for g, e in zip(got, expect):
            assert_allclose(g, e, rtol=1e-13, atol=1e-15)

    def test_homodyne_surface(self):
        thetas = np.linspace(0.0, math.pi, 181, endpoint=False)
        v_plus, v_minus, c_cross = random_batch()[:3]
        assert_allclose(kcy.homodyne_surface(thetas, v_plus, v_minus, c_cross),
                        knp.homodyne_surface(thetas, v_plus, v_minus, c_cross),
                        rtol=1e-13)

    def test_minmax_arrays(self):
        v_plus, v_minus, c_cross = random_batch()[:3]
        got = kcy.minmax_arrays(v_plus, v_minus, c_cross)
        expect = knp.minmax_arrays(v_plus, v_minus, c_cross)
        for g, e in zip(got, expect):
            assert_allclose(g, e, rtol=1e-12, atol=1e-12)

    def test_vacuum_fixed_point_exact(self):
        t_plus = RNG.uniform(0.0, 1.0, N)
        t_minus = RNG.uniform(0.0, 1.0, N)
        th_plus = RNG.uniform(-math.pi, math.pi, N)
        th_minus = RNG.uniform(-math.pi, math.pi, N)
        ones, zeros = np.ones(N), np.zeros(N)
        out = kcy.propagate_arrays(t_plus, t_minus, th_plus, th_minus,
                                   ones, ones, zeros)
        assert_array_equal(out[0], ones)
        assert_array_equal(out[1], ones)
        assert_array_equal(out[2], zeros)


def test_env_override_rejects_unknown_backend(monkeypatch):
    import subprocess
    import sys
    code = ("import os; os.environ['SQZFILTER_KERNELS'] = 'fortran';\n"
            "try:\n"
            "    import sqzfilter._kernels\n"
            "except ImportError as exc:\n"
            "    print('refused:', exc)\n"
            "else:\n"
            "    raise SystemExit('import should have failed')\n")
    proc = subprocess.run([sys.executable, "-c", code],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "refused:" in proc.stdout


def test_env_override_forces_numpy():
    import subprocess
    import sys
    code = ("import os; os.environ['SQZFILTER_KERNELS'] = 'numpy';\n"
            "import sqzfilter._kernels as k; print(k.get_backend())")
    proc = subprocess.run([sys.executable, "-c", code],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "numpy"
