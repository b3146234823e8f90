import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvelab import _kernels_py as py
from curvelab import kernels

try:
    from curvelab import _kernels as cy
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def true_values(tail):
    mant, log_scale = tail
    return mant * np.exp(log_scale)


def test_fallback_recurrence():
    x = np.array([0.3, -1.2])
    mant, ls = py.hermite_tail(x, 4, 3)
    ref3 = x**3 - 3 * x / 4
    assert np.allclose(mant[0] * np.exp(ls), ref3)
    assert np.allclose(mant[1] * np.exp(ls), x * x - 1 / 4)
    assert np.allclose(mant[3] * np.exp(ls), 1.0)
    mant, _ = py.hermite_tail(x, 4, 1)
    assert np.all(mant[2:] == 0)


def test_fallback_rescales():
    mant, ls = py.hermite_tail(np.array([30.0]), 10, 400)
    assert np.all(np.isfinite(mant)) and ls[0] > 0
    assert abs(mant[0, 0]) > 0


def test_curvature_sums_small():
    ev = np.array([0.0, 1.0, 3.0])
    w = np.array([[0, 1, 2], [1, 0, 4], [2, 4, 0]], dtype=float)
    c = py.curvature_sums(ev, w)
    assert np.allclose(c, [-1 - 2 / 3, 1 - 2, 2 / 3 + 2])
    assert c.sum() == pytest.approx(0.0, abs=1e-14)


@needs_ext
@settings(max_examples=30, deadline=None)
@given(st.integers(2, 60), st.integers(0, 300), st.integers(0, 2**32 - 1))
def test_hermite_tail_equivalence(n, k, seed):
    x = np.random.default_rng(seed).uniform(-3, 3, 17)
    a = true_values(py.hermite_tail(x, n, k))
    b = true_values(cy.hermite_tail(x, n, k))
    fin = np.isfinite(a) & np.isfinite(b)
    assert np.array_equal(fin, np.isfinite(a))
    assert np.allclose(a[fin], b[fin], rtol=1e-12, atol=0)


@needs_ext
@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_curvature_sums_equivalence(n, m, seed):
    rng = np.random.default_rng(seed)
    ev = np.sort(rng.standard_normal((m, n)), axis=-1)
    w = rng.exponential(size=(m, n, n))
    w = w + np.swapaxes(w, -1, -2)
    a = py.curvature_sums(ev, w)
    b = np.asarray(cy.curvature_sums(ev, w))
    scale = np.abs(w).sum() / np.diff(ev, axis=-1).min()
    assert np.allclose(a, b, rtol=0, atol=1e-13 * scale)


def test_env_forces_fallback():
    env = dict(os.environ, CURVELAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import curvelab.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
