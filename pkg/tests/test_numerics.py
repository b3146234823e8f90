import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvelab.errors import NonConvergence, TailBoundFailure
from curvelab.numerics import (
    QuadSpec,
    ScaledComplex,
    ScaledReal,
    default_seed,
    quad_finite,
    quad_semi_infinite,
    rng_stream,
)

TIGHT = QuadSpec(abs_tol=1e-13, rel_tol=1e-13)


# quadrature ---------------------------------------------------------------------

def test_quad_polynomial():
    assert quad_finite(lambda x: x**2, 0.0, 1.0) == pytest.approx(1 / 3, rel=1e-14)


def test_quad_gaussian():
    val = quad_finite(lambda x: np.exp(-0.5 * x * x), -8.0, 8.0, TIGHT)
    assert abs(val - math.sqrt(2 * math.pi)) < 1e-12


def test_quad_gamma4():
    assert abs(quad_finite(lambda x: x**3 * np.exp(-x), 0.0, 60.0, TIGHT) - 6.0) < 1e-11


@given(st.lists(st.floats(-3, 3), min_size=8, max_size=8), st.floats(-2, 0), st.floats(0.1, 3))
@settings(max_examples=40, deadline=None)
def test_quad_degree7_exact(coef, a, width):
    b = a + width
    p = np.polynomial.Polynomial(coef)
    exact = p.integ()(b) - p.integ()(a)
    got = quad_finite(p, a, b)
    assert abs(got - exact) <= 1e-14 * max(1.0, abs(exact)) * 10


def test_quad_vector_components_share_subdivision():
    f = lambda x: np.stack([np.sin(x), np.cos(3 * x), x**4])
    got = quad_finite(f, 0.0, 2.0, TIGHT)
    exact = [1 - math.cos(2.0), math.sin(6.0) / 3, 32 / 5]
    assert np.allclose(got, exact, rtol=1e-12, atol=1e-13)


def test_quad_nonconvergence():
    with pytest.raises(NonConvergence):
        quad_finite(lambda x: np.sign(np.sin(1e4 * x)), 0.0, 1.0, QuadSpec(1e-15, 0.0, 20))


def test_quad_breakpoints_order_independent():
    f = lambda x: np.abs(x - 0.3)
    a = quad_finite(f, 0.0, 1.0, TIGHT, breakpoints=[0.3, 0.7])
    b = quad_finite(f, 0.0, 1.0, TIGHT, breakpoints=[0.7, 0.3])
    assert a == b
    assert a == pytest.approx(0.045 + 0.245, rel=1e-13)


def test_quadspec_validation():
    with pytest.raises(ValueError):
        QuadSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadSpec(rel_tol=-1.0)


def test_semi_infinite_exponential():
    assert quad_semi_infinite(lambda x: np.exp(-x), TIGHT) == pytest.approx(1.0, abs=1e-12)


def test_semi_infinite_algebraic():
    val = quad_semi_infinite(lambda x: 1.0 / (1.0 + x * x), QuadSpec(1e-11, 1e-11))
    assert val == pytest.approx(math.pi / 2, abs=1e-10)


def test_semi_infinite_q10_gaussian():
    # Gamma(11/2)/2; checked against a finite-range oracle
    oracle = quad_finite(lambda q: q**10 * np.exp(-q * q), 0.0, 12.0, TIGHT)
    val = quad_semi_infinite(lambda q: q**10 * np.exp(-q * q), TIGHT)
    assert val == pytest.approx(math.gamma(5.5) / 2, rel=1e-12)
    assert val == pytest.approx(oracle, rel=1e-12)


def test_semi_infinite_no_decay():
    with pytest.raises(TailBoundFailure):
        quad_semi_infinite(lambda x: 1.0 / (1.0 + x) ** 0.5)


# scaled arithmetic --------------------------------------------------------------

finite_nonzero = st.floats(allow_nan=False, allow_infinity=False).filter(lambda v: v != 0.0)


@given(finite_nonzero)
def test_scaled_round_trip_exact(v):
    assert ScaledReal.from_float(v).to_float() == v


@given(st.floats(-1e150, 1e150), st.floats(-1e150, 1e150))
def test_scaled_addition_dominant_exact(a, b):
    got = (ScaledReal.from_float(a) + ScaledReal.from_float(b)).to_float()
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        assert got == 0.0
    else:
        assert abs(got - (a + b)) <= 4 * np.finfo(float).eps * scale


@given(st.floats(-500, 500), st.floats(-500, 500), st.sampled_from([-1, 1]), st.sampled_from([-1, 1]))
def test_scaled_product_rule(la, lb, sa, sb):
    a, b = ScaledReal(sa, la), ScaledReal(sb, lb)
    p = a * b
    assert p.sign == sa * sb
    assert p.log_mag == pytest.approx(la + lb, abs=1e-12 * max(1.0, abs(la + lb)))
    q = a / b
    assert q.log_mag == pytest.approx(la - lb, abs=1e-12 * max(1.0, abs(la - lb)))


def test_scaled_algebra_random_pairs(rng):
    la = rng.uniform(-300, 300, 10_000)
    lb = la + rng.uniform(-30, 30, 10_000)  # keep the sum representable
    sa = rng.choice([-1, 1], 10_000)
    sb = rng.choice([-1, 1], 10_000)
    worst = 0.0
    for i in range(10_000):
        a, b = ScaledReal(int(sa[i]), la[i]), ScaledReal(int(sb[i]), lb[i])
        fa, fb = a.to_float(), b.to_float()
        s = (a + b).to_float()
        ref = fa + fb
        worst = max(worst, abs(s - ref) / max(abs(fa), abs(fb)))
        m = (a * b).log_mag
        assert abs(m - (la[i] + lb[i])) <= 1e-12 * abs(la[i] + lb[i]) + 1e-12
    assert worst <= 1e-12


def test_scaled_beyond_float_range():
    big = ScaledReal(1, 2000.0)
    tiny = ScaledReal(1, -2000.0)
    assert (big * tiny).to_float() == pytest.approx(1.0, rel=1e-13)
    assert (big + big).log_mag == pytest.approx(2000.0 + math.log(2.0), rel=1e-15)
    assert big > tiny and -big < tiny
    assert (big - big).sign == 0


def test_scaled_complex():
    z = ScaledComplex.from_complex(3 + 4j) * ScaledReal(1, 700.0)
    assert z.log_abs() == pytest.approx(math.log(5.0) + 700.0, rel=1e-15)
    assert z.scaled_to(700.0) == pytest.approx(3 + 4j, rel=1e-14)
    w = ScaledComplex.from_complex(1 - 2j)
    assert (w * w.conj()).to_complex() == pytest.approx(5.0, rel=1e-15)
    assert ((w + w) / w).to_complex() == pytest.approx(2.0, rel=1e-15)


# rng --------------------------------------------------------------------------

def test_rng_reproducible():
    a = rng_stream(42, 3).standard_normal(1000)
    b = rng_stream(42, 3).standard_normal(1000)
    assert np.array_equal(a, b)


def test_rng_mean():
    x = rng_stream(7, 0).standard_normal(1_000_000)
    assert abs(x.mean()) < 0.004
    assert x.var() == pytest.approx(1.0, abs=0.005)


def test_rng_streams_independent():
    a = rng_stream(5, 1).standard_normal(100_000)
    b = rng_stream(5, 2).standard_normal(100_000)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.01
    assert not np.array_equal(a[:10], rng_stream(6, 1).standard_normal(10))


def test_default_seed_env(monkeypatch):
    monkeypatch.setenv("CURVELAB_SEED", "99")
    assert default_seed() == 99
    assert default_seed(3) == 3
    monkeypatch.delenv("CURVELAB_SEED")
    assert default_seed() == 0
