import math

import numpy as np
import pytest
from scipy import integrate

from curvelab.airy import soft_edge_density
from curvelab.bulk import semicircle_density, zd_pdf
from curvelab.errors import AsymmetricGrid, DomainError, EdgeProximity, NonHermitianSamples, RealAxisError
from curvelab.hermite import (
    HermiteContext,
    asymptotics_bulk,
    asymptotics_edge,
    cauchy_transform,
    char_fn_finite,
    charfn_omega_grid,
    density_finite,
    hermite_norm_sq,
    invert_char_fn,
    kernel_set,
    monic_hermite,
)

CTX10 = HermiteContext(10)


def p(k, x, ctx=CTX10):
    return monic_hermite(k, ctx, x).to_float()


def test_context():
    with pytest.raises(DomainError):
        HermiteContext(1)


def test_base_cases():
    assert p(0, 0.3) == 1.0
    assert p(1, 0.7) == pytest.approx(0.7)
    assert p(2, 0.7) == pytest.approx(0.49 - 0.1)


def test_gram_schmidt_oracle():
    # monic p_2 orthogonal to 1 and x under exp(-N x^2/2)
    w = lambda x: math.exp(-5 * x * x)
    m0 = integrate.quad(w, -np.inf, np.inf)[0]
    m2 = integrate.quad(lambda x: x * x * w(x), -np.inf, np.inf)[0]
    for x in (-1.0, 0.2, 1.4):
        assert p(2, x) == pytest.approx(x * x - m2 / m0, rel=1e-12)


def test_orthogonality_matrix():
    x, wq = np.polynomial.hermite.hermgauss(40)  # weight exp(-t^2), x = t sqrt(2/N)
    s = math.sqrt(2 / 10)
    vals = np.array([[p(k, s * t) for t in x] for k in range(13)])
    g = (vals * wq) @ vals.T * s
    norms = np.array([hermite_norm_sq(k, CTX10).to_float() for k in range(13)])
    assert np.allclose(np.diag(g), norms, rtol=1e-12)
    off = np.abs(g - np.diag(np.diag(g))) / np.sqrt(np.outer(norms, norms))
    assert off.max() <= 1e-10


def test_derivative_identity():
    ctx = HermiteContext(60)
    for x in (-1.3, 0.4, 2.2):
        val, der = monic_hermite(60, ctx, x, derivative=True)
        h = 1e-6
        fd = (monic_hermite(60, ctx, x + h).to_float() - monic_hermite(60, ctx, x - h).to_float()) / (2 * h)
        assert der.to_float() == pytest.approx(60 * monic_hermite(59, ctx, x).to_float(), rel=1e-12)
        assert der.to_float() == pytest.approx(fd, rel=1e-5)


def test_norms():
    assert hermite_norm_sq(0, CTX10).to_float() == pytest.approx(math.sqrt(2 * math.pi / 10))
    for k in (1, 5, 30):
        r = hermite_norm_sq(k, CTX10) / hermite_norm_sq(k - 1, CTX10)
        assert r.to_float() == pytest.approx(k / 10, rel=1e-13)
    big = hermite_norm_sq(100, HermiteContext(100))
    assert math.isfinite(big.log_mag)


def test_large_degree_no_overflow():
    v = monic_hermite(1200, HermiteContext(400), 0.3)
    assert math.isfinite(v.log_mag) and v.sign != 0


# Cauchy transforms -----------------------------------------------------------

def test_cauchy_real_axis():
    with pytest.raises(RealAxisError):
        cauchy_transform(0, CTX10, 0.5)


@pytest.mark.parametrize("z", [0.3 + 0.2j, -1.1 + 0.01j, 2.5 + 1.0j])
def test_cauchy_reflection(z):
    for n in (-2, -1, 0, 1):
        a = cauchy_transform(n, CTX10, z).to_complex()
        b = cauchy_transform(n, CTX10, np.conj(z)).to_complex()
        assert b == pytest.approx(-np.conj(a), rel=1e-10)


def test_cauchy_definition():
    # direct quadrature of (2 pi i)^-1 int p_k w / (x - z)
    z = 0.4 + 0.3j
    for n in (-1, 0):
        k = 10 + n
        f = lambda x: p(k, x) * math.exp(-5 * x * x) / (x - z)
        re = integrate.quad(lambda x: f(x).real, -8, 8, limit=200)[0]
        im = integrate.quad(lambda x: f(x).imag, -8, 8, limit=200)[0]
        ref = complex(re, im) / (2j * math.pi)
        assert cauchy_transform(n, CTX10, z).to_complex() == pytest.approx(ref, rel=1e-9)


def test_cauchy_large_z():
    ctx = HermiteContext(20)
    z = 30 + 40j
    h0 = cauchy_transform(-20, ctx, z).to_complex()
    lead = -hermite_norm_sq(0, ctx).to_float() / (2j * math.pi * z)
    assert abs(h0 / lead - 1) <= 1e-3


def test_plemelj_jump():
    x, eps = 0.5, 1e-6
    jump = cauchy_transform(-7, CTX10, x + 1j * eps).to_complex() - cauchy_transform(-7, CTX10, x - 1j * eps).to_complex()
    ref = p(3, x) * math.exp(-5 * x * x)
    assert abs(jump - ref) <= 1e-4 * abs(ref)


# kernels --------------------------------------------------------------------

def test_w1_positive_and_w2_derivative():
    ctx = HermiteContext(50)
    for mu in (-1.5, 0.0, 1.5):
        ks = kernel_set(mu, mu + 0.01j, ctx)
        assert ks.w1.sign > 0
        h = 1e-5
        w_p = kernel_set(mu + h, mu + 0.01j, ctx).w1
        w_m = kernel_set(mu - h, mu + 0.01j, ctx).w1
        fd = ((w_p - w_m) / ks.w1).to_float() / (2 * h)
        assert ks.ratio_w2_w1() == pytest.approx(fd, rel=1e-5)
    with pytest.raises(RealAxisError):
        kernel_set(0.0, 0.0, ctx)


def test_bulk_f_ratio():
    ctx = HermiteContext(400)
    mu = 0.3
    ks = kernel_set(mu, mu + 0.5j / 400, ctx)
    r = (ks.f2 / ks.f1).to_complex()
    ref = 400 * (mu / 2 - 1j * math.pi * semicircle_density(mu))
    assert abs(r / ref - 1) <= 0.05


def test_edge_ratio():
    rec = asymptotics_edge(0.5, 1.0, HermiteContext(400))
    assert rec["W2_over_2W1"]["rel_err_correction"] <= 0.10


# characteristic function ----------------------------------------------------

@pytest.mark.parametrize("n", [50, 100, 200])
def test_k0(n):
    assert abs(char_fn_finite(0.0, 0.0, HermiteContext(n)) - 1) <= 1e-8
    assert abs(char_fn_finite(0.0, 2.0, HermiteContext(n), frame="edge") - 1) <= 1e-8


def test_k_hermitian():
    ctx = HermiteContext(60)
    om = np.array([0.3, 1.7, 5.0])
    for mu in (0.0, 0.8):
        a = char_fn_finite(om, mu, ctx)
        b = char_fn_finite(-om, mu, ctx)
        assert np.allclose(b, np.conj(a), rtol=0, atol=1e-10)


def test_k_bulk_limit():
    k = char_fn_finite(1.0, 0.0, HermiteContext(400))
    assert abs(k - 2 * math.exp(-1)) <= 5e-3


@pytest.mark.parametrize("n", [50, 100])
def test_inverted_density(n):
    ctx = HermiteContext(n)
    om, K = charfn_omega_grid(0.0, ctx, 2 * math.pi / 400)
    assert abs(K[-1]) < 1e-12
    c = np.linspace(-200, 200, 8001)
    g = invert_char_fn(om, K, c)
    # c^-4 tails beyond the grid
    tail = 2 * g.density[-1] * 200.0 / 3
    assert abs(g.mass + tail - 1) <= 1e-6
    assert g.density.min() >= -1e-6
    if n == 100:
        cc = np.linspace(-10, 10, 401)
        gz = invert_char_fn(om, K, cc)
        assert np.max(np.abs(gz.density - zd_pdf(cc, 0.0))) <= 0.03


def test_invert_known_pairs():
    om = np.linspace(-40, 40, 8001)
    c = np.linspace(-5, 5, 101)
    g = invert_char_fn(om, np.exp(-0.5 * om**2), c)
    assert np.max(np.abs(g.density - np.exp(-0.5 * c**2) / math.sqrt(2 * math.pi))) <= 1e-8
    g = invert_char_fn(om, np.exp(-np.abs(om)) * (1 + np.abs(om)), c)
    assert np.max(np.abs(g.density - zd_pdf(c, 0.0))) <= 1e-6
    spike = invert_char_fn(np.linspace(-1, 1, 21), np.ones(21), c)
    assert "normalization_residual" in spike.meta


def test_invert_errors():
    om = np.linspace(-1, 2, 31)
    with pytest.raises(AsymmetricGrid):
        invert_char_fn(om, np.ones(31))
    om = np.linspace(-1, 1, 31)
    with pytest.raises(NonHermitianSamples):
        invert_char_fn(om, np.exp(1j * om**2))
    with pytest.raises(AsymmetricGrid):
        invert_char_fn(np.array([-1.0, 0.2, 1.0]), np.ones(3))


# density --------------------------------------------------------------------

def test_density_normalized():
    ctx = HermiteContext(50)
    val = integrate.quad(lambda x: density_finite(x, ctx), -4, 4, limit=400, epsabs=1e-12)[0]
    assert val == pytest.approx(1.0, abs=1e-8)


def test_density_limits():
    ctx = HermiteContext(400)
    assert abs(density_finite(0.0, ctx) - 1 / math.pi) <= 0.01
    edge = 400 ** (1 / 3) * density_finite(2.0, ctx)
    assert abs(edge - soft_edge_density(0.0)) <= 0.05 * soft_edge_density(0.0)
    assert np.all(density_finite(np.linspace(-3, 3, 61), ctx) >= 0)


# asymptotics ----------------------------------------------------------------

def test_asymptotics_bulk_values():
    rec = asymptotics_bulk(0.4, 1.0, HermiteContext(400))
    assert rec["p_N"]["rel_err"] <= 0.03
    assert rec["W1"]["rel_err"] <= 0.03
    with pytest.raises(EdgeProximity):
        asymptotics_bulk(1.9, 1.0, HermiteContext(100))


def test_asymptotics_edge_values():
    rec = asymptotics_edge(0.5, 1.0, HermiteContext(400))
    assert rec["p_N"]["rel_err"] <= 0.10
    rec0 = asymptotics_edge(0.0, 1.0, HermiteContext(400))
    assert rec0["W1"]["rel_err"] <= 0.10
    assert rec0["F2_over_NF1"]["rel_err"] <= 0.10
    with pytest.raises(DomainError):
        asymptotics_edge(9.0, 1.0, HermiteContext(100))


@pytest.mark.slow
def test_asymptotic_errors_decrease():
    for mu, w in ((0.0, 1.0), (-1.0, 0.5), (0.5, -2.0)):
        recs = [asymptotics_bulk(mu, w, HermiteContext(n)) for n in (100, 200, 400)]
        for q in ("p_N", "W1", "F1", "F2", "F2_over_F1"):
            e = [r[q]["window_err"] for r in recs]
            assert e[0] > e[1] > e[2], (mu, q, e)
    for z in (-2.0, 0.0, 2.0):
        recs = [asymptotics_edge(z, 1.0, HermiteContext(n)) for n in (100, 200, 400)]
        for q in ("p_N", "p_N_minus_1", "f_N", "W1", "F1", "F2", "F2_over_NF1"):
            e = [r[q]["rel_err"] for r in recs]
            assert e[0] > e[1] > e[2], (z, q, e)
