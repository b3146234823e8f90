import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvelab.bulk import zd_cdf, zd_pdf
from curvelab.errors import DegenerateSpectrum, DomainError, EmptyWindow, TooFewSamples
from curvelab.montecarlo import (
    CurvatureBatch,
    GueSample,
    PerturbationMatrix,
    block_size,
    char_fn_samples,
    curvatures,
    diagonalize,
    eigh,
    extreme_curvature,
    histogram,
    ks_distance,
    make_perturbation,
    run_campaign,
    sample_gue,
    window_bulk,
    window_edge,
)


def semicircle_cdf(x):
    x = np.clip(x, -2, 2)
    return 0.5 + (x * np.sqrt(4 - x * x) / 4 + np.arcsin(x / 2)) / math.pi


def test_gue_variances(rng):
    h = sample_gue(2, rng, size=200000)
    assert np.allclose(h, np.conj(np.swapaxes(h, -1, -2)))
    assert np.var(h[:, 0, 0].real) == pytest.approx(0.5, rel=0.02)
    assert np.mean(np.abs(h[:, 0, 1]) ** 2) == pytest.approx(0.5, rel=0.02)
    with pytest.raises(DomainError):
        sample_gue(1, rng)


def test_semicircle_ks(rng):
    vals = np.linalg.eigvalsh(sample_gue(50, rng, size=400)).ravel()
    s = np.sort(vals)
    emp = np.arange(1, s.size + 1) / s.size
    assert np.max(np.abs(emp - semicircle_cdf(s))) <= 0.03


def test_eigh_examples():
    vals, vecs = eigh(np.array([[2.0, 0.0], [0.0, 1.0]], dtype=complex))
    assert np.allclose(vals, [1.0, 2.0])
    vals, _ = eigh(np.array([[0, 1j], [-1j, 0]]))
    assert np.allclose(vals, [-1.0, 1.0])


def test_perturbation_y_typ(rng):
    for kind in ("diag_rademacher", "alternating", "identity"):
        assert make_perturbation(6, kind, rng).y_typ == pytest.approx(1.0)
    w = make_perturbation(400, "fixed_gue_draw", rng)
    assert w.y_typ == pytest.approx(1.0, abs=0.02)
    with pytest.raises(DomainError):
        make_perturbation(4, "bogus", rng)
    with pytest.raises(DomainError):
        make_perturbation(4, "diag_rademacher")


def test_identity_gives_zero(rng):
    s = diagonalize(sample_gue(8, rng))
    b = curvatures(s, make_perturbation(8, "identity"))
    assert np.allclose(b.curvature_raw, 0.0, atol=1e-12)
    assert np.allclose(b.velocity, 1.0)


def test_n2_closed_form(rng):
    h = sample_gue(2, rng)
    w = make_perturbation(2, "alternating")
    b = curvatures(diagonalize(h), w)
    # second-order shift of the lower level under H + eps W
    def lower(eps):
        m = h + eps * w.w
        a, d, o = m[0, 0].real, m[1, 1].real, abs(m[0, 1])
        return (a + d) / 2 - math.sqrt(((a - d) / 2) ** 2 + o * o)
    e = 1e-3
    fd = (lower(e) - 2 * lower(0) + lower(-e)) / e**2
    assert b.curvature_raw[0] == pytest.approx(fd / 2, rel=1e-5)
    assert b.curvature_raw.sum() == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=15, deadline=None)
@given(st.integers(3, 12), st.integers(0, 2**32 - 1))
def test_curvature_matches_finite_difference(n, seed):
    rng = np.random.default_rng(seed)
    h = sample_gue(n, rng)
    w = make_perturbation(n, "fixed_gue_draw", rng)
    b = curvatures(diagonalize(h), w)
    e = 1e-4
    lp, l0, lm = (np.linalg.eigvalsh(h + t * w.w) for t in (e, 0.0, -e))
    gaps = np.diff(l0).min()
    if gaps < 1e-2:
        return
    fd = (lp - 2 * l0 + lm) / e**2
    assert np.allclose(b.curvature_raw, fd / 2, rtol=1e-3, atol=1e-3 / gaps)
    assert np.allclose(b.velocity, (lp - lm) / (2 * e), atol=1e-6)


def test_degenerate_guard():
    s = GueSample(3, np.array([0.0, 0.0, 1.0]), np.eye(3, dtype=complex))
    with pytest.raises(DegenerateSpectrum):
        curvatures(s, make_perturbation(3, "alternating"))


def test_extreme_max_is_mirror(rng):
    h = sample_gue(7, rng)
    w = make_perturbation(7, "fixed_gue_draw", rng)
    full = curvatures(diagonalize(h), w)
    lo = extreme_curvature(diagonalize(h), w, "min")
    hi = extreme_curvature(diagonalize(h), w, "max")
    mirror = extreme_curvature(diagonalize(-h), w, "min")
    assert lo.curvature_raw == pytest.approx(full.curvature_raw[0])
    assert hi.curvature_raw == pytest.approx(-full.curvature_raw[-1])
    assert hi.lam == pytest.approx(mirror.lam)
    assert hi.curvature_raw == pytest.approx(mirror.curvature_raw)
    assert lo.curvature_raw < 0
    with pytest.raises(DomainError):
        extreme_curvature(diagonalize(h), w, "mid")


def test_normalized_columns():
    b = CurvatureBatch(8, 2.0, np.array([0.0, 2.0, 3.0]), np.zeros(3), np.array([1.0, 1.0, 1.0]),
                       np.zeros(3, dtype=np.int64))
    assert b.c_bulk[0] == pytest.approx(1 / (math.pi * (1 / math.pi) * 2.0))
    assert math.isnan(b.c_bulk[2])
    assert b.c_edge[1] == pytest.approx(2 / 2.0)
    assert b.c_sc[1] == pytest.approx(1 - 2)
    assert b.zeta[2] == pytest.approx(4.0)
    assert len(b.records()) == 3


def test_window_count():
    camp = run_campaign(100, 40, 5)
    s, meta = window_bulk(camp.batch, 0.0, 0.05)
    expect = 40 * 100 * (semicircle_cdf(0.05) - semicircle_cdf(-0.05))
    assert abs(meta["count"] - expect) <= 0.15 * expect
    with pytest.raises(EmptyWindow):
        window_bulk(camp.batch, 5.0, 0.01)
    with pytest.raises(EmptyWindow):
        window_edge(camp.batch, 50.0, 0.5)
    with pytest.raises(DomainError):
        window_bulk(camp.batch, 0.0, 0.0)


def test_histogram_and_ks():
    x = np.linspace(-1, 1, 1000)
    g = histogram(x, bins=10, range_=(-1, 1))
    assert np.sum(g.density) * g.meta["bin_width"] == pytest.approx(1.0)
    with pytest.raises(TooFewSamples):
        histogram(x[:50])
    u = (np.arange(1000) + 0.5) / 1000
    assert ks_distance(u, lambda t: np.ones_like(t), lambda t: np.clip(t, 0, 1)) <= 1e-3
    grid = np.linspace(-60, 60, 20001)
    q = np.interp(u, zd_cdf(grid, 0.0), grid)
    assert ks_distance(q, lambda c: zd_pdf(c, 0.0), lambda c: zd_cdf(c, 0.0)) <= 2e-3
    assert ks_distance(q, lambda c: zd_pdf(c, 0.0), support=(-60, 60)) <= 3e-3
    assert ks_distance(q + 1.0, lambda c: zd_pdf(c, 0.0), lambda c: zd_cdf(c, 0.0)) >= 0.2
    with pytest.raises(TooFewSamples):
        ks_distance(u[:10], lambda t: np.ones_like(t))


def test_block_size():
    assert block_size(2) == 4096
    assert block_size(200) == 52
    assert block_size(4000) == 1


def test_campaign_determinism():
    a = run_campaign(30, 300, 9).batch
    b = run_campaign(30, 300, 9, threads=3).batch
    c = run_campaign(30, 300, 10).batch
    assert np.array_equal(a.curvature_raw, b.curvature_raw)
    assert np.array_equal(a.trial, b.trial)
    assert not np.array_equal(a.curvature_raw, c.curvature_raw)


def test_campaign_options():
    camp = run_campaign(10, 50, 1, levels="extreme")
    assert len(camp.batch) == 100
    assert np.all(camp.batch.curvature_raw < 0)
    g = run_campaign(10, 50, 1, overlap="gaussian")
    assert len(g.batch) == 500
    with pytest.raises(DomainError):
        run_campaign(10, 5, 1, overlap="other")
    with pytest.raises(DomainError):
        run_campaign(1, 5, 1)


def test_velocity_distribution():
    camp = run_campaign(40, 200, 3)
    v = camp.batch.velocity
    # velocities of one matrix sum to Tr W; variance is about y/N
    per_trial = np.bincount(camp.batch.trial, weights=v)
    assert np.allclose(per_trial, np.trace(camp.perturbation.w).real)
    assert v.var() == pytest.approx(1.0 / 40, rel=0.1)


def test_char_fn_samples():
    c = np.array([0.0, 0.0, 0.0])
    k, se = char_fn_samples(c, [0.0, 1.0])
    assert np.allclose(k, 1.0) and np.allclose(se, 0.0)
    k, _ = char_fn_samples(np.array([1.0, -1.0]), [2.0])
    assert k[0] == pytest.approx(math.cos(2.0))
