import math

import numpy as np
import pytest
from scipy import special

from curvelab.airy import ai_derivatives, airy_eval, soft_edge_density, soft_edge_density_prime
from curvelab.errors import DomainError

ZETAS = np.linspace(-10.0, 8.0, 181)


def test_values_at_zero():
    v = airy_eval(0.0)
    assert v.ai == pytest.approx(0.3550280539, abs=1e-10)
    assert v.bi == pytest.approx(0.6149266274, abs=1e-10)
    assert v.bi / v.ai == pytest.approx(math.sqrt(3.0), rel=1e-12)


@pytest.mark.parametrize("z", [-35.0, -12.3, -5.0, -1.0, 0.3, 2.0, 7.5, 20.0])
def test_against_scipy(z):
    ai, aip, bi, bip = special.airy(z)
    v = airy_eval(z)
    for got, ref in ((v.ai, ai), (v.ai_prime, aip), (v.bi, bi), (v.bi_prime, bip)):
        assert abs(got - ref) <= max(1e-10, 1e-9 * abs(ref))


def test_wronskian_grid():
    worst = max(abs(airy_eval(z).wronskian() - 1 / math.pi) for z in ZETAS)
    assert worst <= 1e-9


def test_ode_second_difference():
    h = 1e-3
    for z in ZETAS[::10]:
        d2 = (airy_eval(z + h).ai - 2 * airy_eval(z).ai + airy_eval(z - h).ai) / h**2
        assert abs(d2 - z * airy_eval(z).ai) <= 1e-6


def test_derivative_consistency():
    h = 1e-4
    for z in ZETAS[::15]:
        fd = (airy_eval(z + h).ai - airy_eval(z - h).ai) / (2 * h)
        assert abs(fd - airy_eval(z).ai_prime) <= 1e-7


def test_higher_derivatives():
    d = ai_derivatives(1.3, 5)
    v = airy_eval(1.3)
    assert d[2] == pytest.approx(1.3 * v.ai, rel=1e-14)
    assert d[3] == pytest.approx(v.ai + 1.3 * v.ai_prime, rel=1e-14)


def test_range():
    with pytest.raises(DomainError):
        airy_eval(41.0)
    with pytest.raises(DomainError):
        soft_edge_density(-41.0)


def test_sign_and_decay():
    assert all(airy_eval(z).ai > 0 for z in np.linspace(0, 8, 17))
    assert abs(airy_eval(5.0).ai) < 1e-3
    assert math.isfinite(airy_eval(5.0).ai * airy_eval(5.0).bi)


def test_density_values():
    assert soft_edge_density(0.0) == pytest.approx(airy_eval(0.0).ai_prime ** 2, rel=1e-14)
    assert soft_edge_density(0.0) == pytest.approx(0.0669875, abs=1e-7)
    assert soft_edge_density(-25.0) == pytest.approx(5 / math.pi, rel=0.02)


def test_density_derivative():
    h = 1e-5
    for z in (-4.0, -1.0, 0.0, 2.0):
        fd = (soft_edge_density(z + h) - soft_edge_density(z - h)) / (2 * h)
        assert abs(fd + airy_eval(z).ai ** 2) <= 1e-8
        assert soft_edge_density_prime(z) == pytest.approx(-airy_eval(z).ai ** 2, rel=1e-14)


def test_density_positive_and_monotone():
    z = np.linspace(-30, 15, 181)
    r = np.array([soft_edge_density(v) for v in z])
    assert np.all(r > 0)
    assert np.all(np.diff(r[z > 0]) < 0)
