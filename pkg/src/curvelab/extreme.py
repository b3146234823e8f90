"""Extreme-eigenvalue curvature: truncated-measure orthogonal polynomials and
small-N direct-quadrature oracles.

The measure is ``exp(-N x^2/2) dx`` restricted to ``x > lambda_min``. Its
monic orthogonal polynomials come from the Stieltjes procedure on a
Gauss-Legendre discretisation of the measure, in the variable
``u = sqrt(N) x``. The moment-based Chebyshev algorithm is available as a
cross-check; it loses roughly a factor 4 of accuracy per degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import DomainError, IllConditioned
from .numerics.quad import gauss_legendre
from .numerics.scaled import ScaledReal

__all__ = [
    "TruncatedMeasure",
    "TruncatedOPBasis",
    "truncated_moments",
    "truncated_op_basis",
    "zn_truncated",
    "charfn_extreme_direct",
    "K_MAX",
]

K_MAX = 15
J_MAX = 40


@dataclass(frozen=True)
class TruncatedMeasure:
    n_dim: int
    lambda_min: float
    moments: tuple  # ScaledReal m_j


def _unit_moments(j_max: int, n_dim: int, lam: float):
    """Moments of ``exp(-u^2/2)`` on ``u > a`` times ``exp(a^2/2)`` when ``a > 0``.

    Returns ``(values, log_factor)`` with true moments ``values * exp(log_factor)``.
    """
    a = lam * math.sqrt(n_dim)
    if a > 0:
        # factor exp(-a^2/2) out to avoid underflow
        log_f = -0.5 * a * a
        g = 1.0
        m0 = math.sqrt(math.pi / 2.0) * special.erfcx(a / math.sqrt(2.0))
    else:
        log_f = 0.0
        g = math.exp(-0.5 * a * a)
        m0 = math.sqrt(math.pi / 2.0) * math.erfc(a / math.sqrt(2.0))
    mu = np.zeros(j_max + 1)
    mu[0] = m0
    if j_max >= 1:
        mu[1] = g
    for j in range(1, j_max):
        # int_a^inf u^(j+1) e^{-u^2/2} = a^j e^{-a^2/2} + j mu_{j-1}
        mu[j + 1] = a**j * g + j * mu[j - 1]
    return mu, log_f


def truncated_moments(j_max: int, n_dim: int, lambda_min: float) -> TruncatedMeasure:
    """Moments ``m_j = int_{lambda_min}^inf x^j exp(-N x^2/2) dx`` for ``j <= j_max``."""
    if not 0 <= j_max <= J_MAX:
        raise DomainError(f"j_max must lie in [0, {J_MAX}]")
    if n_dim < 1:
        raise DomainError("n_dim must be positive")
    mu, log_f = _unit_moments(j_max, n_dim, lambda_min)
    out = []
    for j, v in enumerate(mu):
        # x^j = u^j N^(-j/2), dx = du / sqrt(N)
        log_s = log_f - 0.5 * (j + 1) * math.log(n_dim)
        if v == 0.0:
            out.append(ScaledReal.zero())
        else:
            out.append(ScaledReal(1 if v > 0 else -1, math.log(abs(v)) + log_s))
    return TruncatedMeasure(int(n_dim), float(lambda_min), tuple(out))


@dataclass(frozen=True)
class TruncatedOPBasis:
    """Recurrence ``pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1}`` and norms ``c_k^2``."""

    n_dim: int
    lambda_min: float
    a: np.ndarray
    b: np.ndarray  # b[0] unused (set to the total mass)
    norms_sq: tuple  # ScaledReal c_k^2
    residual: float

    @property
    def k_max(self) -> int:
        return self.a.size - 1

    def evaluate(self, x) -> np.ndarray:
        """``pi_0 .. pi_{k_max}`` at ``x``; shape ``(k_max+1, len(x))``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros((self.k_max + 1, x.size))
        out[0] = 1.0
        if self.k_max >= 1:
            out[1] = x - self.a[0]
        for k in range(1, self.k_max):
            out[k + 1] = (x - self.a[k]) * out[k] - self.b[k] * out[k - 1]
        return out


def _chebyshev(mu: np.ndarray, n: int):
    """Recurrence coefficients from ordinary moments ``mu[0..2n-1]``."""
    a = np.zeros(n)
    b = np.zeros(n)
    a[0] = mu[1] / mu[0]
    b[0] = mu[0]
    sig_prev = np.zeros(2 * n)
    sig = mu[: 2 * n].copy()
    for k in range(1, n):
        new = np.zeros(2 * n)
        for l in range(k, 2 * n - k):
            new[l] = sig[l + 1] - a[k - 1] * sig[l] - b[k - 1] * sig_prev[l]
        if not new[k] > 0:
            raise IllConditioned(f"Chebyshev algorithm lost positivity at degree {k}")
        a[k] = new[k + 1] / new[k] - sig[k] / sig[k - 1]
        b[k] = new[k] / sig[k - 1]
        sig_prev, sig = sig, new
    return a, b


def _nodes(a_u: float, count: int):
    """Gauss-Legendre discretisation of ``exp(-(u^2 - a_+^2)/2)`` on ``u > a_u``."""
    lo = max(a_u, -14.0)
    hi = max(a_u, 0.0) + 14.0
    x, w = gauss_legendre(count)
    u = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    shift = a_u * a_u if a_u > 0 else 0.0
    wt = 0.5 * (hi - lo) * w * np.exp(-0.5 * (u * u - shift))
    return u, wt


def _stieltjes(u, wt, n: int):
    a = np.zeros(n)
    b = np.zeros(n)
    p_prev = np.zeros_like(u)
    p = np.ones_like(u)
    nrm_prev = 1.0
    for k in range(n):
        nrm = float(np.sum(wt * p * p))
        a[k] = float(np.sum(wt * u * p * p)) / nrm
        b[k] = nrm if k == 0 else nrm / nrm_prev
        p_prev, p = p, (u - a[k]) * p - (b[k] if k else 0.0) * p_prev
        nrm_prev = nrm
    return a, b


def _gram(a_u: np.ndarray, b_u: np.ndarray, a_lo: float, k_max: int, nodes: int = 240):
    """Normalised Gram matrix of the polynomials on an independent node set."""
    u, wt = _nodes(a_lo, nodes)
    p = np.zeros((k_max + 1, u.size))
    p[0] = 1.0
    if k_max >= 1:
        p[1] = u - a_u[0]
    for k in range(1, k_max):
        p[k + 1] = (u - a_u[k]) * p[k] - b_u[k] * p[k - 1]
    g = (p * wt) @ p.T
    d = np.sqrt(np.diag(g))
    return g / np.outer(d, d)


def truncated_op_basis(k_max: int, n_dim: int, lambda_min: float, tol: float = 1e-8,
                       method: str = "stieltjes") -> TruncatedOPBasis:
    """Monic orthogonal polynomials of the truncated Gaussian measure up to ``k_max``.

    ``method`` is ``"stieltjes"`` (default) or ``"moments"`` (Chebyshev
    algorithm on the ordinary moments). The orthogonality residual is checked
    on a separate Gauss-Legendre rule; :class:`IllConditioned` is raised if it
    exceeds ``tol``.
    """
    if not 0 <= k_max <= K_MAX:
        raise DomainError(f"k_max must lie in [0, {K_MAX}]")
    n = k_max + 1
    a_lo = lambda_min * math.sqrt(n_dim)
    mu, log_f = _unit_moments(2 * n, n_dim, lambda_min)
    if method == "moments":
        a_u, b_u = _chebyshev(mu, n)
    elif method == "stieltjes":
        a_u, b_u = _stieltjes(*_nodes(a_lo, 200), n)
        b_u[0] = mu[0]  # exact mass from the closed form
    else:
        raise DomainError(f"unknown method {method!r}")
    gram = _gram(a_u, b_u, a_lo, k_max)
    resid = float(np.max(np.abs(gram - np.eye(n)))) if n > 1 else 0.0
    if resid > tol:
        raise IllConditioned(f"orthogonality residual {resid:.2e} above {tol:.0e} at k_max={k_max}")
    sq = math.sqrt(n_dim)
    a = a_u / sq
    b = b_u / n_dim
    # c_0^2 = m_0, c_k^2 = c_{k-1}^2 b_k
    log_c = math.log(b_u[0]) + log_f - 0.5 * math.log(n_dim)
    norms = [ScaledReal(1, log_c)]
    for k in range(1, n):
        log_c += math.log(b[k])
        norms.append(ScaledReal(1, log_c))
    b = b.copy()
    b[0] = norms[0].to_float()
    return TruncatedOPBasis(int(n_dim), float(lambda_min), a, b, tuple(norms), resid)


def zn_truncated(n_dim: int, lambda_min: float) -> ScaledReal:
    """``(N-1)! prod_{k=0}^{N-2} c_k(lambda_min)^2`` for the remaining N-1 levels."""
    if n_dim < 2 or n_dim - 2 > K_MAX:
        raise DomainError(f"zn_truncated supports 2 <= N <= {K_MAX + 2}")
    basis = truncated_op_basis(n_dim - 2, n_dim, lambda_min)
    out = ScaledReal(1, math.lgamma(n_dim))
    for c in basis.norms_sq:
        out = out * c
    return out


def _gap_weight_n2(d, n_dim):
    # after the centre-of-mass integral: d^2 exp(-N d^2 / 4)
    return d * d * np.exp(-0.25 * n_dim * d * d)


def charfn_extreme_direct(omega: float, n_dim: int, abs_tol: float = 1e-6) -> complex:
    """``< prod_n (l1 - ln) / (l1 - ln + i w N^(-2/3)) >`` over the GUE with ``l1 = min``.

    The average runs over the joint eigenvalue density
    ``prod |l_i - l_j|^2 exp(-N sum l^2 / 2)``. The integral over the common
    shift of all levels is Gaussian and done in closed form, leaving the gaps
    ``d_n = l_n - l1 > 0``: one quadrature dimension for N = 2 and two for N = 3.
    In the convention ``K(w) = <exp(-i w c)>`` for ``c = C N^(1/3) / y_typ``
    with independent complex-Gaussian overlaps, this equals the curvature
    characteristic function of the lowest level.
    """
    if n_dim not in (2, 3):
        raise DomainError("charfn_extreme_direct supports N = 2 and N = 3")
    w = float(omega)
    if w == 0.0:
        return 1.0 + 0.0j
    wp = w * n_dim ** (-2.0 / 3.0)

    def factor(d):
        return d / (d - 1j * wp)

    opts = {"epsabs": abs_tol * 1e-2, "epsrel": 1e-10, "limit": 400}
    if n_dim == 2:
        norm = integrate.quad(lambda d: _gap_weight_n2(d, 2), 0, np.inf, **opts)[0]
        re = integrate.quad(lambda d: _gap_weight_n2(d, 2) * factor(d).real, 0, np.inf, **opts)[0]
        im = integrate.quad(lambda d: _gap_weight_n2(d, 2) * factor(d).imag, 0, np.inf, **opts)[0]
        return complex(re, im) / norm

    def weight(d2, d3):
        # sum l^2 minus its shift-minimised value: (d2^2 + d3^2) - (d2 + d3)^2 / 3
        q = d2 * d2 + d3 * d3 - (d2 + d3) ** 2 / 3.0
        return (d2 * d3 * (d3 - d2)) ** 2 * math.exp(-0.5 * n_dim * q)

    upper = 12.0
    o2 = {"epsabs": abs_tol * 1e-2, "epsrel": 1e-9, "limit": 200}

    def dbl(fun):
        return integrate.nquad(fun, [[0, upper], [0, upper]], opts=[o2, o2])[0]

    norm = dbl(weight)
    re = dbl(lambda a, b: weight(a, b) * (factor(a) * factor(b)).real)
    im = dbl(lambda a, b: weight(a, b) * (factor(a) * factor(b)).imag)
    return complex(re, im) / norm
