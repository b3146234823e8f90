"""Finite-N orthogonal-polynomial machinery for the GUE weight exp(-N x^2/2).

Polynomial values are produced by the three-term recurrence in scaled form
(mantissa times ``exp(log_scale)``); Cauchy transforms come from the
single-integral representation

    h_k(z) = s (-i s)^k sqrt(N/2pi) int_0^inf q^k exp(-N q^2/2 + i s N z q) dq,

``s = sign(Im z)``, which follows from the definition
``h_k(z) = (2 pi i)^-1 int p_k(x) exp(-N x^2/2) / (x - z) dx`` via the
Fourier transform of ``p_k(x) exp(-N x^2/2)``. The q-integral is taken along
a path through the saddle point of its log-integrand, so the exponentially
large factors are carried analytically as a log scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .airy import airy_eval, soft_edge_density, soft_edge_density_prime
from .bulk import semicircle_density
from .errors import AsymmetricGrid, DomainError, EdgeProximity, NonHermitianSamples, RealAxisError
from .grids import DistributionGrid
from .kernels import hermite_tail
from .numerics.quad import QuadSpec, quad_finite
from .numerics.scaled import ScaledComplex, ScaledReal

__all__ = [
    "HermiteContext",
    "KernelSet",
    "monic_hermite",
    "hermite_values",
    "hermite_norm_sq",
    "cauchy_transform",
    "kernel_set",
    "char_fn_finite",
    "charfn_omega_grid",
    "invert_char_fn",
    "density_finite",
    "asymptotics_bulk",
    "asymptotics_edge",
]

_Q_SPEC = QuadSpec(abs_tol=1e-15, rel_tol=1e-13, max_subdivisions=6000)


@dataclass(frozen=True)
class HermiteContext:
    """Matrix size ``n_dim``; the weight is fixed to ``exp(-N x**2 / 2)``."""

    n_dim: int

    def __post_init__(self):
        if int(self.n_dim) != self.n_dim or self.n_dim < 2:
            raise DomainError("n_dim must be an integer >= 2")

    @property
    def N(self) -> int:
        return int(self.n_dim)


# polynomials ---------------------------------------------------------------

def hermite_values(x, ctx: HermiteContext, k_max: int):
    """``(mant, log_scale)`` for ``p_{k_max}, ..., p_{k_max-3}`` at points ``x``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return hermite_tail(x, ctx.N, int(k_max))


def monic_hermite(k: int, ctx: HermiteContext, x: float, derivative: bool = False):
    """Monic Hermite polynomial ``p_k(x)`` as a :class:`ScaledReal`.

    With ``derivative=True`` returns ``(p_k, p_k')`` using ``p_k' = k p_{k-1}``.
    """
    if k < 0 or k > 4 * ctx.N:
        raise DomainError(f"degree {k} outside [0, 4N]")
    mant, ls = hermite_values([x], ctx, k)
    val = ScaledReal.from_float(mant[0, 0]).ldexp_e(ls[0])
    if not derivative:
        return val
    der = ScaledReal.from_float(k * mant[1, 0]).ldexp_e(ls[0]) if k >= 1 else ScaledReal.zero()
    return val, der


def _log_norm_sq(k: int, N: int) -> float:
    return math.lgamma(k + 1) - k * math.log(N) + 0.5 * math.log(2.0 * math.pi / N)


def hermite_norm_sq(k: int, ctx: HermiteContext) -> ScaledReal:
    """``c_k^2 = k! / N^k * sqrt(2 pi / N)``."""
    if k < 0:
        raise DomainError("k must be non-negative")
    return ScaledReal(1, _log_norm_sq(int(k), ctx.N))


# Cauchy transforms ---------------------------------------------------------

def _saddle(k: int, N: int, w: complex) -> complex:
    disc = np.sqrt(complex(4.0 * k / N) - w * w)
    roots = [(1j * w + disc) / 2.0, (1j * w - disc) / 2.0]
    roots.sort(key=lambda q: (-round(q.real, 12), abs(q)))
    q = roots[0]
    if abs(q) < 1e-300:
        q = roots[1]
    return q


def _logf(q, k, N, w):
    return k * np.log(q) - 0.5 * N * q * q + 1j * N * w * q


def _path_for(k: int, N: int, w: complex):
    """Saddle point, descent direction and ray length for one argument."""
    q0 = _saddle(k, N, w)
    if abs(q0) < 1e-12 or (k == 0 and q0.real <= 0.0):
        # maximum sits at the endpoint; step in by the decay length
        q0 = complex(1.0 / (math.sqrt(N) + N * abs(w)), 0.0)
        scale = abs(q0)
    else:
        scale = 1.0 / math.sqrt(N)
    ref = float(np.real(_logf(q0, k, N, w)))
    ts = scale * np.array([0.25, 0.5, 1.0, 2.0, 4.0, 8.0])
    best, best_score = 0.0, math.inf
    for theta in np.linspace(-0.7, 0.7, 29):
        d = complex(math.cos(theta), math.sin(theta))
        vals = np.real(_logf(q0 + ts * d, k, N, w)) - ref
        score = max(vals.max(), 0.0) * 100.0 + vals[-1]
        if score < best_score:
            best, best_score = theta, score
    d = complex(math.cos(best), math.sin(best))
    t = scale
    while np.real(_logf(q0 + t * d, k, N, w)) - ref > -46.0 and t < 1e4:
        t *= 1.3
    return q0, d, t, ref


def _cauchy_scaled(ks, N: int, z: np.ndarray, side: Optional[np.ndarray] = None):
    """Scaled Cauchy transforms for degrees ``ks`` at complex points ``z``.

    Returns ``(mant, log_scale)`` with ``mant`` of shape ``(len(ks), len(z))``.
    ``side`` gives the sign used for real ``z`` (the boundary value from
    above for +1, from below for -1).
    """
    ks = np.atleast_1d(np.asarray(ks, dtype=int))
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    s = np.sign(z.imag)
    if side is not None:
        s = np.where(s == 0, side, s)
    if np.any(s == 0):
        raise RealAxisError("Cauchy transform needs Im z != 0")
    w = s * z  # Im w >= 0
    k_ref = int(ks.max())
    params = [_path_for(k_ref, N, wi) for wi in w]
    q0 = np.array([p[0] for p in params])
    d = np.array([p[1] for p in params])
    T = np.array([p[2] for p in params])
    ref = np.array([p[3] for p in params])
    kcol = ks[:, None, None].astype(float)

    def integrand(q, dq):
        # q, dq: (nz, n)
        logq = np.log(q)
        base = -0.5 * N * q * q + 1j * N * w[:, None] * q - ref[:, None]
        expo = np.where(kcol == 0.0, 0.0, kcol * logq[None]) + base[None]
        return np.exp(expo) * dq[None]

    def leg_a(u):
        q = q0[:, None] * u[None, :]
        return integrand(q, np.broadcast_to(q0[:, None], q.shape))

    def leg_b(u):
        t = T[:, None] * u[None, :]
        q = q0[:, None] + t * d[:, None]
        return integrand(q, np.broadcast_to((T * d)[:, None], q.shape))

    g = quad_finite(leg_a, 0.0, 1.0, _Q_SPEC) + quad_finite(leg_b, 0.0, 1.0, _Q_SPEC)
    phase = s[None, :] * (-1j * s[None, :]) ** ks[:, None]
    mant = phase * math.sqrt(N / (2.0 * math.pi)) * g
    return mant, ref


def cauchy_transform(n_offset: int, ctx: HermiteContext, z: complex) -> ScaledComplex:
    """Cauchy transform ``h_{N+n_offset}(z)`` of the monic Hermite polynomial.

    Raises :class:`RealAxisError` for real ``z``.
    """
    k = ctx.N + int(n_offset)
    if k < 0:
        raise DomainError("degree N + n_offset must be non-negative")
    z = complex(z)
    if z.imag == 0.0:
        raise RealAxisError("Cauchy transform needs Im z != 0")
    mant, ls = _cauchy_scaled([k], ctx.N, np.array([z]))
    return ScaledComplex.from_complex(mant[0, 0]) * ScaledReal(1, float(ls[0]))


# kernels -------------------------------------------------------------------

@dataclass(frozen=True)
class KernelSet:
    w1: ScaledReal
    w2: ScaledReal
    f1: ScaledComplex
    f2: ScaledComplex
    at_mu: float
    at_eps: complex
    n_dim: int
    log_norm_sq: float  # log c_{N-1}^2

    def ratio_w2_w1(self) -> float:
        return (self.w2 / self.w1).to_float()

    def f_tilde(self) -> tuple[complex, complex]:
        """``2 pi i F / c_{N-1}^2`` for F1 and F2 as ordinary complex numbers."""
        out = []
        for f in (self.f1, self.f2):
            out.append(2j * math.pi * f.scaled_to(self.log_norm_sq))
        return out[0], out[1]


def _poly_block(mu: float, N: int):
    mant, ls = hermite_tail(np.array([float(mu)]), N, N)
    return mant[:, 0], float(ls[0])


def _w_pair(P, N):
    w1 = N * P[1] ** 2 - (N - 1) * P[0] * P[2]
    w2 = N * (N - 1) * P[2] * P[1] - (N - 1) * (N - 2) * P[0] * P[3]
    return w1, w2


def kernel_set(mu: float, eps: complex, ctx: HermiteContext) -> KernelSet:
    """Kernels ``W1, W2`` at ``mu`` and ``F1, F2`` at ``(mu, eps)``."""
    eps = complex(eps)
    if eps.imag == 0.0:
        raise RealAxisError("kernel_set needs Im eps != 0")
    N = ctx.N
    P, lp = _poly_block(mu, N)
    w1, w2 = _w_pair(P, N)
    hm, lh = _cauchy_scaled([N, N - 1], N, np.array([eps]))
    h_n, h_nm1 = hm[0, 0], hm[1, 0]
    f1 = h_n * P[1] - h_nm1 * P[0]
    f2 = (N - 1) * h_n * P[2] - N * h_nm1 * P[1]
    sc = ScaledReal(1, lp + float(lh[0]))
    return KernelSet(
        w1=ScaledReal.from_float(w1).ldexp_e(2 * lp),
        w2=ScaledReal.from_float(w2).ldexp_e(2 * lp),
        f1=ScaledComplex.from_complex(f1) * sc,
        f2=ScaledComplex.from_complex(f2) * sc,
        at_mu=float(mu),
        at_eps=eps,
        n_dim=N,
        log_norm_sq=_log_norm_sq(N - 1, N),
    )


def _edge_zeta(mu: float, N: int) -> float:
    return (mu - 2.0) * N ** (2.0 / 3.0)


def char_fn_finite(omega, mu: float, ctx: HermiteContext, frame: str = "bulk"):
    """Exact finite-N characteristic function ``K(w) = <exp(-i w c)>``.

    ``frame="bulk"`` uses ``eps = mu + i w y / N`` with ``y = 1/(pi rho(mu))``
    (c is the curvature in units of the bulk typical value). ``frame="edge"``
    uses ``eps = mu + i w / N**(2/3)`` and multiplies by
    ``exp(i w N**(1/3))``, giving the characteristic function of the shifted
    and scaled curvature. The value at ``w = 0`` is computed as the boundary
    limit from above (it equals 1 by the Christoffel-Darboux identity).
    """
    N = ctx.N
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    if frame == "bulk":
        if abs(mu) >= 2.0:
            raise DomainError("bulk frame needs |mu| < 2")
        step = 1.0 / (math.pi * semicircle_density(mu) * N)
    elif frame == "edge":
        step = N ** (-2.0 / 3.0)
    else:
        raise DomainError(f"unknown frame {frame!r}")
    P, lp = _poly_block(mu, N)
    w1, w2 = _w_pair(P, N)
    if not w1 > 0:
        raise DomainError("W1 must be positive on the real axis")
    ratio = w2 / (2.0 * w1)
    de = 1j * om * step
    eps = mu + de
    hm, lh = _cauchy_scaled([N, N - 1], N, eps, side=np.ones(om.size))
    logc = _log_norm_sq(N - 1, N)
    fac = 2j * math.pi * np.exp(lh + lp - logc)
    f1 = fac * (hm[0] * P[1] - hm[1] * P[0])
    f2 = fac * ((N - 1) * hm[0] * P[2] - N * hm[1] * P[1])
    K = f1 * (1.0 - de * ratio) + de * f2
    if frame == "edge":
        K = K * np.exp(1j * om * N ** (1.0 / 3.0))
    return complex(K[0]) if np.ndim(omega) == 0 else K


def charfn_omega_grid(mu: float, ctx: HermiteContext, d_omega: float, frame: str = "bulk",
                      omega_max: float = 40.0, floor: float = 1e-12, limit: float = 400.0):
    """Non-negative frequency grid extended until ``|K| < floor``.

    Returns ``(omega, K)`` with ``omega = 0, d, 2d, ...``.
    """
    n = int(round(omega_max / d_omega))
    om = np.arange(n + 1) * d_omega
    K = char_fn_finite(om, mu, ctx, frame)
    while abs(K[-1]) > floor and om[-1] < limit:
        extra = om[-1] + np.arange(1, n // 2 + 2) * d_omega
        om = np.concatenate([om, extra])
        K = np.concatenate([K, char_fn_finite(extra, mu, ctx, frame)])
    return om, K


def invert_char_fn(omega, samples, c=None, tol: float = 1e-9) -> DistributionGrid:
    """Trapezoid Fourier inversion ``P(c) = (2 pi)^-1 int K(w) exp(i w c) dw``.

    ``omega`` must be a uniform grid symmetric about zero (or start at zero,
    in which case Hermitian symmetry supplies negative frequencies). Raises
    :class:`AsymmetricGrid` or :class:`NonHermitianSamples` on bad input.
    """
    om = np.asarray(omega, dtype=float)
    K = np.asarray(samples, dtype=complex)
    if om.shape != K.shape or om.ndim != 1 or om.size < 3:
        raise AsymmetricGrid("omega and samples must be equal-length 1-D arrays")
    steps = np.diff(om)
    d = steps.mean()
    if not np.allclose(steps, d, rtol=1e-9, atol=0.0):
        raise AsymmetricGrid("omega grid must be uniform")
    if abs(om[0]) < 1e-14 * max(1.0, abs(om[-1])):
        half_om, half_K = om, K
        if abs(K[0].imag) > tol * max(1.0, abs(K[0])):
            raise NonHermitianSamples("K(0) must be real")
    else:
        if not np.allclose(om, -om[::-1], rtol=0, atol=1e-12 * abs(om).max()):
            raise AsymmetricGrid("omega grid must be symmetric about zero")
        if np.max(np.abs(K - np.conj(K[::-1]))) > tol * max(1.0, np.abs(K).max()):
            raise NonHermitianSamples("samples must satisfy K(-w) = conj K(w)")
        mid = om.size // 2
        if om.size % 2 == 0:
            raise AsymmetricGrid("symmetric grid must contain omega = 0")
        half_om, half_K = om[mid:], K[mid:]
    if c is None:
        c = np.linspace(-10.0, 10.0, 401)
    c = np.asarray(c, dtype=float)
    w = np.full(half_om.size, d)
    w[0] = 0.5 * d
    w[-1] = 0.5 * d
    dens = np.real(np.exp(1j * np.outer(c, half_om)) * half_K[None, :]) @ w / math.pi
    grid = DistributionGrid(c, dens, {"d_omega": float(d), "omega_max": float(half_om[-1])})
    grid.meta["normalization_residual"] = grid.normalization_residual
    return grid


def density_finite(mu, ctx: HermiteContext):
    """Finite-N mean eigenvalue density (unit mass).

    ``rho_N(mu) = exp(-N mu^2/2) W1(mu, mu) / (N c_{N-1}^2)``, i.e. the
    normalised Christoffel-Darboux sum ``N^-1 sum_k p_k^2 w / c_k^2``.
    """
    N = ctx.N
    mu_arr = np.atleast_1d(np.asarray(mu, dtype=float))
    mant, ls = hermite_tail(mu_arr, N, N)
    w1 = N * mant[1] ** 2 - (N - 1) * mant[0] * mant[2]
    logc = _log_norm_sq(N - 1, N)
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(w1)) + 2 * ls - 0.5 * N * mu_arr**2 - logc - math.log(N)
    out = np.sign(w1) * np.exp(log_abs)
    out = np.where(w1 == 0.0, 0.0, out)
    return float(out[0]) if np.ndim(mu) == 0 else out


# asymptotic approximations -------------------------------------------------

def _rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else math.inf


def _bulk_compare(mus, omega: float, N: int):
    """Exact and approximate bulk quantities at an array of positions."""
    mus = np.asarray(mus, dtype=float)
    phi = np.arccos(mus / 2.0)
    theta = phi - 0.5 * np.sin(2.0 * phi)
    rho = semicircle_density(mus)
    y = 1.0 / (math.pi * rho)
    s = 1.0 if omega > 0 else -1.0

    mant, lp = hermite_tail(mus, N, N)
    log_env = 0.5 * N * np.cos(2.0 * phi)
    env = np.sqrt(2.0 / np.sin(phi))
    pn_approx = env * np.cos(0.5 * phi - 0.25 * math.pi + N * theta)
    pn_exact = mant[0] * np.exp(lp - log_env)
    w1 = N * mant[1] ** 2 - (N - 1) * mant[0] * mant[2]
    w1_exact = w1 * np.exp(2 * lp - 2 * log_env)
    w1_approx = 2.0 * N * np.sin(phi)

    eps = mus + 1j * omega * y / N
    hm, lh = _cauchy_scaled([N, N - 1], N, eps)
    fac = np.exp(lh + lp + N)  # F in units of exp(-N)
    f1_exact = fac * (hm[0] * mant[1] - hm[1] * mant[0])
    f2_exact = fac * ((N - 1) * hm[0] * mant[2] - N * hm[1] * mant[1])
    f1_approx = -1j * np.exp(-1j * omega * mus * y / 2.0 - math.pi * rho * abs(omega) * y)
    f2_approx = N * (mus / 2.0 - 1j * s * math.pi * rho) * f1_approx
    r_exact = f2_exact / f1_exact
    r_approx = f2_approx / f1_approx
    return {
        "p_N": (pn_approx, pn_exact, np.abs(pn_approx - pn_exact) / env),
        "W1": (w1_approx, w1_exact, np.abs(w1_approx - w1_exact) / np.abs(w1_exact)),
        "F1": (f1_approx, f1_exact, np.abs(f1_approx - f1_exact) / np.abs(f1_exact)),
        "F2": (f2_approx, f2_exact, np.abs(f2_approx - f2_exact) / np.abs(f2_exact)),
        "F2_over_F1": (r_approx, r_exact, np.abs(r_approx - r_exact) / np.abs(r_exact)),
    }


def asymptotics_bulk(mu: float, omega: float, ctx: HermiteContext,
                     window: float = 0.05, window_points: int = 41) -> dict:
    """Large-N bulk approximations against the exact finite-N values.

    Each entry holds ``approx``, ``exact`` and ``rel_err`` at ``mu``, plus
    ``window_err``: the largest relative error over ``[mu - window, mu + window]``.
    The pointwise error carries an O(1/N) factor oscillating with ``N theta(mu)``,
    so only the window maximum (the error envelope) is monotone in N.
    ``p_N`` is compared relative to its envelope
    ``sqrt(2/sin(phi)) exp(N cos(2 phi)/2)``; ``W1`` in units of
    ``exp(N cos 2 phi)``; ``F1, F2`` in units of ``exp(-N)`` and in the sign
    convention of :func:`cauchy_transform`, for which
    ``F1 ~ -i exp(-i w x y/2 - pi rho |w| y)``.
    """
    N = ctx.N
    if abs(mu) + window >= 2.0 - N ** (-1.0 / 3.0):
        raise EdgeProximity(f"mu={mu} too close to the spectral edge for N={N}")
    if omega == 0.0:
        raise DomainError("omega must be nonzero")
    mus = np.concatenate([[mu], np.linspace(mu - window, mu + window, window_points)])
    data = _bulk_compare(mus, omega, N)
    out = {"N": N, "mu": mu, "omega": omega, "window": window}
    for name, (ap, ex, err) in data.items():
        out[name] = {
            "approx": complex(ap[0]) if np.iscomplexobj(ap) else float(ap[0]),
            "exact": complex(ex[0]) if np.iscomplexobj(ex) else float(ex[0]),
            "rel_err": float(err[0]),
            "window_err": float(err[1:].max()),
        }
    return out


def asymptotics_edge(zeta: float, omega: float, ctx: HermiteContext) -> dict:
    """Large-N soft-edge approximations against exact finite-N values.

    Uses ``A_N = sqrt(2 pi) N^(1/6) e^(N/2)``, ``B_N = -N^(1/6) e^(-3N/2)/sqrt(2 pi)``
    at ``x = 2 + zeta/N^(2/3)`` and ``eps = x + i w / N^(2/3)``. All scale factors
    are applied in log form.
    """
    from .softedge import _alpha_signed

    if abs(zeta) > 8.0:
        raise DomainError("asymptotics_edge supports |zeta| <= 8")
    if omega == 0.0:
        raise DomainError("omega must be nonzero")
    N = ctx.N
    n13 = N ** (1.0 / 3.0)
    x = 2.0 + zeta / N ** (2.0 / 3.0)
    v = airy_eval(zeta)
    s = 1.0 if omega > 0 else -1.0
    rho = soft_edge_density(zeta)
    rho_p = soft_edge_density_prime(zeta)

    P, lp = _poly_block(x, N)
    log_a = 0.5 * math.log(2.0 * math.pi) + math.log(N) / 6.0 + 0.5 * N + n13 * zeta
    pn_exact = P[0] * math.exp(lp - log_a)
    pnm1_exact = P[1] * math.exp(lp - log_a)
    pn_approx = v.ai
    pnm1_approx = v.ai + v.ai_prime / n13

    w1, w2 = _w_pair(P, N)
    ratio_exact = w2 / (2.0 * w1)
    ratio_approx = N + N ** (2.0 / 3.0) * rho_p / (2.0 * rho)
    log_w = math.log(2.0 * math.pi) + (2.0 / 3.0) * math.log(N) + N + 2.0 * n13 * zeta
    w1_exact = w1 * math.exp(2 * lp - log_w)
    w1_approx = rho

    eps = x + 1j * omega / N ** (2.0 / 3.0)
    hm, lh = _cauchy_scaled([N], N, np.array([eps]))
    a, ad = _alpha_signed(zeta, np.array([omega]))
    a, ad = complex(a[0]), complex(ad[0])
    # f_N ~ s B_N exp(-N^(1/3) (zeta + i w)) alpha; B_N < 0
    log_b = math.log(N) / 6.0 - 1.5 * N - 0.5 * math.log(2.0 * math.pi) - n13 * zeta
    fn_exact = complex(hm[0, 0]) * np.exp(lh[0] - log_b) * np.exp(1j * n13 * omega)
    fn_approx = s * a  # sign follows cauchy_transform

    ks = kernel_set(x, eps, ctx)
    ph = np.exp(1j * n13 * omega)
    f1_exact = ks.f1.scaled_to(-N) * ph
    f2_exact = ks.f2.scaled_to(-N) * ph
    f1_pub = s * (v.ai * ad - v.ai_prime * a)
    f2_pub = N * s * ((v.ai * ad - v.ai_prime * a) + (zeta * v.ai * a - ad * v.ai_prime) / n13)
    # opposite overall sign to the published forms (see cauchy_transform)
    f1_approx, f2_approx = -f1_pub, -f2_pub
    return {
        "N": N, "zeta": zeta, "omega": omega,
        "p_N": {"approx": pn_approx, "exact": pn_exact, "rel_err": _rel(pn_approx, pn_exact)},
        "p_N_minus_1": {"approx": pnm1_approx, "exact": pnm1_exact, "rel_err": _rel(pnm1_approx, pnm1_exact)},
        "f_N": {"approx": complex(fn_approx), "exact": complex(fn_exact),
                "rel_err": abs(fn_approx - fn_exact) / abs(fn_exact)},
        "W1": {"approx": w1_approx, "exact": w1_exact, "rel_err": _rel(w1_approx, w1_exact)},
        "W2_over_2W1": {"approx": ratio_approx, "exact": ratio_exact,
                        "rel_err_correction": _rel(ratio_approx - N, ratio_exact - N)},
        "F1": {"approx": complex(f1_approx), "exact": complex(f1_exact),
               "rel_err": abs(f1_approx - f1_exact) / abs(f1_exact)},
        "F2": {"approx": complex(f2_approx), "exact": complex(f2_exact),
               "rel_err": abs(f2_approx - f2_exact) / abs(f2_exact)},
        "F2_over_NF1": {"approx": 1.0, "exact": complex(f2_exact / (N * f1_exact)),
                        "rel_err": abs(1.0 - f2_exact / (N * f1_exact))},
    }
