"""Soft-edge curvature density and its building blocks.

Conventions: ``zeta`` is the soft-edge coordinate (``x = 2 + zeta/N**(2/3)``)
and ``c`` the shifted-and-scaled curvature. Every function accepts a scalar
``zeta`` and a scalar or array ``c`` (or ``omega``) and vectorises over it.

The auxiliary functions gamma and beta are full-line integrals of
``exp(i*(t*zeta + t**3/3))`` against a rational factor. They are evaluated on
the lifted contour of :mod:`curvelab.contour`; poles on the imaginary axis that
lie between the real axis and the lifted line contribute explicit residues::

    beta(c)  = (1/pi) Re int_C e^{i phi}/(c + i t) dt + [c < h] e^{-c zeta + c^3/3}
    gamma(c) = (1/pi) Re int_C e^{i phi}/(c^2 + t^2) dt + [|c| < h] e^{-|c| zeta + |c|^3/3}/(2|c|)

The beta form is continuous through ``c = 0`` and agrees with the Laplace
integrals of ``Ai`` used as an independent check in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .airy import airy_eval, ai_derivatives, soft_edge_density, _check_range
from .contour import height_groups, laplace_line, half_line, right_branch
from .errors import DomainError, SingularInput
from .grids import DistributionGrid
from .numerics.quad import QuadSpec, quad_finite

__all__ = [
    "EdgeIngredients",
    "gamma_fn",
    "gamma_dzeta",
    "delta_fn",
    "beta_fn",
    "beta_dc",
    "nu_fn",
    "nu_dc",
    "ingredients",
    "pdf_edge_I",
    "pdf_edge_II",
    "pdf_edge_parts",
    "pdf_edge",
    "tail_coefficient",
    "alpha_fn",
    "char_fn_edge",
    "edge_limit_forms",
    "edge_normalization",
    "fit_b_coefficient",
    "mode_location",
]


def _as_array(c):
    arr = np.atleast_1d(np.asarray(c, dtype=float))
    return arr, np.ndim(c) == 0


def _ret(arr, scalar):
    return float(arr[0]) if scalar else arr


def _full_line(c_poles, zeta, make_r, residue):
    """Shared driver: contour part by height group plus enclosed residues.

    ``make_r(sub)`` builds the rational factor for the sub-array ``sub`` of
    the parameter; ``residue(sub, h)`` returns the residue contribution for
    that height (zero where no pole is enclosed).
    """
    param, poles = c_poles
    out = np.empty(param.shape, dtype=float)
    for h, mask in height_groups(poles, zeta):
        sub = param[mask]
        val = right_branch(make_r(sub), zeta, h)
        out[mask] = np.real(val) / math.pi + residue(sub, h)
    return out


def _exp_cubic(c, zeta):
    return np.exp(-c * zeta + c**3 / 3.0)


def _masked_exp_cubic(mask, c, zeta):
    """``exp(-c*zeta + c**3/3)`` where ``mask`` holds, zero elsewhere."""
    out = np.zeros(np.shape(c))
    out[mask] = _exp_cubic(np.asarray(c)[mask], zeta)
    return out


# gamma and delta -----------------------------------------------------------

def gamma_fn(c, zeta: float):
    """``(1/pi) int_0^inf cos(t*zeta + t**3/3)/(c**2 + t**2) dt``.

    Raises :class:`SingularInput` at ``c == 0`` where the integral diverges.
    """
    zeta = _check_range(zeta)
    arr, scalar = _as_array(c)
    if np.any(arr == 0.0):
        raise SingularInput("gamma diverges at c = 0")
    ac = np.abs(arr)

    def make_r(sub):
        s2 = sub[:, None] ** 2
        return lambda t: 1.0 / (s2 + t[None, :] ** 2)

    def residue(sub, h):
        a = np.abs(sub)
        return _masked_exp_cubic(a < h, a, zeta) / (2.0 * a)

    return _ret(_full_line((arr, ac), zeta, make_r, residue), scalar)


def gamma_dzeta(c, zeta: float):
    """Derivative of :func:`gamma_fn` with respect to ``zeta``."""
    zeta = _check_range(zeta)
    arr, scalar = _as_array(c)
    if np.any(arr == 0.0):
        raise SingularInput("gamma diverges at c = 0")

    def make_r(sub):
        s2 = sub[:, None] ** 2
        return lambda t: 1j * t[None, :] / (s2 + t[None, :] ** 2)

    def residue(sub, h):
        a = np.abs(sub)
        return -0.5 * _masked_exp_cubic(a < h, a, zeta)

    return _ret(_full_line((arr, np.abs(arr)), zeta, make_r, residue), scalar)


def delta_fn(c, zeta: float):
    """``theta(-c) * exp(-c*zeta + c**3/3)`` with ``theta(0) = 0``."""
    arr, scalar = _as_array(c)
    out = _masked_exp_cubic(arr < 0.0, arr, float(zeta))
    return _ret(out, scalar)


# beta ----------------------------------------------------------------------

def beta_fn(c, zeta: float):
    """The combination ``c*gamma - d(gamma)/d(zeta) + delta``, finite for all c.

    For ``c > 0`` it equals ``int_0^inf exp(-c s) Ai(zeta - s) ds`` and it
    solves ``d(beta)/d(zeta) + c*beta = Ai(zeta)``.
    """
    zeta = _check_range(zeta)
    arr, scalar = _as_array(c)

    def make_r(sub):
        col = sub[:, None]
        return lambda t: 1.0 / (col + 1j * t[None, :])

    def residue(sub, h):
        return _masked_exp_cubic(sub < h, sub, zeta)

    return _ret(_full_line((arr, arr), zeta, make_r, residue), scalar)


def beta_dc(c, zeta: float):
    """Partial derivative of :func:`beta_fn` with respect to ``c``."""
    zeta = _check_range(zeta)
    arr, scalar = _as_array(c)

    def make_r(sub):
        col = sub[:, None]
        return lambda t: -1.0 / (col + 1j * t[None, :]) ** 2

    def residue(sub, h):
        return (sub**2 - zeta) * _masked_exp_cubic(sub < h, sub, zeta)

    return _ret(_full_line((arr, arr), zeta, make_r, residue), scalar)


def _beta_and_dc(arr, zeta):
    """beta and d(beta)/dc from a single contour pass."""

    def make_r(sub):
        col = sub[:, None]

        def r(t):
            inv = 1.0 / (col + 1j * t[None, :])
            return np.stack([inv, -inv * inv])

        return r

    out = np.empty((2,) + arr.shape)
    for h, mask in height_groups(arr, zeta):
        sub = arr[mask]
        val = np.real(right_branch(make_r(sub), zeta, h)) / math.pi
        e = _masked_exp_cubic(sub < h, sub, zeta)
        out[0, mask] = val[0] + e
        out[1, mask] = val[1] + (sub**2 - zeta) * e
    return out[0], out[1]


# nu and assembled densities ------------------------------------------------

def _log_density_slope(zeta: float) -> float:
    """``rho'/(2 rho)`` for the soft-edge density."""
    v = airy_eval(zeta)
    return -(v.ai**2) / (2.0 * soft_edge_density(zeta))


def nu_fn(c, zeta: float):
    """``c*Ai' + Ai'' - (c*Ai + Ai') * rho'/(2 rho)`` with ``Ai'' = zeta*Ai``."""
    zeta = _check_range(zeta)
    v = airy_eval(zeta)
    k = _log_density_slope(zeta)
    arr, scalar = _as_array(c)
    out = arr * v.ai_prime + zeta * v.ai - (arr * v.ai + v.ai_prime) * k
    return _ret(out, scalar)


def nu_dc(zeta: float) -> float:
    """``d(nu)/dc = Ai' - Ai * rho'/(2 rho)`` (independent of c)."""
    zeta = _check_range(zeta)
    v = airy_eval(zeta)
    return v.ai_prime - v.ai * _log_density_slope(zeta)


@dataclass(frozen=True)
class EdgeIngredients:
    gamma: float
    gamma_dzeta: float
    delta: float
    beta: float
    beta_dc: float
    nu: float


def ingredients(c: float, zeta: float) -> EdgeIngredients:
    """All building blocks at one point (gamma entries are NaN at c = 0)."""
    g = gamma_fn(c, zeta) if c != 0.0 else math.nan
    gd = gamma_dzeta(c, zeta) if c != 0.0 else math.nan
    return EdgeIngredients(
        gamma=g,
        gamma_dzeta=gd,
        delta=delta_fn(c, zeta),
        beta=beta_fn(c, zeta),
        beta_dc=beta_dc(c, zeta),
        nu=nu_fn(c, zeta),
    )


def pdf_edge_parts(c, zeta: float):
    """Return ``(P_I, P_II)`` on ``c``; their sum is the curvature density."""
    zeta = _check_range(zeta)
    arr, scalar = _as_array(c)
    v = airy_eval(zeta)
    b, bdc = _beta_and_dc(arr, zeta)
    p1 = -b * (arr * v.ai + v.ai_prime) + v.ai**2
    p2 = -(bdc * nu_fn(arr, zeta) + b * nu_dc(zeta))
    if scalar:
        return float(p1[0]), float(p2[0])
    return p1, p2


def pdf_edge_I(c, zeta: float):
    """First piece ``-beta*(c*Ai + Ai') + Ai**2`` (integrates to one)."""
    zeta = _check_range(zeta)
    arr, scalar = _as_array(c)
    v = airy_eval(zeta)
    out = -beta_fn(arr, zeta) * (arr * v.ai + v.ai_prime) + v.ai**2
    return _ret(out, scalar)


def pdf_edge_II(c, zeta: float):
    """Second piece ``-d/dc (beta * nu)`` (integrates to zero)."""
    zeta = _check_range(zeta)
    arr, scalar = _as_array(c)
    b, bdc = _beta_and_dc(arr, zeta)
    out = -(bdc * nu_fn(arr, zeta) + b * nu_dc(zeta))
    return _ret(out, scalar)


def pdf_edge(c, zeta: float):
    """Soft-edge density of the shifted-and-scaled curvature at ``zeta``."""
    p1, p2 = pdf_edge_parts(c, zeta)
    return p1 + p2


def tail_coefficient(zeta: float) -> float:
    """Coefficient ``A`` of the ``A / c**4`` decay of :func:`pdf_edge`."""
    zeta = _check_range(zeta)
    v = airy_eval(zeta)
    rho = soft_edge_density(zeta)
    rho_p = -(v.ai**2)
    return -2.0 * zeta * rho + 1.5 * v.ai**2 * rho_p / rho - 4.0 * v.ai * v.ai_prime


# characteristic-function route --------------------------------------------

def _alpha_pair(zeta: float, w: np.ndarray):
    """alpha and d(alpha)/d(zeta) for positive frequencies ``w``."""
    col = w[:, None]

    def r(t):
        e = np.exp(-col * t[None, :])
        return np.stack([e, 1j * t[None, :] * e])

    def g(tau):
        e = np.exp(1j * col * tau[None, :])
        return np.stack([e, tau[None, :] * e])

    h = half_line(r, zeta)
    lap = laplace_line(g, zeta)
    return h[0] + 1j * lap[0], h[1] + 1j * lap[1]


def _alpha_signed(zeta: float, om: np.ndarray):
    if np.any(om == 0.0):
        raise SingularInput("alpha is singular at omega = 0")
    a, ad = _alpha_pair(zeta, np.abs(om))
    neg = om < 0
    a[neg] = np.conj(a[neg])
    ad[neg] = np.conj(ad[neg])
    return a, ad


def alpha_fn(zeta: float, omega):
    """Frequency-domain kernel

    ``alpha = int_0^inf e^{i s (t zeta + t^3/3)} e^{-|w| t} dt
    + i s int_0^inf e^{t zeta - t^3/3} e^{i w t} dt`` with ``s = sign(w)``.
    """
    zeta = _check_range(zeta)
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    a, _ = _alpha_signed(zeta, om)
    return complex(a[0]) if np.ndim(omega) == 0 else a


def char_fn_edge(omega, zeta: float):
    """Characteristic function ``K(w) = int P(c) e^{-i w c} dc`` at the soft edge.

    Built as ``i * (s*Phi + i*|w|*(Psi - Phi*rho'/(2 rho)))`` with
    ``Phi = alpha*Ai' - alpha'*Ai`` and ``Psi = alpha*Ai'' - alpha'*Ai'``;
    the value at ``w = 0`` is the limit 1.
    """
    zeta = _check_range(zeta)
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    out = np.ones(om.shape, dtype=complex)
    nz = om != 0.0
    if nz.any():
        w = om[nz]
        v = airy_eval(zeta)
        a, ad = _alpha_signed(zeta, w)
        phi = a * v.ai_prime - ad * v.ai
        psi = a * zeta * v.ai - ad * v.ai_prime
        k = _log_density_slope(zeta)
        out[nz] = 1j * (np.sign(w) * phi + 1j * np.abs(w) * (psi - phi * k))
    return complex(out[0]) if np.ndim(omega) == 0 else out


# limiting forms ------------------------------------------------------------

_LIMIT_KINDS = ("bulk_match", "gaussian", "pole_beta")


def edge_limit_forms(zeta: float, which: str, c) -> DistributionGrid:
    """Closed-form limiting shapes on the curvature grid ``c``.

    ``bulk_match`` (``zeta < 0``) is the squared Lorentzian with width
    ``kappa = pi * rho(zeta)``; ``gaussian`` (``zeta > 0``) is the standard
    normal in ``x = (c + sqrt(zeta)) * sqrt(2) * zeta**(1/4)`` expressed as a
    density in ``c``; ``pole_beta`` is the exponentially dominant
    approximation ``exp(-zeta*c + c**3/3)`` for ``c < sqrt(zeta)`` to beta
    (not a density).
    """
    zeta = _check_range(zeta)
    if which not in _LIMIT_KINDS:
        raise DomainError(f"unknown limit form {which!r}; choose from {_LIMIT_KINDS}")
    c = np.asarray(c, dtype=float)
    meta = {"form": which, "zeta": zeta, "variable": "c_sc"}
    if which == "bulk_match":
        if zeta >= 0.0:
            raise DomainError("bulk_match requires zeta < 0")
        kappa = math.pi * soft_edge_density(zeta)
        dens = (2.0 / math.pi) * kappa**3 / (c**2 + kappa**2) ** 2
        meta["kappa"] = kappa
    elif which == "gaussian":
        if zeta <= 0.0:
            raise DomainError("gaussian requires zeta > 0")
        scale = math.sqrt(2.0) * zeta**0.25
        x = (c + math.sqrt(zeta)) * scale
        dens = np.exp(-0.5 * x**2) / math.sqrt(2.0 * math.pi) * scale
        meta["x_scale"] = scale
    else:
        if zeta <= 0.0:
            raise DomainError("pole_beta requires zeta > 0")
        dens = _masked_exp_cubic(c < math.sqrt(zeta), c, zeta)
        meta["note"] = "approximation to beta, not a probability density"
    return DistributionGrid(c, dens, meta)


# integrals over c ----------------------------------------------------------

def _tail_series(zeta: float, L: float, kmax: int = 7):
    """Tail integrals of P_I and P_II beyond |c| = L from the 1/c expansion.

    For large |c|, ``beta ~ sum_k (-1)^k Ai^(k)(zeta) / c^(k+1)``, which gives
    ``P_I ~ sum_{k>=2} (-1)^k [Ai' Ai^(k-1) - Ai Ai^(k)] / c^k``. ``P_II`` is
    an exact c-derivative, so its tails are ``-(beta*nu)`` at the endpoints.
    Returns ``(tail_I, tail_II)`` summed over both sides.
    """
    d = ai_derivatives(zeta, kmax + 1)
    tail_i = 0.0
    for k in range(2, kmax + 1):
        coef = (-1) ** k * (d[1] * d[k - 1] - d[0] * d[k])
        # int_L^inf c^-k + int_-inf^-L c^-k: only even k survive
        if k % 2 == 0:
            tail_i += 2.0 * coef / ((k - 1) * L ** (k - 1))
    b_hi, b_lo = beta_fn(np.array([L, -L]), zeta)
    n_hi, n_lo = nu_fn(np.array([L, -L]), zeta)
    tail_ii = -(0.0 - b_hi * n_hi) - (b_lo * n_lo - 0.0)
    return tail_i, tail_ii


def edge_normalization(zeta: float, spec: QuadSpec | None = None) -> dict:
    """Integrals of ``P_I``, ``P_II`` and beta over the real c line.

    The core range ``|c| <= 40 + 2 sqrt|zeta|`` is integrated adaptively; the
    remaining tails use the large-c expansion (whose truncation error there is
    far below 1e-8).
    """
    zeta = _check_range(zeta)
    spec = spec or QuadSpec(abs_tol=1e-10, rel_tol=1e-10, max_subdivisions=400)
    L = 40.0 + 2.0 * math.sqrt(abs(zeta))
    v = airy_eval(zeta)

    def f(c):
        p1, p2 = pdf_edge_parts(c, zeta)
        return np.stack([p1, p2, beta_fn(c, zeta)])

    brk = np.array([-math.sqrt(abs(zeta)), 0.0, math.sqrt(abs(zeta))])
    core = quad_finite(f, -L, L, spec, breakpoints=brk)
    t1, t2 = _tail_series(zeta, L)
    # beta tails: int beta dc = pv-symmetric core + 2*(-Ai')/L + 2*(-Ai''')/(3 L^3)
    d = ai_derivatives(zeta, 5)
    tb = 2.0 * (-d[1]) / L + 2.0 * (-d[3]) / (3.0 * L**3) + 2.0 * (-d[5]) / (5.0 * L**5)
    return {
        "zeta": zeta,
        "int_P_I": float(core[0] + t1),
        "int_P_II": float(core[1] + t2),
        "int_beta": float(core[2] + tb),
        "pi_Bi": math.pi * v.bi,
        "cutoff": L,
    }


def mode_location(zeta: float, lo: float | None = None, hi: float | None = None) -> float:
    """Location of the maximum of :func:`pdf_edge` in c (golden-section refine)."""
    from scipy.optimize import minimize_scalar

    zeta = _check_range(zeta)
    s = math.sqrt(abs(zeta))
    lo = -s - 4.0 if lo is None else lo
    hi = s + 4.0 if hi is None else hi
    grid = np.linspace(lo, hi, 801)
    vals = pdf_edge(grid, zeta)
    i = int(np.argmax(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(lambda x: -pdf_edge(x, zeta), bounds=(a, b), method="bounded",
                          options={"xatol": 1e-8})
    return float(res.x)


def fit_b_coefficient(zetas=None) -> dict:
    """Least-squares fit of b in ``rho'/(2 rho) + sqrt(zeta) ~ -b/(16 zeta)``.

    The ratio is computed exactly from the Airy evaluators on ``zetas``
    (default 21 points in [20, 40]); the residual is reported with the fit.
    """
    zetas = np.linspace(20.0, 40.0, 21) if zetas is None else np.asarray(zetas, float)
    lhs = np.array([_log_density_slope(z) + math.sqrt(z) for z in zetas])
    basis = -1.0 / (16.0 * zetas)
    b = float(np.dot(basis, lhs) / np.dot(basis, basis))
    resid = float(np.max(np.abs(lhs - b * basis)))
    return {"b": b, "max_residual": resid, "zeta_range": [float(zetas[0]), float(zetas[-1])]}
