"""Adaptive Gauss-Kronrod quadrature for vector-valued integrands.

Integrands are called with a 1-D array of abscissae ``x`` (shape ``(n,)``) and
must return an array of shape ``(..., n)``; the leading axes are treated as
independent components that share one subdivision of the interval. This is
what lets the contour integrals downstream evaluate a whole grid of curvature
or frequency values in a single adaptive pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from ..errors import NonConvergence, TailBoundFailure

__all__ = [
    "QuadSpec",
    "DEFAULT_SPEC",
    "quad_finite",
    "quad_semi_infinite",
    "gauss_legendre",
]


@dataclass(frozen=True)
class QuadSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.rel_tol < 0:
            raise ValueError("rel_tol must be non-negative")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be a positive integer")


DEFAULT_SPEC = QuadSpec()

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (1, 3, 5 in _XGK) and the centre.
for _i, _w in zip((1, 3, 5, 7), _WG):
    _GW[_i] = _w
    _GW[14 - _i] = _w


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1] (cached)."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _apply_rule(f, a: np.ndarray, b: np.ndarray):
    """Evaluate GK15 on every interval [a_i, b_i] with one integrand call."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
    fx = np.asarray(f(x))
    m = a.size
    fx = fx.reshape(fx.shape[:-1] + (m, 15))
    kron = np.einsum("...ij,j->...i", fx, _KW) * half
    gauss = np.einsum("...ij,j->...i", fx, _GW) * half
    return kron, np.abs(kron - gauss)


def quad_finite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadSpec = DEFAULT_SPEC,
    breakpoints: Optional[np.ndarray] = None,
):
    """Integrate ``f`` over ``[a, b]`` by globally adaptive GK15 bisection.

    Returns a float/complex scalar for scalar integrands, or an array matching
    the leading shape of ``f``'s output. Raises :class:`NonConvergence` when
    ``spec.max_subdivisions`` intervals are used up before every component
    satisfies ``err <= max(abs_tol, rel_tol * |I|)``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    edges = np.array([a, b], dtype=float)
    if breakpoints is not None:
        inner = np.asarray(breakpoints, dtype=float)
        inner = inner[(inner > a) & (inner < b)]
        edges = np.unique(np.concatenate([edges, inner]))
    lo, hi = edges[:-1].copy(), edges[1:].copy()
    val, err = _apply_rule(f, lo, hi)
    span = b - a

    while True:
        total = val.sum(axis=-1)
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total))
        # normalised error per interval, worst component
        nerr = err / tol[..., None]
        if nerr.ndim > 1:
            nerr = nerr.reshape(-1, nerr.shape[-1]).max(axis=0)
        if nerr.sum() <= 1.0:
            break
        width = (hi - lo) / span
        split = nerr > 0.5 * width
        if not split.any():
            split = nerr >= nerr.max()
        n_new = lo.size + int(split.sum())
        if n_new > spec.max_subdivisions:
            raise NonConvergence(
                f"quad_finite: {lo.size} subintervals used on [{a}, {b}], "
                f"estimated error {float(nerr.sum()):.3g} x tolerance"
            )
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        v_new, e_new = _apply_rule(f, new_lo, new_hi)
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[..., keep], v_new], axis=-1)
        err = np.concatenate([err[..., keep], e_new], axis=-1)

    # summation in positional order keeps the result independent of the
    # order in which intervals were refined
    order = np.argsort(lo, kind="stable")
    result = val[..., order].sum(axis=-1)
    return result[()] if np.ndim(result) == 0 else result


def _probe_decay(f, start: float):
    """Return (x, |f(x)|) on a doubling ladder of probe points."""
    xs = start + np.exp2(np.arange(0, 41, dtype=float))
    fx = np.abs(np.asarray(f(xs)))
    if fx.ndim > 1:
        fx = fx.reshape(-1, fx.shape[-1]).max(axis=0)
    return xs, fx


def quad_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    spec: QuadSpec = DEFAULT_SPEC,
    envelope: Optional[Callable[[float], float]] = None,
    start: float = 0.0,
):
    """Integrate ``f`` over ``[start, inf)``.

    Rapidly decaying integrands (Gaussian, cubic-exponential) are truncated
    where the envelope times the distance falls below ``abs_tol / 10``; slower
    but integrable algebraic decay is handled by the map ``x = t / (1 - t)``.
    ``envelope`` may supply a known majorant of ``|f|``; otherwise one is
    read off a doubling ladder of probe points.
    """
    cutoff = spec.abs_tol / 10.0
    if envelope is not None:
        x = start + 1.0
        for _ in range(200):
            if envelope(x) * max(x - start, 1.0) < cutoff:
                return quad_finite(f, start, x, spec)
            x = start + 2.0 * (x - start)
        raise TailBoundFailure("supplied envelope never dropped below abs_tol/10")

    xs, fx = _probe_decay(f, start)
    tail = fx * (xs - start)
    below = tail < cutoff
    # truncate at the first probe after which the proxy stays below the cutoff
    for k in range(len(xs) - 1):
        if below[k:].all() and k < 30:
            upper = xs[k]
            return quad_finite(f, start, upper, spec)

    # algebraic decay: need |f| ~ x^-p with p > 1 on the last probes
    tail_fx = fx[-8:]
    if np.all(tail_fx > 0):
        slope = np.polyfit(np.log(xs[-8:] - start), np.log(tail_fx), 1)[0]
    else:
        slope = -np.inf
    if not slope < -1.05:
        raise TailBoundFailure(
            f"no decaying envelope detected (log-slope {slope:.3g} at x={xs[-1]:.3g})"
        )

    def mapped(t):
        one_minus = 1.0 - t
        return f(start + t / one_minus) / one_minus**2

    return quad_finite(mapped, 0.0, 1.0, spec)
