"""Steepest-descent contours for integrals with the cubic Airy phase.

All soft-edge quantities are integrals of ``exp(i*phi(t)) * r(t)`` with
``phi(t) = t*zeta + t**3/3`` along (part of) the real axis. On the real axis
the integrand oscillates without decay, so the integration path is moved into
the upper half plane where ``exp(i*phi)`` decays like ``exp(-|t|**3/3)``:

* ``half_line``: from 0 to infinity. For ``zeta >= 0`` the path runs up the
  imaginary axis to the saddle ``i*sqrt(zeta)`` and then along the ray of
  angle pi/6; for ``zeta < 0`` it follows the real axis to the saddle
  ``sqrt(-zeta)`` and leaves along the same ray direction.
* ``right_branch``: the right half of a full-line path lifted to height
  ``h``. If ``r(-conj(t)) == conj(r(t))`` the full-line integral equals
  ``2 * Re`` of this branch plus residues of poles between the real axis and
  the lifted line.

Each segment is integrated with its own log-magnitude reference so that
exponentially small results (``Ai`` at large positive ``zeta``) keep their
relative accuracy.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .numerics.quad import QuadSpec, quad_finite

__all__ = [
    "RAY",
    "log_weight",
    "half_line",
    "right_branch",
    "laplace_line",
    "default_height",
    "CONTOUR_SPEC",
]

RAY = complex(math.cos(math.pi / 6), math.sin(math.pi / 6))
CONTOUR_SPEC = QuadSpec(abs_tol=1e-14, rel_tol=1e-13, max_subdivisions=4000)
# integrand magnitudes below exp(-_DROP) relative to a segment's peak are cut
_DROP = 48.0

Integrand = Callable[[np.ndarray], np.ndarray]


def log_weight(t, zeta: float):
    """Real part of ``i*phi(t)``, i.e. ``log|exp(i*phi(t))|``."""
    return np.real(1j * (t * zeta + t**3 / 3.0))


def _ray_length(t0: complex, zeta: float, ref: float) -> float:
    """Smallest s (on a coarse ladder) beyond which the ray weight stays negligible."""
    s = 0.5
    while s < 200.0:
        if log_weight(t0 + s * RAY, zeta) < ref - _DROP:
            return s
        s *= 1.25
    return s


def _segment(r: Integrand, zeta: float, t0: complex, direction: complex,
             length: float, spec: QuadSpec, ref: float, breaks=None):
    """Integrate ``exp(i*phi) * r`` over ``t0 + s*direction``, s in [0, length]."""

    def f(s):
        t = t0 + s * direction
        w = np.exp(1j * (t * zeta + t**3 / 3.0) - ref)
        return np.asarray(r(t)) * w * direction

    val = quad_finite(f, 0.0, length, spec, breakpoints=breaks)
    return val * math.exp(ref)


def _path_ref(t0: complex, direction: complex, length: float, zeta: float) -> float:
    s = np.linspace(0.0, length, 257)
    return float(np.max(log_weight(t0 + s * direction, zeta)))


def _integrate_path(r, zeta, pieces, spec):
    total = 0.0
    for t0, direction, length in pieces:
        if length <= 0.0:
            continue
        ref = _path_ref(t0, direction, length, zeta)
        total = total + _segment(r, zeta, t0, direction, length, spec, ref)
    return total


def half_line(r: Integrand, zeta: float, spec: QuadSpec = CONTOUR_SPEC):
    """``int_0^inf exp(i*(t*zeta + t**3/3)) r(t) dt`` for ``r`` entire.

    ``r`` receives a complex array ``t`` of shape ``(n,)`` and returns
    ``(..., n)``; the result has the leading shape.
    """
    a = math.sqrt(abs(zeta))
    if zeta >= 0.0:
        start = 1j * a
        pieces = [(0.0j, 1j, a)]
    else:
        start = complex(a, 0.0)
        pieces = [(0.0j, 1.0 + 0j, a)]
    ref = float(log_weight(start, zeta))
    pieces.append((start, RAY, _ray_length(start, zeta, ref)))
    return _integrate_path(r, zeta, pieces, spec)


def default_height(zeta: float) -> float:
    """Height of the lifted line for full-line integrals."""
    if zeta >= 0.0:
        return math.sqrt(zeta)
    return min(0.5, 1.5 / abs(zeta))


def right_branch(r: Integrand, zeta: float, h: float, spec: QuadSpec = CONTOUR_SPEC):
    """Right half of the full-line path lifted to ``Im t = h``.

    For ``zeta >= 0`` this is the ray of angle pi/6 from ``i*h``; for
    ``zeta < 0`` a horizontal run to ``sqrt(-zeta) + i*h`` precedes the ray.
    Poles of ``r`` must keep a distance from the path (callers pick ``h``).
    """
    if h < 0.0:
        raise ValueError("height must be non-negative")
    start = 1j * h
    pieces = []
    if zeta < 0.0:
        a = math.sqrt(-zeta)
        pieces.append((start, 1.0 + 0j, a))
        start = start + a
    ref = max(float(log_weight(start, zeta)), float(log_weight(1j * h, zeta)))
    pieces.append((start, RAY, _ray_length(start, zeta, ref)))
    return _integrate_path(r, zeta, pieces, spec)


def laplace_line(g: Integrand, zeta: float, spec: QuadSpec = CONTOUR_SPEC):
    """``int_0^inf exp(tau*zeta - tau**3/3) g(tau) d tau`` on the real axis."""
    peak = math.sqrt(zeta) if zeta > 0.0 else 0.0
    ref = peak * zeta - peak**3 / 3.0
    s = max(peak, 0.5)
    while s * zeta - s**3 / 3.0 > ref - _DROP:
        s *= 1.25

    def f(tau):
        return np.asarray(g(tau)) * np.exp(tau * zeta - tau**3 / 3.0 - ref)

    breaks = [peak] if peak > 0.0 else None
    return quad_finite(f, 0.0, s, spec, breakpoints=breaks) * math.exp(ref)


def height_groups(poles: np.ndarray, zeta: float, margin: float | None = None) -> Sequence[tuple[float, np.ndarray]]:
    """Split pole positions ``i*poles`` into groups sharing a safe height.

    Returns ``[(h, mask), ...]`` such that every pole in ``mask`` is at least
    ``margin`` away from ``i*h``.
    """
    h0 = default_height(zeta)
    if margin is None:
        margin = 0.25 if zeta >= 0.0 else 0.5 * h0
    near = np.abs(poles - h0) < margin
    groups = []
    if (~near).any():
        groups.append((h0, ~near))
    if near.any():
        h1 = h0 + 2.0 * margin if zeta < 0.0 or h0 < 2.0 * margin else h0 - 2.0 * margin
        groups.append((h1, near))
    return groups
