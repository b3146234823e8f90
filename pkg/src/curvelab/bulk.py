"""Closed-form bulk quantities for the GUE with semicircle support [-2, 2]."""

from __future__ import annotations

import math

import numpy as np

from .errors import BranchPointError, DomainError

__all__ = [
    "BulkPoint",
    "bulk_point",
    "semicircle_density",
    "mean_curvature",
    "zd_pdf",
    "zd_cdf",
    "bulk_char_fn",
]


class BulkPoint:
    """Spectral position with its density and the curvature scale ``y``."""

    __slots__ = ("x", "rho", "y")

    def __init__(self, x: float):
        if abs(x) >= 2.0:
            raise DomainError("bulk point needs |x| < 2")
        self.x = float(x)
        self.rho = semicircle_density(x)
        self.y = 1.0 / (math.pi * self.rho)

    def __repr__(self) -> str:
        return f"BulkPoint(x={self.x}, rho={self.rho}, y={self.y})"


def bulk_point(x: float) -> BulkPoint:
    return BulkPoint(x)


def semicircle_density(x):
    """``sqrt(4 - x^2) / (2 pi)`` on [-2, 2], zero outside."""
    arr = np.asarray(x, dtype=float)
    out = np.where(np.abs(arr) <= 2.0, np.sqrt(np.clip(4.0 - arr**2, 0.0, None)) / (2.0 * math.pi), 0.0)
    return float(out) if out.ndim == 0 else out


def mean_curvature(x: float) -> float:
    """Mean curvature in units of ``y_typ``: the real part of the mean resolvent.

    ``x/2`` inside the support and ``(x - sign(x) sqrt(x^2 - 4))/2`` outside.
    """
    x = float(x)
    if abs(x) == 2.0:
        raise BranchPointError("mean curvature has a branch point at |x| = 2")
    if abs(x) < 2.0:
        return 0.5 * x
    return 0.5 * (x - math.copysign(math.sqrt(x * x - 4.0), x))


def _centre(x: float) -> float:
    if abs(x) >= 2.0:
        raise DomainError("zd_pdf needs |x| < 2")
    return x / (2.0 * math.pi * semicircle_density(x))


def zd_pdf(c, x: float):
    """Bulk curvature density ``(2/pi) / ((c - c0)^2 + 1)^2`` with ``c0 = x/(2 pi rho(x))``.

    ``c`` is the curvature in units of ``C_typ = pi rho(x) y_typ``.
    """
    c0 = _centre(x)
    u = np.asarray(c, dtype=float) - c0
    out = (2.0 / math.pi) / (u * u + 1.0) ** 2
    return float(out) if out.ndim == 0 else out


def zd_cdf(c, x: float):
    """Cumulative distribution of :func:`zd_pdf` in closed form."""
    c0 = _centre(x)
    u = np.asarray(c, dtype=float) - c0
    out = 0.5 + (np.arctan(u) + u / (1.0 + u * u)) / math.pi
    return float(out) if out.ndim == 0 else out


def bulk_char_fn(omega, x: float):
    """``<exp(-i w c)> = exp(-i w c0 - |w|) (1 + |w|)`` (unit value at w = 0)."""
    c0 = _centre(x)
    w = np.asarray(omega, dtype=float)
    out = np.exp(-1j * w * c0 - np.abs(w)) * (1.0 + np.abs(w))
    return complex(out) if out.ndim == 0 else out
