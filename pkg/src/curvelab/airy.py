"""Airy functions from their integral representations.

``Ai`` and ``Ai'`` are the real parts of a half-line oscillatory integral taken
along a steepest-descent path; ``Bi`` adds a plainly decaying real-axis
integral to the imaginary part of the same contour integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .contour import half_line, laplace_line
from .errors import DomainError

__all__ = [
    "AiryValues",
    "AIRY_RANGE",
    "airy_eval",
    "soft_edge_density",
    "soft_edge_density_prime",
    "ai_derivatives",
]

AIRY_RANGE = (-40.0, 40.0)


@dataclass(frozen=True)
class AiryValues:
    ai: float
    ai_prime: float
    bi: float
    bi_prime: float
    at: float

    @property
    def ai_second(self) -> float:
        return self.at * self.ai

    def wronskian(self) -> float:
        return self.ai * self.bi_prime - self.ai_prime * self.bi


def _check_range(zeta: float) -> float:
    zeta = float(zeta)
    if not (AIRY_RANGE[0] <= zeta <= AIRY_RANGE[1]):
        raise DomainError(f"zeta={zeta} outside supported range {AIRY_RANGE}")
    return zeta


def _unit_and_slope(t):
    return np.stack([np.ones_like(t), 1j * t])


def _laplace_pair(tau):
    return np.stack([np.ones_like(tau), tau])


@lru_cache(maxsize=4096)
def _airy_cached(zeta: float) -> AiryValues:
    h = half_line(_unit_and_slope, zeta)
    lap = laplace_line(_laplace_pair, zeta)
    return AiryValues(
        ai=float(h[0].real / math.pi),
        ai_prime=float(h[1].real / math.pi),
        bi=float((h[0].imag + lap[0]) / math.pi),
        bi_prime=float((h[1].imag + lap[1]) / math.pi),
        at=zeta,
    )


def airy_eval(zeta: float) -> AiryValues:
    """Evaluate ``Ai, Ai', Bi, Bi'`` at a real point ``zeta`` in [-40, 40].

    Examples
    --------
    >>> round(airy_eval(0.0).ai, 10)
    0.3550280539
    """
    return _airy_cached(_check_range(zeta))


def ai_derivatives(zeta: float, order: int = 4) -> np.ndarray:
    """``[Ai, Ai', Ai'', ...]`` up to ``order`` via ``Ai'' = zeta*Ai``.

    Uses ``Ai^(k+2) = zeta*Ai^(k) + k*Ai^(k-1)``.
    """
    v = airy_eval(zeta)
    out = np.zeros(order + 1)
    out[0] = v.ai
    if order >= 1:
        out[1] = v.ai_prime
    for k in range(2, order + 1):
        j = k - 2
        out[k] = zeta * out[j] + (j * out[j - 1] if j >= 1 else 0.0)
    return out


def soft_edge_density(zeta: float) -> float:
    """Mean soft-edge density ``Ai'(zeta)**2 - zeta*Ai(zeta)**2``."""
    v = airy_eval(zeta)
    return v.ai_prime**2 - zeta * v.ai**2


def soft_edge_density_prime(zeta: float) -> float:
    """Derivative of :func:`soft_edge_density`, equal to ``-Ai(zeta)**2``."""
    return -airy_eval(zeta).ai ** 2
