"""Uniform-grid density container shared by the analytic, kernel and MC routes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["DistributionGrid", "parse_grid", "uniform_grid"]


@dataclass
class DistributionGrid:
    """Density samples on a uniform abscissa grid.

    Attributes
    ----------
    x : ndarray
        Abscissae, uniformly spaced and increasing.
    density : ndarray
        Density values at ``x``.
    meta : dict
        Free-form metadata (normalisation convention, source, parameters).
    """

    x: np.ndarray
    density: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.density = np.asarray(self.density, dtype=float)
        if self.x.shape != self.density.shape or self.x.ndim != 1:
            raise ValueError("x and density must be 1-D arrays of equal length")

    @property
    def step(self) -> float:
        return float(self.x[1] - self.x[0]) if self.x.size > 1 else 0.0

    @property
    def range(self) -> tuple[float, float]:
        return float(self.x[0]), float(self.x[-1])

    @property
    def mass(self) -> float:
        """Trapezoid integral of the density over the grid."""
        return float(np.trapezoid(self.density, self.x))

    @property
    def normalization_residual(self) -> float:
        return abs(self.mass - 1.0)

    def cdf(self) -> np.ndarray:
        """Cumulative trapezoid integral starting at zero on the first node."""
        d = self.density
        inc = 0.5 * (d[1:] + d[:-1]) * np.diff(self.x)
        return np.concatenate([[0.0], np.cumsum(inc)])


def uniform_grid(c_min: float, c_max: float, points: int) -> np.ndarray:
    if points < 2 or not c_min < c_max:
        raise ValueError("grid needs c_min < c_max and at least two points")
    return np.linspace(c_min, c_max, points)


def parse_grid(text: str) -> tuple[float, float, int]:
    """Parse ``"min:max:points"``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must look like min:max:points, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if not lo < hi:
        raise ValueError("grid needs min < max")
    if n < 16:
        raise ValueError("grid needs at least 16 points")
    return lo, hi, n
