"""Shared numerical plumbing: scaled arithmetic, quadrature and RNG streams."""

from .quad import DEFAULT_SPEC, QuadSpec, gauss_legendre, quad_finite, quad_semi_infinite
from .rng import default_seed, rng_stream
from .scaled import ScaledComplex, ScaledReal

__all__ = [
    "DEFAULT_SPEC",
    "QuadSpec",
    "ScaledComplex",
    "ScaledReal",
    "default_seed",
    "gauss_legendre",
    "quad_finite",
    "quad_semi_infinite",
    "rng_stream",
]
