"""Deterministic, stream-splittable random number generation.

Each ``(seed, stream_id)`` pair maps to an independent Philox counter-based
generator keyed through :class:`numpy.random.SeedSequence`, so trial ``i`` of a
campaign can be drawn on any worker without coordination.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["rng_stream", "default_seed", "SEED_ENV"]

SEED_ENV = "CURVELAB_SEED"
_MASK64 = (1 << 64) - 1


def rng_stream(seed: int, stream_id: int = 0) -> np.random.Generator:
    """Return the generator for ``(seed, stream_id)``.

    Both integers are reduced modulo 2**64. The returned generator owns its
    state and must not be shared between concurrent tasks.
    """
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=(int(stream_id) & _MASK64,))
    return np.random.Generator(np.random.Philox(ss))


def default_seed(explicit: int | None = None) -> int:
    """Resolve a seed: explicit value, else ``$CURVELAB_SEED``, else 0."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return 0
    return int(env, 0)
