"""Pure-NumPy reference implementations of the compiled hot kernels.

Selected automatically when the compiled extension is unavailable, or forced
with ``CURVELAB_PURE=1``. Results agree with the compiled versions to
rounding.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["hermite_tail", "curvature_sums"]

_BIG = 1e150
_LOG_BIG = math.log(_BIG)


def hermite_tail(x, n_dim: int, k_max: int):
    """Last four monic Hermite values ``p_{k_max}, ..., p_{k_max-3}``.

    Uses ``p_{k+1} = x p_k - (k/N) p_{k-1}`` for the weight
    ``exp(-N x**2 / 2)``. Returns ``(mant, log_scale)`` with ``mant`` of shape
    ``(4, n)`` such that the true values are ``mant * exp(log_scale)``;
    entries with negative degree are zero.
    """
    x = np.ascontiguousarray(x, dtype=float)
    n = x.size
    inv_n = 1.0 / n_dim
    hist = np.zeros((4, n))
    log_scale = np.zeros(n)
    prev = np.zeros(n)
    cur = np.ones(n)
    hist[0] = cur
    for k in range(k_max):
        nxt = x * cur - (k * inv_n) * prev
        prev, cur = cur, nxt
        hist[1:] = hist[:-1].copy()
        hist[0] = cur
        big = np.maximum(np.abs(cur), np.abs(prev))
        over = big > _BIG
        if over.any():
            cur[over] /= _BIG
            prev[over] /= _BIG
            hist[:, over] /= _BIG
            log_scale[over] += _LOG_BIG
    # degrees below zero do not exist
    for j in range(4):
        if k_max - j < 0:
            hist[j] = 0.0
    return hist, log_scale


def curvature_sums(evals, wabs2):
    """``C_m = sum_{n != m} wabs2[m, n] / (evals[m] - evals[n])``.

    ``evals`` has shape ``(..., N)`` and ``wabs2`` shape ``(..., N, N)``.
    """
    evals = np.asarray(evals, dtype=float)
    wabs2 = np.asarray(wabs2, dtype=float)
    diff = evals[..., :, None] - evals[..., None, :]
    n = evals.shape[-1]
    eye = np.eye(n, dtype=bool)
    diff = np.where(eye, 1.0, diff)
    terms = np.where(eye, 0.0, wabs2 / diff)
    return terms.sum(axis=-1)
