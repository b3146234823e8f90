# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: scaled Hermite recurrence and curvature sums."""

import numpy as np
from libc.math cimport fabs, log

cdef double _BIG = 1e150


def hermite_tail(x, int n_dim, int k_max):
    """Last four monic Hermite values, see the pure-Python twin."""
    xa_arr = np.ascontiguousarray(x, dtype=np.float64).ravel()
    n_py = xa_arr.shape[0]
    hist_arr = np.zeros((4, n_py))
    ls_arr = np.zeros(n_py)
    cdef const double[::1] xa = xa_arr
    cdef double[:, ::1] hist = hist_arr
    cdef double[::1] log_scale = ls_arr
    cdef Py_ssize_t n = n_py
    cdef double inv_n = 1.0 / n_dim
    cdef double log_big = log(_BIG)
    cdef double h0, h1, h2, h3, nxt, xi, big, ls
    cdef Py_ssize_t i
    cdef int k
    for i in range(n):
        xi = xa[i]
        h0 = 1.0
        h1 = 0.0
        h2 = 0.0
        h3 = 0.0
        ls = 0.0
        for k in range(k_max):
            nxt = xi * h0 - (k * inv_n) * h1
            h3 = h2
            h2 = h1
            h1 = h0
            h0 = nxt
            big = fabs(h0)
            if fabs(h1) > big:
                big = fabs(h1)
            if big > _BIG:
                h0 /= _BIG
                h1 /= _BIG
                h2 /= _BIG
                h3 /= _BIG
                ls += log_big
        hist[0, i] = h0
        hist[1, i] = h1
        hist[2, i] = h2
        hist[3, i] = h3
        log_scale[i] = ls
    return hist_arr, ls_arr


def curvature_sums(evals, wabs2):
    """Curvature sums over the last axis, see the pure-Python twin."""
    shape = np.shape(evals)
    nn_py = shape[len(shape) - 1]
    ev_arr = np.ascontiguousarray(np.asarray(evals, dtype=np.float64).reshape(-1, nn_py))
    nb_py = ev_arr.shape[0]
    w2_arr = np.ascontiguousarray(np.asarray(wabs2, dtype=np.float64).reshape(nb_py, nn_py, nn_py))
    out_arr = np.zeros((nb_py, nn_py))
    cdef const double[:, ::1] ev = ev_arr
    cdef const double[:, :, ::1] w2 = w2_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t nb = nb_py
    cdef Py_ssize_t nn = nn_py
    cdef Py_ssize_t b, m, j
    cdef double acc, lm
    for b in range(nb):
        for m in range(nn):
            acc = 0.0
            lm = ev[b, m]
            for j in range(nn):
                if j != m:
                    acc += w2[b, m, j] / (lm - ev[b, j])
            out[b, m] = acc
    return out_arr.reshape(shape)
