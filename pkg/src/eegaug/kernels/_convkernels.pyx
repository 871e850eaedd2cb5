# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled convolution kernels (hot path of training).

Same contracts as kernels._conv_py; single-threaded on purpose so that
accumulation order, and therefore rounding, is reproducible run to run.
"""

import numpy as np


def temporal_conv_fwd(double[:, :, ::1] x, double[:, ::1] w, double[::1] b):
    cdef Py_ssize_t B = x.shape[0], C = x.shape[1], T = x.shape[2]
    cdef Py_ssize_t F = w.shape[0], KT = w.shape[1]
    cdef Py_ssize_t To = T - KT + 1
    y_arr = np.empty((B, F, C, To), dtype=np.float64)
    cdef double[:, :, :, ::1] y = y_arr
    cdef Py_ssize_t bi, f, c, t, k
    cdef double acc
    with nogil:
        for bi in range(B):
            for f in range(F):
                for c in range(C):
                    for t in range(To):
                        acc = b[f]
                        for k in range(KT):
                            acc += x[bi, c, t + k] * w[f, k]
                        y[bi, f, c, t] = acc
    return y_arr


def temporal_conv_bwd(double[:, :, ::1] x, double[:, ::1] w,
                      double[:, :, :, ::1] gy, bint need_gx=True):
    cdef Py_ssize_t B = x.shape[0], C = x.shape[1], T = x.shape[2]
    cdef Py_ssize_t F = w.shape[0], KT = w.shape[1]
    cdef Py_ssize_t To = T - KT + 1
    gw_arr = np.zeros((F, KT), dtype=np.float64)
    gb_arr = np.zeros(F, dtype=np.float64)
    gx_arr = np.zeros((B, C, T), dtype=np.float64) if need_gx else None
    cdef double[:, ::1] gw = gw_arr
    cdef double[::1] gb = gb_arr
    cdef double[:, :, ::1] gx
    cdef bint want_gx = need_gx
    if need_gx:
        gx = gx_arr
    cdef Py_ssize_t bi, f, c, t, k
    cdef double g
    with nogil:
        for bi in range(B):
            for f in range(F):
                for c in range(C):
                    for t in range(To):
                        g = gy[bi, f, c, t]
                        gb[f] += g
                        for k in range(KT):
                            gw[f, k] += g * x[bi, c, t + k]
                        if want_gx:
                            for k in range(KT):
                                gx[bi, c, t + k] += g * w[f, k]
    return gx_arr, gw_arr, gb_arr


def spatial_conv_fwd(double[:, :, :, ::1] x, double[:, :, ::1] w, double[::1] b):
    cdef Py_ssize_t B = x.shape[0], F = x.shape[1], C = x.shape[2], T = x.shape[3]
    cdef Py_ssize_t G = w.shape[0]
    y_arr = np.empty((B, G, T), dtype=np.float64)
    cdef double[:, :, ::1] y = y_arr
    cdef Py_ssize_t bi, g, f, c, t
    cdef double coef
    with nogil:
        for bi in range(B):
            for g in range(G):
                for t in range(T):
                    y[bi, g, t] = b[g]
                for f in range(F):
                    for c in range(C):
                        coef = w[g, f, c]
                        for t in range(T):
                            y[bi, g, t] += coef * x[bi, f, c, t]
    return y_arr


def spatial_conv_bwd(double[:, :, :, ::1] x, double[:, :, ::1] w,
                     double[:, :, ::1] gy):
    cdef Py_ssize_t B = x.shape[0], F = x.shape[1], C = x.shape[2], T = x.shape[3]
    cdef Py_ssize_t G = w.shape[0]
    gx_arr = np.zeros((B, F, C, T), dtype=np.float64)
    gw_arr = np.zeros((G, F, C), dtype=np.float64)
    gb_arr = np.zeros(G, dtype=np.float64)
    cdef double[:, :, :, ::1] gx = gx_arr
    cdef double[:, :, ::1] gw = gw_arr
    cdef double[::1] gb = gb_arr
    cdef Py_ssize_t bi, g, f, c, t
    cdef double coef, acc
    with nogil:
        for bi in range(B):
            for g in range(G):
                acc = 0.0
                for t in range(T):
                    acc += gy[bi, g, t]
                gb[g] += acc
                for f in range(F):
                    for c in range(C):
                        coef = w[g, f, c]
                        acc = 0.0
                        for t in range(T):
                            acc += gy[bi, g, t] * x[bi, f, c, t]
                            gx[bi, f, c, t] += gy[bi, g, t] * coef
                        gw[g, f, c] += acc
    return gx_arr, gw_arr, gb_arr
