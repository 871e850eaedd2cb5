"""Pure-numpy convolution kernels (fallback backend).

Shapes follow the network's two convolution stages:

temporal   x (B, C, T) * w (F, KT)      -> y (B, F, C, T-KT+1)
           one 1-D filter slid along time, applied to every channel
spatial    x (B, F, C, T) * w (G, F, C) -> y (B, G, T)
           full connectivity over incoming maps and channels per time step

All heavy contractions are routed through matmul; arrays are float64 and
C-contiguous.  The backward passes return exact gradients of a scalar loss
given the upstream gradient.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def temporal_conv_fwd(x, w, b):
    bsz, c, t = x.shape
    f, kt = w.shape
    to = t - kt + 1
    windows = np.ascontiguousarray(sliding_window_view(x, kt, axis=2))
    y = windows.reshape(-1, kt) @ w.T  # (B*C*To, F)
    y = y.reshape(bsz, c, to, f).transpose(0, 3, 1, 2)
    y = y + b[None, :, None, None]
    return np.ascontiguousarray(y)


def temporal_conv_bwd(x, w, gy, need_gx=True):
    bsz, c, t = x.shape
    f, kt = w.shape
    to = t - kt + 1
    windows = np.ascontiguousarray(sliding_window_view(x, kt, axis=2))
    gy_flat = np.ascontiguousarray(gy.transpose(0, 2, 3, 1)).reshape(-1, f)
    gw = gy_flat.T @ windows.reshape(-1, kt)
    gb = gy_flat.sum(axis=0)
    gx = None
    if need_gx:
        # Scatter each tap's contribution back along time.
        contrib = gy_flat @ w  # (B*C*To, KT)
        contrib = contrib.reshape(bsz, c, to, kt)
        gx = np.zeros((bsz, c, t))
        for k in range(kt):
            gx[:, :, k : k + to] += contrib[:, :, :, k]
    return gx, np.ascontiguousarray(gw), gb


def spatial_conv_fwd(x, w, b):
    bsz, f, c, t = x.shape
    g = w.shape[0]
    xt = np.ascontiguousarray(x.transpose(0, 3, 1, 2)).reshape(bsz * t, f * c)
    y = xt @ w.reshape(g, f * c).T  # (B*T, G)
    y = y.reshape(bsz, t, g).transpose(0, 2, 1) + b[None, :, None]
    return np.ascontiguousarray(y)


def spatial_conv_bwd(x, w, gy):
    bsz, f, c, t = x.shape
    g = w.shape[0]
    w2d = w.reshape(g, f * c)
    xt = np.ascontiguousarray(x.transpose(0, 3, 1, 2)).reshape(bsz * t, f * c)
    gy_flat = np.ascontiguousarray(gy.transpose(0, 2, 1)).reshape(bsz * t, g)
    gw = (gy_flat.T @ xt).reshape(g, f, c)
    gb = gy_flat.sum(axis=0)
    gx = (gy_flat @ w2d).reshape(bsz, t, f, c).transpose(0, 2, 3, 1)
    return np.ascontiguousarray(gx), gw, gb
