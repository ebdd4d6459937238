"""Pure-numpy reference kernels.

Same signatures as :mod:`mixer._kernels_numba`. Used when numba is
unavailable or ``MIXER_BACKEND=numpy``, and as the comparison path in the
backend-equivalence tests and the benchmark.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# Zero-variance cutoff for skewness / kurtosis.
M2_FLOOR = 1e-24


def lcg_int64(length):
    a = length + 2
    b = length + 3
    c = length * length
    out = np.empty(length, dtype=np.int64)
    v = length + 1
    out[0] = v
    for k in range(1, length):
        v = (a * v + b) % c
        out[k] = v
    return out


def im2col_replicate(channel, J):
    r = (J - 1) // 2
    padded = np.pad(channel, r, mode="edge")
    windows = sliding_window_view(padded, (J, J))  # H x W x J x J
    H, W = channel.shape
    return np.ascontiguousarray(windows.reshape(H * W, J * J).T)


def standardize_rows(X, eps):
    mean = X.mean(axis=1, keepdims=True)
    std = X.std(axis=1, ddof=1, keepdims=True)
    return (X - mean) / (std + eps)


def sigmoid_unit_columns(P, eps):
    Z = 1.0 / (1.0 + np.exp(-P))
    norms = np.sqrt(np.einsum("ij,ij->j", Z, Z))
    return Z / np.maximum(norms, eps)


def column_moments(F):
    mean = F.mean(axis=0)
    d = F - mean
    d2 = d * d
    m2 = d2.mean(axis=0)
    m3 = (d2 * d).mean(axis=0)
    m4 = (d2 * d2).mean(axis=0)
    out = np.zeros((4, F.shape[1]))
    out[0] = mean
    out[1] = np.sqrt(m2)
    ok = m2 >= M2_FLOOR
    out[2, ok] = m3[ok] / m2[ok] ** 1.5
    out[3, ok] = m4[ok] / m2[ok] ** 2 - 3.0
    return out
