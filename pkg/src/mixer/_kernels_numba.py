"""numba-compiled kernels for the descriptor hot loops.

All reductions run sequentially in index order so results do not depend on
how many images are processed concurrently. Every kernel is ``nogil`` so the
corpus thread pool gets real parallelism.
"""

import math

import numpy as np
from numba import njit

M2_FLOOR = 1e-24


@njit(cache=True, nogil=True)
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


@njit(cache=True, nogil=True)
def im2col_replicate(channel, J):
    H, W = channel.shape
    r = (J - 1) // 2
    out = np.empty((J * J, H * W))
    for i in range(H):
        for j in range(W):
            col = i * W + j
            row = 0
            for di in range(-r, r + 1):
                ii = min(max(i + di, 0), H - 1)
                for dj in range(-r, r + 1):
                    jj = min(max(j + dj, 0), W - 1)
                    out[row, col] = channel[ii, jj]
                    row += 1
    return out


@njit(cache=True, nogil=True)
def standardize_rows(X, eps):
    n_rows, n = X.shape
    out = np.empty_like(X)
    for i in range(n_rows):
        s = 0.0
        for j in range(n):
            s += X[i, j]
        mean = s / n
        ss = 0.0
        for j in range(n):
            d = X[i, j] - mean
            ss += d * d
        denom = math.sqrt(ss / (n - 1)) + eps
        for j in range(n):
            out[i, j] = (X[i, j] - mean) / denom
    return out


@njit(cache=True, nogil=True)
def sigmoid_unit_columns(P, eps):
    # row-major traversal; each column norm still accumulates in row order
    n_rows, n = P.shape
    out = np.empty_like(P)
    ss = np.zeros(n)
    for i in range(n_rows):
        for j in range(n):
            z = 1.0 / (1.0 + math.exp(-P[i, j]))
            out[i, j] = z
            ss[j] += z * z
    for j in range(n):
        ss[j] = max(math.sqrt(ss[j]), eps)
    for i in range(n_rows):
        for j in range(n):
            out[i, j] /= ss[j]
    return out


@njit(cache=True, nogil=True)
def column_moments(F):
    n, n_cols = F.shape
    out = np.zeros((4, n_cols))
    for j in range(n_cols):
        s = 0.0
        for i in range(n):
            s += F[i, j]
        mean = s / n
        m2 = 0.0
        m3 = 0.0
        m4 = 0.0
        for i in range(n):
            d = F[i, j] - mean
            d2 = d * d
            m2 += d2
            m3 += d2 * d
            m4 += d2 * d2
        m2 /= n
        m3 /= n
        m4 /= n
        out[0, j] = mean
        out[1, j] = math.sqrt(m2)
        if m2 >= M2_FLOOR:
            out[2, j] = m3 / m2 ** 1.5
            out[3, j] = m4 / (m2 * m2) - 3.0
    return out
