"""Deterministic pseudorandom weight tensors from a linear congruential generator.

The recurrence is ``v[k+1] = (a*v[k] + b) mod c`` with ``v[0] = L+1``,
``a = L+2``, ``b = L+3`` and ``c = L**2`` where ``L`` is the total element
count of the requested tensor. The whole flat sequence is standardised
(sample mean, Bessel-corrected std) before being reshaped row-major.

Note the generator has very short periods for some ``L`` (powers of two are
particularly bad, ``L=4`` is constant); that is inherent to the construction
and is not corrected here.
"""

from math import prod

import numpy as np

from . import kernels
from .errors import DegenerateSequenceError, InvalidLengthError

# Largest L for which a*v + b stays below 2**63 with v < c = L**2.
INT64_SAFE_LENGTH = 2_097_000


def _check_length(length):
    if int(length) != length or length < 2:
        raise InvalidLengthError(f"LCG length must be an integer >= 2, got {length!r}")
    return int(length)


def lcg_sequence(length):
    """Raw integer LCG sequence ``(v_0, ..., v_{L-1})``.

    Returns an ``int64`` array while the recurrence fits in 64-bit
    arithmetic and an ``object`` array of Python ints beyond that.
    """
    L = _check_length(length)
    if L <= INT64_SAFE_LENGTH:
        return kernels.lcg_int64(L)
    a, b, c = L + 2, L + 3, L * L
    out = np.empty(L, dtype=object)
    v = L + 1
    out[0] = v
    for k in range(1, L):
        v = (a * v + b) % c
        out[k] = v
    return out


def standardize_sequence(seq):
    """Standardise a raw sequence to zero mean and unit sample std."""
    L = len(seq)
    if seq.dtype == object:
        # exact integer moments, then a single rounding each
        total = sum(int(x) for x in seq)
        mean = total / L
        centered = np.array([int(x) * L - total for x in seq], dtype=object)
        ss = sum(int(d) * int(d) for d in centered)
        if ss == 0:
            raise DegenerateSequenceError(L)
        std = (ss / (L * L * (L - 1))) ** 0.5
        return (np.array([float(x) for x in seq]) - mean) / std
    x = seq.astype(np.float64)
    if np.all(seq == seq[0]):
        raise DegenerateSequenceError(L)
    mean = x.mean()
    std = x.std(ddof=1)
    return (x - mean) / std


def standardized_tensor(dims):
    """Standardised LCG tensor of shape ``dims`` (row-major fill).

    >>> standardized_tensor((2, 3)).shape
    (2, 3)
    """
    dims = tuple(int(n) for n in dims)
    if any(n < 1 for n in dims):
        raise InvalidLengthError(f"all dimensions must be positive, got {dims}")
    L = prod(dims)
    return standardize_sequence(lcg_sequence(L)).reshape(dims)


def projection_weights(channels, omega, patch_side):
    """Per-channel projection matrices, shape ``(C, omega, J*J + 1)``."""
    return standardized_tensor((channels, omega, patch_side * patch_side + 1))
