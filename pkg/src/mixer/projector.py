"""Hyperspherical random projection of patch matrices."""

import numpy as np

from . import kernels
from .errors import DimensionError, TooFewColumnsError

EPS = 1e-10


def standardize_rows(X):
    """Z-score every row using the sample (``n-1``) std plus ``EPS``."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] < 2:
        raise TooFewColumnsError(
            f"row standardisation needs at least 2 columns, got shape {X.shape}"
        )
    return kernels.standardize_rows(X, EPS)


def add_bias(M):
    """Prepend a row of -1 to ``M``."""
    M = np.asarray(M, dtype=np.float64)
    return np.vstack([np.full((1, M.shape[1]), -1.0), M])


def encode(X, psi):
    """Embed a patch matrix on the unit hypersphere.

    Parameters
    ----------
    X : (J^2, HW) array
        Patch matrix of one channel.
    psi : (omega, J^2 + 1) array
        Random projection weights for that channel.

    Returns
    -------
    (omega + 1, HW) array whose first row is -1 and whose remaining columns
    have unit Euclidean norm.
    """
    X = np.asarray(X, dtype=np.float64)
    psi = np.asarray(psi, dtype=np.float64)
    if psi.ndim != 2 or psi.shape[1] != X.shape[0] + 1:
        raise DimensionError(
            f"projection weights must have shape (omega, {X.shape[0] + 1}), "
            f"got {psi.shape}"
        )
    Xb = add_bias(standardize_rows(X))
    P = np.ascontiguousarray(psi @ Xb)
    return add_bias(kernels.sigmoid_unit_columns(P, EPS))
