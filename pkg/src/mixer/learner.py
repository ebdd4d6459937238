"""Closed-form ridge decoders for the Direct and Mixed branches.

Both branches solve ``min_W ||X - W B||_F^2 + gamma ||W||_F^2`` whose
minimiser is ``X B^T (B B^T + gamma I)^{-1}``. The system is solved by a
Cholesky factorisation of ``B B^T + gamma I``; the explicit inverse is only
used as an oracle in tests.

The two Gram products ``B B^T`` and ``X B^T`` do not depend on ``gamma``,
so :class:`BranchStats` keeps them around and regularisation sweeps only
repeat the small ``(omega+1) x (omega+1)`` solves.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import DimensionError, InvalidInputError, InvalidRegularizationError


def _check_gamma(gamma):
    if not np.isfinite(gamma) or gamma <= 0:
        raise InvalidRegularizationError(f"regularisation must be > 0, got {gamma!r}")


def ridge_from_gram(cross, gram, gamma):
    """Solve ``W (gram + gamma I) = cross`` for ``W``.

    ``cross`` is ``targets @ basis.T`` (r x q), ``gram`` is
    ``basis @ basis.T`` (q x q).
    """
    _check_gamma(gamma)
    q = gram.shape[0]
    A = gram + gamma * np.eye(q)
    factor = cho_factor(A, lower=False, check_finite=False)
    return cho_solve(factor, cross.T, check_finite=False).T


def ridge_solve(targets, basis, gamma):
    """Regularised least-squares decoder mapping ``basis`` onto ``targets``."""
    _check_gamma(gamma)
    targets = np.asarray(targets, dtype=np.float64)
    basis = np.asarray(basis, dtype=np.float64)
    if targets.ndim != 2 or basis.ndim != 2 or targets.shape[1] != basis.shape[1]:
        raise DimensionError(
            f"targets {targets.shape} and basis {basis.shape} must share the column count"
        )
    if basis.shape[1] < 1:
        raise DimensionError("ridge_solve needs at least one sample column")
    if not (np.all(np.isfinite(targets)) and np.all(np.isfinite(basis))):
        raise InvalidInputError("ridge_solve received non-finite values")
    return ridge_from_gram(targets @ basis.T, basis @ basis.T, gamma)


def _check_pairs(patches, embeddings):
    if len(patches) != len(embeddings) or len(patches) == 0:
        raise DimensionError(
            f"got {len(patches)} patch matrices and {len(embeddings)} embeddings"
        )


def mixed_embedding(embeddings):
    """Channel average of the embeddings, summed in channel order."""
    S = np.array(embeddings[0], dtype=np.float64, copy=True)
    for Z in embeddings[1:]:
        S += Z
    return S / len(embeddings)


def direct_branch(patches, embeddings, gamma_direct):
    """One decoder per channel, each reconstructing its own patches."""
    _check_pairs(patches, embeddings)
    return [ridge_solve(X, Z, gamma_direct) for X, Z in zip(patches, embeddings)]


def mixed_branch(patches, embeddings, gamma_mixed):
    """One decoder per channel, each reconstructing from the shared average."""
    _check_pairs(patches, embeddings)
    S = mixed_embedding(embeddings)
    return [ridge_solve(X, S, gamma_mixed) for X in patches]


@dataclass(frozen=True)
class BranchStats:
    """Regularisation-independent products for one image and one omega.

    ``direct_cross[k] = X_k Z_k^T``, ``direct_gram[k] = Z_k Z_k^T``,
    ``mixed_cross[k] = X_k S^T`` and ``mixed_gram = S S^T``.
    """

    direct_cross: tuple
    direct_gram: tuple
    mixed_cross: tuple
    mixed_gram: np.ndarray

    @classmethod
    def from_embeddings(cls, patches, embeddings, direct=True, mixed=True):
        _check_pairs(patches, embeddings)
        for X, Z in zip(patches, embeddings):
            if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Z))):
                raise InvalidInputError("non-finite patches or embeddings")
        dc = dg = mc = ()
        mg = None
        if direct:
            dc = tuple(X @ Z.T for X, Z in zip(patches, embeddings))
            dg = tuple(Z @ Z.T for Z in embeddings)
        if mixed:
            S = mixed_embedding(embeddings)
            mc = tuple(X @ S.T for X in patches)
            mg = S @ S.T
        return cls(dc, dg, mc, mg)

    def direct_weights(self, gamma_direct):
        return [ridge_from_gram(c, g, gamma_direct)
                for c, g in zip(self.direct_cross, self.direct_gram)]

    def mixed_weights(self, gamma_mixed):
        return [ridge_from_gram(c, self.mixed_gram, gamma_mixed) for c in self.mixed_cross]
