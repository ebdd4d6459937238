"""LDA classifier (SVD solver) and leave-one-out accuracy."""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateScatterError,
    DimensionError,
    InsufficientClassDataError,
    InvalidInputError,
)

RANK_TOL = 1e-4


@dataclass(frozen=True)
class LdaModel:
    classes: np.ndarray      # original label values, ascending
    means: np.ndarray        # K x m
    scalings: np.ndarray     # m x r whitening transform
    xbar: np.ndarray         # overall mean, m
    log_priors: np.ndarray   # K
    projected_means: np.ndarray  # K x r

    @property
    def rank(self):
        return self.scalings.shape[1]

    def transform(self, X):
        return (np.atleast_2d(X) - self.xbar) @ self.scalings

    def decision_function(self, X):
        W = self.transform(X)
        d = W[:, None, :] - self.projected_means[None, :, :]
        return -0.5 * np.einsum("nkr,nkr->nk", d, d) + self.log_priors


def _validate(features, labels, min_per_class):
    X = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise DimensionError(f"features {X.shape} and labels {y.shape} disagree")
    if X.shape[0] == 0:
        raise InvalidInputError("no samples")
    if not np.all(np.isfinite(X)):
        raise InvalidInputError("features contain non-finite values")
    classes, y_idx, counts = np.unique(y, return_inverse=True, return_counts=True)
    small = np.flatnonzero(counts < min_per_class)
    if small.size:
        k = classes[small[0]]
        raise InsufficientClassDataError(
            f"class {k} has {counts[small[0]]} sample(s); at least {min_per_class} required",
            class_index=int(k),
        )
    return X, y_idx, classes


def lda_fit(features, labels):
    """Fit LDA with uniform priors through an SVD of the within-class scatter.

    Features are scaled by their within-class std before the SVD; singular
    values below ``RANK_TOL * max`` are discarded, so collinear features are
    tolerated.
    """
    X, y, classes = _validate(features, labels, 2)
    n, m = X.shape
    K = len(classes)
    if n <= K:
        raise InsufficientClassDataError(f"need more samples ({n}) than classes ({K})")
    means = np.zeros((K, m))
    np.add.at(means, y, X)
    means /= np.bincount(y, minlength=K)[:, None]
    Xc = X - means[y]
    std = Xc.std(axis=0)
    std[std == 0] = 1.0
    _, S, Vt = np.linalg.svd(Xc / std / np.sqrt(n - K), full_matrices=False)
    if S.size == 0 or S[0] == 0:
        raise DegenerateScatterError("within-class scatter is zero; features are degenerate")
    r = int(np.sum(S > RANK_TOL * S[0]))
    scalings = (Vt[:r] / std).T / S[:r]
    xbar = X.mean(axis=0)
    log_priors = np.full(K, -np.log(K))
    projected = (means - xbar) @ scalings
    return LdaModel(classes, means, scalings, xbar, log_priors, projected)


def lda_predict(model, x):
    """Predict labels; ties go to the lowest class index."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != model.means.shape[1]:
        raise DimensionError(
            f"expected {model.means.shape[1]} features, got {X.shape[1]}"
        )
    pred = model.classes[np.argmax(model.decision_function(X), axis=1)]
    return pred[0] if single else pred


def loo_predictions(features, labels, jobs=1):
    """Leave-one-out predictions, fold ``i`` holding out sample ``i``."""
    from .pipeline import map_ordered

    X, _, _ = _validate(features, labels, 3)
    y = np.asarray(labels)
    n = X.shape[0]

    def fold(i):
        keep = np.arange(n) != i
        return lda_predict(lda_fit(X[keep], y[keep]), X[i])

    return np.asarray(map_ordered(fold, range(n), jobs))


def loo_accuracy(features, labels, jobs=1):
    """Fraction of samples correctly classified under leave-one-out LDA."""
    pred = loo_predictions(features, labels, jobs)
    return float(np.mean(pred == np.asarray(labels)))
