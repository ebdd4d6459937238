"""Moment-based compression of stacked decoder weights into descriptors."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError, InvalidFusionError, InvalidInputError

FUNCTIONS = ("mean", "std", "skewness", "excess_kurtosis")


@dataclass(frozen=True, eq=False)
class Descriptor:
    """Feature vector plus its block layout.

    ``layout`` lists ``(omega, function)`` for every block of ``omega + 1``
    consecutive values, in storage order.
    """

    values: np.ndarray
    layout: tuple

    def __len__(self):
        return len(self.values)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    @property
    def omegas(self):
        seen = []
        for omega, _ in self.layout:
            if omega not in seen:
                seen.append(omega)
        return tuple(seen)

    def block(self, omega, function):
        """Slice of ``values`` holding one ``(omega, function)`` block."""
        start = 0
        for w, fn in self.layout:
            if (w, fn) == (omega, function):
                return self.values[start:start + w + 1]
            start += w + 1
        raise KeyError((omega, function))


def central_moment(x, r):
    """Population central moment ``mean((x - mean(x))**r)``."""
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size == 0:
        raise InvalidInputError("central moment of an empty vector")
    return float(np.mean((x - x.mean()) ** r))


def compress_column(x, which):
    """Apply one compression function to a vector.

    ``which`` is one of ``FUNCTIONS``. Skewness and excess kurtosis are
    defined as 0 when the variance is below 1e-24.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1, 1)
    if x.size == 0:
        raise InvalidInputError("cannot compress an empty vector")
    try:
        idx = FUNCTIONS.index(which)
    except ValueError:
        raise InvalidInputError(f"unknown compression function {which!r}") from None
    return float(kernels.column_moments(x)[idx, 0])


def stack_weights(direct, mixed):
    """Vertically concatenate decoders: Direct channels first, then Mixed."""
    mats = list(direct) + list(mixed)
    if not mats:
        raise DimensionError("no decoder weights to stack")
    cols = {m.shape[1] for m in mats}
    if len(cols) != 1:
        raise DimensionError(f"decoder weights disagree on column count: {sorted(cols)}")
    return np.vstack(mats)


def assemble_omega(direct, mixed):
    """Descriptor for a single embedding size from both branches' decoders."""
    F = np.ascontiguousarray(stack_weights(direct, mixed))
    omega = F.shape[1] - 1
    values = kernels.column_moments(F).ravel()
    return Descriptor(values, tuple((omega, fn) for fn in FUNCTIONS))


def fuse(omegas):
    """Concatenate descriptors computed at strictly increasing embedding sizes."""
    omegas = list(omegas)
    if not omegas:
        raise InvalidFusionError("nothing to fuse")
    sizes = [w for d in omegas for w in d.omegas]
    if len(set(sizes)) != len(sizes):
        raise InvalidFusionError(f"duplicate embedding sizes in fusion: {sizes}")
    if sizes != sorted(sizes):
        raise InvalidFusionError(f"embedding sizes must be increasing, got {sizes}")
    if len(omegas) == 1:
        return omegas[0]
    values = np.concatenate([d.values for d in omegas])
    layout = tuple(b for d in omegas for b in d.layout)
    return Descriptor(values, layout)


def descriptor_length(embedding_sizes):
    """``4 * sum(omega + 1)`` over the embedding sizes."""
    return len(FUNCTIONS) * sum(w + 1 for w in embedding_sizes)
