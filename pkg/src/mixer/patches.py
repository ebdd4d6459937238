"""Dense patch extraction with replicate padding (im2col over one channel)."""

import numpy as np

from . import kernels
from .errors import InvalidPatchSideError

DEFAULT_PATCH_SIDE = 3


def check_patch_side(J):
    if int(J) != J or J < 3 or J % 2 == 0:
        raise InvalidPatchSideError(f"patch side must be an odd integer >= 3, got {J!r}")
    return int(J)


def pad_replicate(channel, J):
    """Pad an ``H x W`` channel by ``(J-1)/2`` on every side, repeating edges."""
    J = check_patch_side(J)
    return np.pad(np.asarray(channel, dtype=np.float64), (J - 1) // 2, mode="edge")


def extract_patch_matrix(channel, J=DEFAULT_PATCH_SIDE):
    """Return the ``J^2 x HW`` patch matrix of a single channel.

    Column ``r*W + c`` is the ``J x J`` window centred on pixel ``(r, c)``
    of the replicate-padded channel, flattened row-major. Row ``(J^2-1)/2``
    (the patch centre) is therefore the channel itself, flattened.
    """
    J = check_patch_side(J)
    channel = np.ascontiguousarray(channel, dtype=np.float64)
    if channel.ndim != 2:
        raise InvalidPatchSideError(f"expected a 2-D channel, got shape {channel.shape}")
    return kernels.im2col_replicate(channel, J)


def extract_patch_matrices(image, J=DEFAULT_PATCH_SIDE):
    """Patch matrices for every channel of a ``C x H x W`` image."""
    return [extract_patch_matrix(ch, J) for ch in np.asarray(image, dtype=np.float64)]
