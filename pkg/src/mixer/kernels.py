"""Backend dispatch for the hot kernels.

``MIXER_BACKEND`` selects the implementation at import time:

* ``numba`` (default when numba imports) -- compiled loops from
  :mod:`mixer._kernels_numba`;
* ``numpy`` -- vectorised fallback from :mod:`mixer._kernels_numpy`.

Both paths agree to rounding error; neither is bit-identical to the other,
so descriptors persisted with one backend should be compared with the same
backend.
"""

import os
import warnings

from . import _kernels_numpy

_requested = os.environ.get("MIXER_BACKEND", "numba").strip().lower()

if _requested not in ("numba", "numpy"):
    raise ImportError(f"MIXER_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numba":
    try:
        from . import _kernels_numba as _impl
    except ImportError:  # pragma: no cover - numba is a declared dependency
        warnings.warn("numba not importable; falling back to the numpy kernels")
        _impl = _kernels_numpy
else:
    _impl = _kernels_numpy

BACKEND = "numba" if _impl is not _kernels_numpy else "numpy"

lcg_int64 = _impl.lcg_int64
im2col_replicate = _impl.im2col_replicate
standardize_rows = _impl.standardize_rows
sigmoid_unit_columns = _impl.sigmoid_unit_columns
column_moments = _impl.column_moments
