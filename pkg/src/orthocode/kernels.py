"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback has identical
semantics.  Set ORTHOCODE_PURE=1 to force the fallback (used by the
benchmark and by tests that compare the two backends).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("ORTHOCODE_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def as_gen_array(rows) -> np.ndarray:
    """Generator rows as the C-contiguous int64 array the kernels expect."""
    arr = np.ascontiguousarray(np.array([list(r) for r in rows], dtype=np.int64))
    if arr.ndim != 2:
        arr = arr.reshape(len(rows), -1)
    return arr


def weight_distribution(gen: np.ndarray, q: int) -> list[int]:
    return list(_impl.weight_distribution(gen, q))


def min_weight(gen: np.ndarray, q: int, abort_below: int = 0) -> int:
    return int(_impl.min_weight(gen, q, abort_below))


def min_weight_weight_w(gen: np.ndarray, q: int, w: int, abort_below: int = 0) -> int:
    return int(_impl.min_weight_weight_w(gen, q, w, abort_below))
