"""Pure-python (numpy-vectorized) fallback for the enumeration kernels.

Same contracts as the compiled `_ckernels` extension; selected at import time
by `orthocode.kernels` when the extension is unavailable or disabled.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

_BLOCK = 1 << 15


def _message_block(start: int, stop: int, k: int, q: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, None] // q ** np.arange(k, dtype=np.int64)) % q


def weight_distribution(gen: np.ndarray, q: int) -> list[int]:
    """Exact weight distribution of the row space of `gen` (k x n) by full
    enumeration of all q**k codewords."""
    k, n = gen.shape
    counts = np.zeros(n + 1, dtype=object)
    total = q**k
    for start in range(0, total, _BLOCK):
        msgs = _message_block(start, min(start + _BLOCK, total), k, q)
        words = (msgs @ gen) % q
        wts = np.count_nonzero(words, axis=1)
        counts += np.bincount(wts, minlength=n + 1).astype(object)
    return [int(c) for c in counts]


def min_weight(gen: np.ndarray, q: int, abort_below: int = 0) -> int:
    """Minimum nonzero codeword weight by full enumeration.

    Returns early with the weight found as soon as some nonzero codeword has
    weight <= abort_below (the caller then knows the code cannot beat its
    current best)."""
    k, n = gen.shape
    best = n + 1
    total = q**k
    for start in range(0, total, _BLOCK):
        msgs = _message_block(start, min(start + _BLOCK, total), k, q)
        words = (msgs @ gen) % q
        wts = np.count_nonzero(words, axis=1)
        if start == 0:
            wts = wts[1:]  # skip the zero message
        if wts.size:
            m = int(wts.min())
            if m < best:
                best = m
                if best <= abort_below:
                    return best
    return best


def min_weight_weight_w(gen: np.ndarray, q: int, w: int, abort_below: int = 0) -> int:
    """Minimum codeword weight over combinations of exactly `w` rows of `gen`
    with nonzero coefficients (first coefficient fixed to 1).

    Returns n+1 when w is 0 or exceeds the row count.  Early-aborts like
    min_weight."""
    k, n = gen.shape
    if w < 1 or w > k:
        return n + 1
    best = n + 1
    ncoef = (q - 1) ** (w - 1)
    coeffs = np.ones((ncoef, w), dtype=np.int64)
    if w > 1:
        idx = np.arange(ncoef, dtype=np.int64)
        for p in range(1, w):
            coeffs[:, p] = idx % (q - 1) + 1
            idx //= q - 1
    for comb in combinations(range(k), w):
        words = (coeffs @ gen[list(comb)]) % q
        m = int(np.count_nonzero(words, axis=1).min())
        if m < best:
            best = m
            if best <= abort_below:
                return best
    return best
