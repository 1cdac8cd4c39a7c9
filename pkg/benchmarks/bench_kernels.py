"""Compare the compiled codeword-enumeration kernels with the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

import numpy as np

from orthocode import _kernels_py
from orthocode.field import PrimeField, sqrt_minus_one
from orthocode.harness import sample_orthogonal

try:
    from orthocode import _ckernels
except ImportError:
    _ckernels = None

CASES = [
    (5, 6),   # q, k -- 15 625 codewords
    (7, 6),   # 117 649
    (11, 5),  # 161 051
    (13, 5),  # 371 293
    (5, 9),   # 1 953 125
]


def make_generator(q: int, k: int, seed: int) -> np.ndarray:
    rng = random.Random(seed)
    field = PrimeField(q)
    L = sample_orthogonal(k, q, rng, 2 * k)
    alpha = sqrt_minus_one(field) if q % 4 == 1 else 1
    a = (alpha * L) % q
    return np.ascontiguousarray(np.hstack([np.eye(k, dtype=np.int64), a]))


def bench(impl, gen: np.ndarray, q: int, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        impl.weight_distribution(gen, q)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    print(f"{'case':>12} {'codewords':>12} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for q, k in CASES:
        gen = make_generator(q, k, seed=q * 100 + k)
        t_py = bench(_kernels_py, gen, q)
        if _ckernels is None:
            print(f"q={q:>3} k={k:>2} {q**k:>12} {t_py:>9.3f}s {'(n/a)':>10}")
            continue
        t_c = bench(_ckernels, gen, q)
        assert list(_ckernels.weight_distribution(gen, q)) == list(
            _kernels_py.weight_distribution(gen, q)
        )
        print(
            f"q={q:>3} k={k:>2} {q**k:>12} {t_py:>9.3f}s {t_c:>9.3f}s "
            f"{t_py / t_c:>7.1f}x"
        )


if __name__ == "__main__":
    main()
