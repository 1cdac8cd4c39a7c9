"""Exact arithmetic in GF(q) for prime q, plus the small number-theoretic solvers
the code constructions need (square roots of -1, sums of squares).

Elements are least non-negative residues held in machine ints.  The modulus is
capped well below the 64-bit overflow point so products of residues never need
big-integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

# Far beyond the largest field the search campaigns use (q = 109), but small
# enough that q*q fits comfortably in a 64-bit word.
Q_CAP = 1 << 20


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(q), q prime and <= 2**20."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int):
            raise TypeError(f"modulus must be an int, got {type(self.q).__name__}")
        if self.q > Q_CAP:
            raise ValueError(f"modulus {self.q} exceeds the supported cap {Q_CAP}")
        if not _is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")

    # -- element arithmetic ------------------------------------------------

    def reduce(self, x: int) -> int:
        return x % self.q

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.q

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.q

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.q

    def neg(self, x: int) -> int:
        return (-x) % self.q

    def inverse(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.q}")
        return pow(x, self.q - 2, self.q)

    def __str__(self):
        return f"GF({self.q})"


def theta(field: PrimeField) -> int:
    """(q-1)/2 as a field element; the transvection scaling constant."""
    if field.q == 2:
        raise ValueError("theta is undefined for q = 2")
    return (field.q - 1) // 2


def legendre_symbol(x: int, field: PrimeField) -> int:
    """+1 for nonzero squares, -1 for non-squares, 0 for zero (Euler's criterion)."""
    q = field.q
    if q == 2:
        raise ValueError("Legendre symbol needs an odd prime modulus")
    x %= q
    if x == 0:
        return 0
    e = pow(x, (q - 1) // 2, q)
    return 1 if e == 1 else -1


def sqrt_minus_one(field: PrimeField) -> int:
    """Smallest a with a*a = -1 mod q; only exists when q = 1 (mod 4)."""
    q = field.q
    if q % 4 != 1:
        raise ValueError(f"no square root of -1 mod {q}")
    for a in range(1, q):
        if a * a % q == q - 1:
            return a
    raise AssertionError("unreachable: q = 1 (mod 4) always has a root of -1")


def two_squares_minus_one(field: PrimeField) -> tuple[int, int]:
    """Deterministic (a, b) with a^2 + b^2 = -1 mod q, for any odd prime q.

    For q = 1 (mod 4) the pair (sqrt_minus_one(q), 0) is returned; otherwise
    the lexicographically smallest pair with a <= b.
    """
    q = field.q
    if q == 2:
        raise ValueError("need an odd prime modulus")
    if q % 4 == 1:
        return sqrt_minus_one(field), 0
    target = q - 1
    for a in range(q):
        aa = a * a % q
        for b in range(a, q):
            if (aa + b * b) % q == target:
                return a, b
    raise AssertionError("unreachable: -1 is always a sum of two squares mod an odd prime")


def four_squares_zero(field: PrimeField) -> tuple[int, int, int, int]:
    """Non-trivial (a, b, c, d) with a^2+b^2+c^2+d^2 = 0 mod q (odd prime q)."""
    a, b = two_squares_minus_one(field)
    return a, b, 1, 0
