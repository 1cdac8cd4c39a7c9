"""Linear-code core: duality, self-duality predicates, weight enumeration,
minimum distance (exhaustive oracle + Brouwer-Zimmermann workhorse), and MDS
classification via the all-submatrices-nonsingular criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import kernels
from .field import PrimeField
from .matrix import FqMatrix, det_mod, rref

ENUM_CAP = 10**8


class EnumerationTooLarge(ValueError):
    """q**k exceeds the enumeration cap."""


class DistanceBudgetExceeded(RuntimeError):
    """The Brouwer-Zimmermann engine ran out of work budget.

    Carries the bounds proven so far, so a budget abort is never mistaken
    for a result."""

    def __init__(self, lower: int, upper: int):
        super().__init__(f"distance budget exhausted: {lower} <= d <= {upper}")
        self.lower = lower
        self.upper = upper


class LinearCode:
    """An [n, k] code over GF(q) held as a full-rank generator matrix."""

    __slots__ = ("field", "n", "generator")

    def __init__(self, generator: FqMatrix):
        if generator.rows and generator.rank() != generator.rows:
            raise ValueError("generator matrix must have full row rank")
        object.__setattr__(self, "field", generator.field)
        object.__setattr__(self, "n", generator.cols)
        object.__setattr__(self, "generator", generator)

    def __setattr__(self, name, value):
        raise AttributeError("LinearCode is immutable")

    @property
    def k(self) -> int:
        return self.generator.rows

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over GF({self.field.q}))"

    def __eq__(self, other):
        """Equality as row spaces, not as generator matrices."""
        if not isinstance(other, LinearCode):
            return NotImplemented
        if (self.field, self.n, self.k) != (other.field, other.n, other.k):
            return False
        stacked = FqMatrix(self.field, list(self.generator.entries) + list(other.generator.entries))
        return stacked.rank() == self.k

    def __hash__(self):
        canon, _ = rref(self.generator)
        return hash((self.field.q, self.n, canon.entries))

    def contains_code(self, other: "LinearCode") -> bool:
        stacked = FqMatrix(self.field, list(self.generator.entries) + list(other.generator.entries))
        return stacked.rank() == self.k


@dataclass(frozen=True)
class WeightEnumerator:
    """Exact counts (A_0, ..., A_n) of codewords by Hamming weight."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("A_0 must be 1")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("negative coefficient")

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    def min_distance(self) -> int:
        for i, c in enumerate(self.coefficients):
            if i and c:
                return i
        return 0  # zero-dimensional code

    def total(self) -> int:
        return sum(self.coefficients)

    def to_text(self, q: int, k: int) -> str:
        """Archive format: 'q n k' then the n+1 coefficients."""
        return f"{q} {self.n} {k}\n" + " ".join(map(str, self.coefficients)) + "\n"

    @classmethod
    def from_text(cls, text: str) -> tuple["WeightEnumerator", int, int, int]:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        q, n, k = map(int, lines[0].split())
        coeffs = list(map(int, lines[1].split()))
        if len(coeffs) != n + 1:
            raise ValueError("coefficient count does not match n")
        return cls(tuple(coeffs)), q, n, k


# -- systematic form and duality ---------------------------------------------


def systematic_form(code: LinearCode) -> tuple[LinearCode, tuple[int, ...]]:
    """Equivalent code with generator (I_k | A) plus the column permutation used.

    The permutation maps new positions to original columns; it is the identity
    whenever the leading k x k block is already invertible."""
    g = code.generator
    reduced, pivots = rref(g)
    perm = list(pivots) + [c for c in range(code.n) if c not in pivots]
    if perm == list(range(code.n)):
        return LinearCode(reduced), tuple(perm)
    ent = [[row[c] for c in perm] for row in reduced.entries]
    return LinearCode(FqMatrix(code.field, ent)), tuple(perm)


def dual(code: LinearCode) -> LinearCode:
    """The dual code under the Euclidean inner product."""
    n, k = code.n, code.k
    field = code.field
    if k == 0:
        return LinearCode(FqMatrix.identity(field, n))
    reduced, pivots = rref(code.generator)
    free = [c for c in range(n) if c not in pivots]
    col_of_pivot = {c: r for r, c in enumerate(pivots)}
    rows = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for c in pivots:
            v[c] = (-reduced.entries[col_of_pivot[c]][f]) % field.q
        rows.append(v)
    if not rows:
        return _zero_code(field, n)
    return LinearCode(FqMatrix(field, rows))


def _zero_code(field: PrimeField, n: int) -> LinearCode:
    m = FqMatrix(field, [])
    object.__setattr__(m, "cols", n)
    return LinearCode(m)


def zero_code(field: PrimeField, n: int) -> LinearCode:
    """The zero code of length n (dimension 0)."""
    return _zero_code(field, n)


def is_self_orthogonal(code: LinearCode) -> bool:
    g = code.generator
    return g @ g.transpose() == FqMatrix.zero(code.field, code.k, code.k)


def is_self_dual(code: LinearCode) -> bool:
    return 2 * code.k == code.n and is_self_orthogonal(code)


# -- weight enumeration and MacWilliams ---------------------------------------


def weight_enumerator(code: LinearCode, cap: int = ENUM_CAP) -> WeightEnumerator:
    """Exact weight distribution by full codeword enumeration."""
    q, k, n = code.field.q, code.k, code.n
    if q**k > cap:
        raise EnumerationTooLarge(f"q^k = {q}^{k} exceeds cap {cap}")
    if k == 0:
        return WeightEnumerator((1,) + (0,) * n)
    gen = kernels.as_gen_array(code.generator.entries)
    return WeightEnumerator(tuple(kernels.weight_distribution(gen, q)))


def _krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum(
        (-1) ** l * (q - 1) ** (j - l) * comb(i, l) * comb(n - i, j - l)
        for l in range(min(i, j) + 1)
    )


def macwilliams_transform(we: WeightEnumerator, q: int, k: int, n: int) -> WeightEnumerator:
    """The dual code's weight enumerator via the MacWilliams identity."""
    coeffs = we.coefficients
    if len(coeffs) != n + 1 or sum(coeffs) != q**k:
        raise ValueError("enumerator inconsistent with (q, k, n)")
    qk = q**k
    out = []
    for j in range(n + 1):
        s = sum(coeffs[i] * _krawtchouk(j, i, n, q) for i in range(n + 1))
        if s % qk:
            raise ValueError(f"non-integer MacWilliams coefficient at weight {j}")
        out.append(s // qk)
    return WeightEnumerator(tuple(out))


# -- minimum distance ----------------------------------------------------------


def min_distance_exhaustive(code: LinearCode, cap: int = ENUM_CAP, abort_below: int = 0) -> int:
    """Exact minimum nonzero weight by enumerating all q**k codewords."""
    q, k = code.field.q, code.k
    if k == 0:
        raise ValueError("zero-dimensional code has no minimum distance")
    if q**k > cap:
        raise EnumerationTooLarge(f"q^k = {q}^{k} exceeds cap {cap}")
    gen = kernels.as_gen_array(code.generator.entries)
    return kernels.min_weight(gen, q, abort_below)


def _information_sets(code: LinearCode):
    """Greedy family of information sets with disjoint fresh columns.

    Yields (systematic_rows, rank_deficiency) where systematic_rows is the
    RREF of the generator pivoted on that set and rank_deficiency counts the
    pivots that had to be reused from earlier sets."""
    n, k = code.n, code.k
    used: set[int] = set()
    sets = []
    while len(used) < n:
        order = [c for c in range(n) if c not in used] + sorted(used)
        reduced, pivots = rref(code.generator, column_order=order)
        fresh = [p for p in pivots if p not in used]
        if not fresh:
            break
        sets.append((reduced, k - len(fresh)))
        used.update(fresh)
    return sets


def min_distance_bz(
    code: LinearCode,
    abort_below: int = 0,
    work_budget: int = 10**9,
) -> int | None:
    """Exact minimum distance by the Brouwer-Zimmermann method.

    Enumerates low-weight information-set combinations across a family of
    information sets with disjoint fresh columns, tightening a lower bound
    until it meets the best weight seen.  Returns None as soon as a codeword
    of weight <= abort_below turns up (candidate screening); raises
    DistanceBudgetExceeded when the work budget runs out first."""
    if code.k == 0:
        raise ValueError("zero-dimensional code has no minimum distance")
    q, k, n = code.field.q, code.k, code.n
    sets = _information_sets(code)
    gens = [kernels.as_gen_array(m.entries) for m, _ in sets]
    deficits = [d for _, d in sets]
    upper = n
    lower = 0
    work = 0
    for w in range(1, k + 1):
        for gen, deficit in zip(gens, deficits):
            found = kernels.min_weight_weight_w(gen, q, w, abort_below)
            work += comb(k, w) * (q - 1) ** (w - 1)
            if found < upper:
                upper = found
                if upper <= abort_below:
                    return None
        lower = sum(max(0, (w + 1) - d) for d in deficits)
        if lower >= upper:
            return upper
        if work > work_budget:
            raise DistanceBudgetExceeded(lower, upper)
    return upper


# -- MDS classification --------------------------------------------------------


def is_mds_systematic(code: LinearCode) -> bool:
    """True iff every square submatrix of the systematic A-block is nonsingular,
    i.e. the code is MDS (d = n - k + 1).  Works at sizes where enumeration is
    impossible."""
    sys_code, _ = systematic_form(code)
    k, n = code.k, code.n
    q = code.field.q
    a = [row[k:] for row in sys_code.generator.entries]
    r = n - k
    for s in range(1, min(k, r) + 1):
        for rows_idx in combinations(range(k), s):
            sub_rows = [a[i] for i in rows_idx]
            for cols_idx in combinations(range(r), s):
                if det_mod([[row[c] for c in cols_idx] for row in sub_rows], q) == 0:
                    return False
    return True


def classify(code: LinearCode, d: int) -> tuple[str, int]:
    """Classification of a self-dual [2n, n, d] code against the Singleton bound.

    Returns (label, slack) with label in {"MDS", "almost-MDS", "other"} and
    slack = (n+1) - d."""
    if 2 * code.k != code.n:
        raise ValueError("classification is defined for self-dual-length codes")
    half = code.k
    if d > half + 1:
        raise ValueError(f"d = {d} violates the Singleton bound {half + 1}")
    if d == half + 1:
        label = "MDS"
    elif d == half:
        label = "almost-MDS"
    else:
        label = "other"
    return label, half + 1 - d
