"""Dense exact linear algebra over GF(q).

Matrices are immutable row-major grids of residues.  Everything here targets
the small dimensions the constructions use (n up to ~24), so the
implementation favours determinism and clarity over asymptotics: Gaussian
elimination always picks the first nonzero pivot scanning top to bottom.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import PrimeField, theta


class SingularMatrixError(ValueError):
    """Raised when a matrix that must be invertible is singular."""


class FqMatrix:
    """Immutable matrix over GF(q); entries are least non-negative residues."""

    __slots__ = ("field", "rows", "cols", "entries", "_rank")

    def __init__(self, field: PrimeField, entries):
        q = field.q
        ent = tuple(tuple(int(x) % q for x in row) for row in entries)
        rows = len(ent)
        cols = len(ent[0]) if rows else 0
        if any(len(r) != cols for r in ent):
            raise ValueError("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "_rank", None)

    def __setattr__(self, name, value):
        raise AttributeError("FqMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FqMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: PrimeField, rows: int, cols: int) -> "FqMatrix":
        return cls(field, [[0] * cols for _ in range(rows)])

    # -- basic algebra -----------------------------------------------------

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.cols} vs {other.rows}")
        q = self.field.q
        bt = list(zip(*other.entries)) if other.entries else []
        out = [
            [sum(a * b for a, b in zip(row, col)) % q for col in bt]
            for row in self.entries
        ]
        if self.rows and other.cols == 0:
            out = [[] for _ in range(self.rows)]
        return FqMatrix(self.field, out)

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        q = self.field.q
        return FqMatrix(
            self.field,
            [
                [(a + b) % q for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self) -> "FqMatrix":
        q = self.field.q
        return FqMatrix(self.field, [[(-a) % q for a in row] for row in self.entries])

    def scale(self, c: int) -> "FqMatrix":
        q = self.field.q
        c %= q
        return FqMatrix(self.field, [[c * a % q for a in row] for row in self.entries])

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.field, list(zip(*self.entries)) if self.entries else [])

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        return (
            isinstance(other, FqMatrix)
            and self.field == other.field
            and self.entries == other.entries
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.field.q, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(map(str, r)) for r in self.entries)
        return f"FqMatrix(q={self.field.q}, {self.rows}x{self.cols}: {body})"

    # -- elimination-based operations ---------------------------------------

    def rank(self) -> int:
        r = object.__getattribute__(self, "_rank")
        if r is None:
            _, pivots = rref(self)
            r = len(pivots)
            object.__setattr__(self, "_rank", r)
        return r

    def inverse(self) -> "FqMatrix":
        if not self.is_square():
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        q = self.field.q
        aug = [list(self.entries[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = pow(aug[col][col], q - 2, q)
            aug[col] = [x * inv % q for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[col])]
        return FqMatrix(self.field, [row[n:] for row in aug])

    def det(self) -> int:
        if not self.is_square():
            raise ValueError("determinant needs a square matrix")
        return det_mod(self.entries, self.field.q)

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        """Archive format: 'q rows cols' then one line per row, LF endings."""
        lines = [f"{self.field.q} {self.rows} {self.cols}"]
        lines += [" ".join(map(str, row)) for row in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FqMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        q, rows, cols = map(int, lines[0].split())
        ent = [list(map(int, ln.split())) for ln in lines[1 : 1 + rows]]
        if len(ent) != rows or any(len(r) != cols for r in ent):
            raise ValueError("malformed matrix text")
        return cls(PrimeField(q), ent)


def det_mod(entries, q: int) -> int:
    """Determinant of a small square grid of residues, by elimination."""
    a = [list(row) for row in entries]
    n = len(a)
    d = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = -d
        d = d * a[col][col] % q
        inv = pow(a[col][col], q - 2, q)
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv % q
                a[r] = [(x - f * y) % q for x, y in zip(a[r], a[col])]
    return d % q


def rref(m: FqMatrix, column_order=None):
    """Reduced row echelon form with a deterministic pivot rule.

    Columns are scanned in `column_order` (default: left to right); within a
    column the first nonzero entry below the current pivot row wins.  Returns
    (rref_matrix, pivot_columns) with pivot columns in scan order.
    """
    q = m.field.q
    a = [list(row) for row in m.entries]
    nrows = len(a)
    order = list(column_order) if column_order is not None else list(range(m.cols))
    pivots = []
    prow = 0
    for col in order:
        if prow == nrows:
            break
        piv = next((r for r in range(prow, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[prow], a[piv] = a[piv], a[prow]
        inv = pow(a[prow][col], q - 2, q)
        a[prow] = [x * inv % q for x in a[prow]]
        for r in range(nrows):
            if r != prow and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % q for x, y in zip(a[r], a[prow])]
        pivots.append(col)
        prow += 1
    return FqMatrix(m.field, a), pivots


@dataclass(frozen=True)
class BinaryVector4:
    """A {0,1}-vector of length n with exactly four ones, given by its support."""

    n: int
    support: tuple[int, int, int, int]

    def __post_init__(self):
        sup = tuple(sorted(int(i) for i in self.support))
        if len(sup) != 4 or len(set(sup)) != 4:
            raise ValueError("support must be 4 distinct indices")
        if sup[0] < 0 or sup[-1] >= self.n:
            raise ValueError(f"support {sup} does not fit in length {self.n}")
        object.__setattr__(self, "support", sup)

    def to_tuple(self) -> tuple[int, ...]:
        v = [0] * self.n
        for i in self.support:
            v[i] = 1
        return tuple(v)


def transvection_matrix(u: BinaryVector4, field: PrimeField) -> FqMatrix:
    """The symmetric orthogonal involution I + theta * u^T u (I + u^T u if q=2)."""
    n = u.n
    if n < 4:
        raise ValueError("transvections need n >= 4")
    q = field.q
    th = 1 if q == 2 else theta(field)
    vec = u.to_tuple()
    ent = [
        [( (1 if i == j else 0) + th * vec[i] * vec[j]) % q for j in range(n)]
        for i in range(n)
    ]
    return FqMatrix(field, ent)


def permutation_matrix(perm, field: PrimeField) -> FqMatrix:
    """0/1 matrix P with e_i P = e_perm(i); always orthogonal."""
    perm = list(perm)
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of 0..n-1")
    ent = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        ent[i][j] = 1
    return FqMatrix(field, ent)


def is_orthogonal(a: FqMatrix) -> bool:
    """True iff A A^T = I over GF(q)."""
    if not a.is_square():
        raise ValueError("orthogonality is defined for square matrices")
    return a @ a.transpose() == FqMatrix.identity(a.field, a.rows)


def is_neg_orthogonal(a: FqMatrix) -> bool:
    """True iff A A^T = -I over GF(q)."""
    if not a.is_square():
        raise ValueError("orthogonality is defined for square matrices")
    return a @ a.transpose() == -FqMatrix.identity(a.field, a.rows)
