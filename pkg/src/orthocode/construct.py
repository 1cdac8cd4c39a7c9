"""Constructions of self-dual codes from orthogonal matrices.

A generator matrix (I_n | A) spans a self-dual code exactly when A A^T = -I.
For q = 1 (mod 4) such A arise by scaling an orthogonal matrix by a square
root of -1; for any odd q they arise from block-diagonal rotation matrices
built from a solution of a^2 + b^2 = -1.  The set of valid A is a coset of
O_n(q), so multiplying on the right by orthogonal matrices random-walks
within it ("diffusion").
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .code import LinearCode
from .field import PrimeField, sqrt_minus_one, two_squares_minus_one
from .matrix import FqMatrix, is_neg_orthogonal, is_orthogonal


class WitnessInvariantError(AssertionError):
    """A constructed matrix failed A A^T = -I; indicates a construction bug."""


@dataclass(frozen=True)
class NegOrthogonalWitness:
    """A matrix with A A^T = -I plus the provenance that produced it."""

    matrix: FqMatrix
    provenance: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not is_neg_orthogonal(self.matrix):
            raise WitnessInvariantError("witness fails A A^T = -I")

    @property
    def n(self) -> int:
        return self.matrix.rows


def from_witness(w: NegOrthogonalWitness) -> LinearCode:
    """The self-dual [2n, n] code with generator (I_n | A)."""
    n = w.n
    field = w.matrix.field
    eye = FqMatrix.identity(field, n)
    rows = [list(eye.entries[i]) + list(w.matrix.entries[i]) for i in range(n)]
    return LinearCode(FqMatrix(field, rows))


def build_eq1(L: FqMatrix, field: PrimeField, alpha: int | None = None) -> NegOrthogonalWitness:
    """A = alpha * L with alpha^2 = -1; needs q = 1 (mod 4) and orthogonal L."""
    if field.q % 4 != 1:
        raise ValueError(f"q = {field.q} has no square root of -1")
    if not is_orthogonal(L):
        raise ValueError("L must be orthogonal")
    if alpha is None:
        alpha = sqrt_minus_one(field)
    a = L.scale(alpha)
    return NegOrthogonalWitness(a, {"construction": "eq1", "q": field.q, "alpha": alpha})


def rotation_block(field: PrimeField, alpha: int | None = None, beta: int | None = None) -> FqMatrix:
    """D_0 = [[a, b], [-b, a]] with a^2 + b^2 = -1."""
    if alpha is None or beta is None:
        alpha, beta = two_squares_minus_one(field)
    q = field.q
    if (alpha * alpha + beta * beta) % q != q - 1:
        raise ValueError("alpha^2 + beta^2 must be -1")
    return FqMatrix(field, [[alpha, beta], [(-beta) % q, alpha]])


def build_eq2(
    L: FqMatrix,
    field: PrimeField,
    alpha: int | None = None,
    beta: int | None = None,
) -> NegOrthogonalWitness:
    """A = diag(D_0, ..., D_0) L for orthogonal L of even size; any odd q."""
    if L.rows % 2:
        raise ValueError("L must have even size")
    if not is_orthogonal(L):
        raise ValueError("L must be orthogonal")
    d0 = rotation_block(field, alpha, beta)
    half = L.rows // 2
    ent = [[0] * L.rows for _ in range(L.rows)]
    for b in range(half):
        for i in range(2):
            for j in range(2):
                ent[2 * b + i][2 * b + j] = d0.entries[i][j]
    dn = FqMatrix(field, ent)
    a = dn @ L
    return NegOrthogonalWitness(
        a,
        {
            "construction": "eq2",
            "q": field.q,
            "alpha": d0.entries[0][0],
            "beta": d0.entries[0][1],
        },
    )


def build_eq3(
    L: FqMatrix,
    field: PrimeField,
    alpha: int | None = None,
    beta: int | None = None,
) -> NegOrthogonalWitness:
    """A = [[aL, bL], [-bL^T, aL^T]] for orthogonal L; any odd q."""
    if not is_orthogonal(L):
        raise ValueError("L must be orthogonal")
    if alpha is None or beta is None:
        alpha, beta = two_squares_minus_one(field)
    q = field.q
    if (alpha * alpha + beta * beta) % q != q - 1:
        raise ValueError("alpha^2 + beta^2 must be -1")
    n = L.rows
    lt = L.transpose()
    ent = []
    for i in range(n):
        ent.append(
            [alpha * x % q for x in L.entries[i]] + [beta * x % q for x in L.entries[i]]
        )
    for i in range(n):
        ent.append(
            [(-beta * x) % q for x in lt.entries[i]] + [alpha * x % q for x in lt.entries[i]]
        )
    return NegOrthogonalWitness(
        FqMatrix(field, ent),
        {"construction": "eq3", "q": field.q, "alpha": alpha, "beta": beta},
    )


def diffuse_eq4(w: NegOrthogonalWitness, Ls: list[FqMatrix]) -> NegOrthogonalWitness:
    """Right-multiply the witness by orthogonal factors L_1 ... L_r; stays in
    the coset, so the result is again a valid witness."""
    a = w.matrix
    for L in Ls:
        if L.rows != a.cols:
            raise ValueError("diffusion factor has incompatible size")
        if not is_orthogonal(L):
            raise ValueError("diffusion factors must be orthogonal")
        a = a @ L
    prov = dict(w.provenance)
    prov["diffusion_steps"] = prov.get("diffusion_steps", 0) + len(Ls)
    return NegOrthogonalWitness(a, prov)
