"""Recursive constructions: extend a self-dual [2n, n] code by two or four
coordinates into a self-orthogonal code, then complete it back to a self-dual
code by adjoining isotropic vectors from the dual.

Row parity convention: rows are 1-indexed and alternate the two displayed
extension patterns, odd rows taking the (lambda*a, lambda) type and even rows
the (-lambda, lambda*a) type.  All pattern inner products vanish identically,
so the fixed convention only pins down reproducibility.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .code import (
    LinearCode,
    is_self_dual,
    is_self_orthogonal,
    min_distance_bz,
    min_distance_exhaustive,
    systematic_form,
)
from .field import PrimeField, four_squares_zero, sqrt_minus_one
from .matrix import FqMatrix, rref


class DegenerateSplitError(RuntimeError):
    """The minimum-weight codewords already span the whole code."""


class CompletionError(RuntimeError):
    """No self-dual completion was found within the trial budget."""


@dataclass(frozen=True)
class ExtensionPattern:
    """Constants and per-row scalars for one of the extension constructions.

    kind "two": constants (a,) with a^2 = -1.
    kind "four": constants (a, b, c, d) with a^2+b^2+c^2+d^2 = 0, not all zero.
    kind "two-plus-two": constants (a, c) with a^2 = c^2 = -1.
    """

    kind: str
    field: PrimeField
    constants: tuple[int, ...]
    lambdas: tuple[int, ...] | None = None

    def __post_init__(self):
        q = self.field.q
        cs = tuple(c % q for c in self.constants)
        object.__setattr__(self, "constants", cs)
        if self.lambdas is not None:
            object.__setattr__(self, "lambdas", tuple(l % q for l in self.lambdas))
        if self.kind == "two":
            (a,) = cs
            if a * a % q != q - 1:
                raise ValueError("need a^2 = -1")
        elif self.kind == "four":
            a, b, c, d = cs
            if (a * a + b * b + c * c + d * d) % q != 0 or not any(cs):
                raise ValueError("need a non-trivial a^2+b^2+c^2+d^2 = 0")
        elif self.kind == "two-plus-two":
            a, c = cs
            if a * a % q != q - 1 or c * c % q != q - 1:
                raise ValueError("need a^2 = c^2 = -1")
        else:
            raise ValueError(f"unknown pattern kind {self.kind!r}")

    def row_scalars(self, count: int) -> tuple[int, ...]:
        if self.lambdas is None:
            return (1,) * count
        if len(self.lambdas) != count:
            raise ValueError(f"expected {count} row scalars, got {len(self.lambdas)}")
        return self.lambdas


def _default_two(field: PrimeField) -> ExtensionPattern:
    return ExtensionPattern("two", field, (sqrt_minus_one(field),))


def extend_two(code: LinearCode, pattern: ExtensionPattern | None = None) -> LinearCode:
    """Self-orthogonal [2n+2, n, >= d] code from a self-dual [2n, n, d] one by
    appending the two-column patterns; needs q = 1 (mod 4)."""
    if not is_self_dual(code):
        raise ValueError("input must be self-dual")
    field = code.field
    pattern = pattern or _default_two(field)
    if pattern.kind != "two":
        raise ValueError("expected a 'two' pattern")
    (a,) = pattern.constants
    q = field.q
    lams = pattern.row_scalars(code.k)
    rows = []
    for i, row in enumerate(code.generator.entries):
        lam = lams[i]
        ext = (lam * a % q, lam) if i % 2 == 0 else ((-lam) % q, lam * a % q)
        rows.append(list(row) + list(ext))
    out = LinearCode(FqMatrix(field, rows))
    assert is_self_orthogonal(out)
    return out


def _sift_independent(basis_rref: FqMatrix, pivots, vec, q: int):
    """Reduce vec against an RREF basis; the nonzero remainder (or None)."""
    v = list(vec)
    for r, c in enumerate(pivots):
        if v[c]:
            f = v[c]
            v = [(x - f * y) % q for x, y in zip(v, basis_rref.entries[r])]
    return v if any(v) else None


def find_extension_vector(
    rows: list, field: PrimeField, rng: random.Random | None = None, budget: int = 50000
):
    """An isotropic vector in the dual of span(rows) and outside that span.

    Deterministic scan over dual-space combinations unless an RNG is given.
    Returns None if the budget is exhausted."""
    from .code import dual  # local import to avoid a cycle at module load

    q = field.q
    base = LinearCode(FqMatrix(field, rows))
    dual_gen = dual(base).generator
    m = dual_gen.rows
    base_rref, pivots = rref(base.generator)
    total = q**m

    def candidate(idx: int):
        x = idx
        coeffs = []
        for _ in range(m):
            coeffs.append(x % q)
            x //= q
        vec = [0] * dual_gen.cols
        for c, row in zip(coeffs, dual_gen.entries):
            if c:
                vec = [(v + c * r) % q for v, r in zip(vec, row)]
        return vec

    tries = min(total - 1, budget)
    for t in range(1, tries + 1):
        idx = rng.randrange(1, total) if rng is not None else t
        vec = candidate(idx)
        if sum(v * v for v in vec) % q:
            continue
        if _sift_independent(base_rref, pivots, vec, q) is not None:
            return tuple(vec)
    return None


def extend_four(
    code: LinearCode,
    pattern: ExtensionPattern | None = None,
    x=None,
    rng: random.Random | None = None,
) -> LinearCode:
    """Self-orthogonal [2n+4, n+1] code: four-column patterns plus one vector
    x from the dual of the extended code; any odd q."""
    if not is_self_dual(code):
        raise ValueError("input must be self-dual")
    field = code.field
    q = field.q
    if pattern is None:
        pattern = ExtensionPattern("four", field, four_squares_zero(field))
    if pattern.kind != "four":
        raise ValueError("expected a 'four' pattern")
    a, b, c, d = pattern.constants
    lams = pattern.row_scalars(code.k)
    rows = []
    for i, row in enumerate(code.generator.entries):
        lam = lams[i]
        if i % 2 == 0:
            ext = (lam * a, lam * b, lam * c, lam * d)
        else:
            ext = (-lam * b, lam * a, -lam * d, lam * c)
        rows.append(list(row) + [e % q for e in ext])
    if x is None:
        x = find_extension_vector(rows, field, rng=rng)
        if x is None:
            raise ValueError("no valid x supplied or found")
    x = tuple(int(v) % q for v in x)
    if len(x) != code.n + 4:
        raise ValueError("no valid x supplied: wrong length")
    if sum(v * v for v in x) % q:
        raise ValueError("no valid x supplied: not isotropic")
    if any(sum(rv * xv for rv, xv in zip(row, x)) % q for row in rows):
        raise ValueError("no valid x supplied: not in the dual of the extended rows")
    base_rref, pivots = rref(FqMatrix(field, rows))
    if _sift_independent(base_rref, pivots, x, q) is None:
        raise ValueError("no valid x supplied: dependent on the extended rows")
    out = LinearCode(FqMatrix(field, rows + [list(x)]))
    assert is_self_orthogonal(out)
    return out


def extend_two_plus_two(
    code: LinearCode,
    pattern: ExtensionPattern | None = None,
    x=None,
    rng: random.Random | None = None,
) -> LinearCode:
    """Self-orthogonal [2n+4, n+1] code built on the systematic form (I_n | A):
    each A-row gains four columns, and a final row (0 | x | -l, l*c) is added
    with x of length n+2 orthogonal to all extended A-rows and isotropic.
    Needs q = 1 (mod 4)."""
    if not is_self_dual(code):
        raise ValueError("input must be self-dual")
    field = code.field
    q = field.q
    if pattern is None:
        r = sqrt_minus_one(field)
        pattern = ExtensionPattern("two-plus-two", field, (r, r))
    if pattern.kind != "two-plus-two":
        raise ValueError("expected a 'two-plus-two' pattern")
    a, c = pattern.constants
    k = code.k
    lams = pattern.row_scalars(k + 1)
    sys_code, _ = systematic_form(code)
    a_block = [row[k:] for row in sys_code.generator.entries]
    # extended A-rows (length n+2): the A block plus the first two new columns
    ext_a_rows = []
    tail_cols = []
    for i in range(k):
        lam = lams[i]
        if i % 2 == 0:
            first_two = (lam * a % q, lam % q)
            last_two = (lam * c % q, lam % q)
        else:
            first_two = ((-lam) % q, lam * a % q)
            last_two = ((-lam) % q, lam * c % q)
        ext_a_rows.append(list(a_block[i]) + list(first_two))
        tail_cols.append(last_two)
    if x is None:
        x = find_extension_vector(ext_a_rows, field, rng=rng)
        if x is None:
            raise ValueError("no valid x supplied or found")
    x = tuple(int(v) % q for v in x)
    if len(x) != k + 2:
        raise ValueError("no valid x supplied: wrong length")
    if sum(v * v for v in x) % q:
        raise ValueError("no valid x supplied: not isotropic")
    if any(sum(rv * xv for rv, xv in zip(row, x)) % q for row in ext_a_rows):
        raise ValueError("no valid x supplied: not orthogonal to the extended rows")
    lam_last = lams[k]
    rows = []
    for i in range(k):
        ident = [1 if j == i else 0 for j in range(k)]
        rows.append(ident + ext_a_rows[i] + list(tail_cols[i]))
    rows.append([0] * k + list(x) + [(-lam_last) % q, lam_last * c % q])
    out = LinearCode(FqMatrix(field, rows))
    assert is_self_orthogonal(out)
    return out


def _min_weight_span(code: LinearCode, d: int, cap: int):
    """RREF basis of the span of all weight-d codewords."""
    q, k = code.field.q, code.k
    gen = np.array([list(r) for r in code.generator.entries], dtype=np.int64)
    total = q**k
    if total > cap:
        raise ValueError("minimum-weight subcode enumeration exceeds cap")
    basis_rows: list[list[int]] = []
    block = 1 << 14
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.int64)
        msgs = (idx[:, None] // q ** np.arange(k, dtype=np.int64)) % q
        words = (msgs @ gen) % q
        hits = words[np.count_nonzero(words, axis=1) == d]
        for w in hits:
            m = FqMatrix(code.field, basis_rows + [w.tolist()]) if basis_rows else FqMatrix(code.field, [w.tolist()])
            reduced, pivots = rref(m)
            if len(pivots) > len(basis_rows):
                basis_rows = [list(reduced.entries[i]) for i in range(len(pivots))]
                if len(basis_rows) == k:
                    return basis_rows
    return basis_rows


def split_extend(code: LinearCode, pattern: ExtensionPattern | None = None, cap: int = 10**7) -> LinearCode:
    """Two-column extension that zero-pads a basis of the span D of all
    minimum-weight codewords (preserving their weight exactly) and applies the
    two-column patterns to the completing rows only; needs q = 1 (mod 4)."""
    if not is_self_dual(code):
        raise ValueError("input must be self-dual")
    field = code.field
    q = field.q
    pattern = pattern or _default_two(field)
    if pattern.kind != "two":
        raise ValueError("expected a 'two' pattern")
    (a,) = pattern.constants
    d = min_distance_exhaustive(code, cap=cap)
    g_d = _min_weight_span(code, d, cap)
    if len(g_d) == code.k:
        raise DegenerateSplitError("minimum-weight subcode is the whole code")
    # complete g_d to a basis of the code with rows of the generator
    rows = [list(r) for r in g_d]
    for row in code.generator.entries:
        m, pivots = rref(FqMatrix(field, rows + [list(row)]))
        if len(pivots) > len(rows):
            rows.append(list(row))
    assert len(rows) == code.k
    g_e = rows[len(g_d):]
    lams = pattern.row_scalars(len(g_e))
    out_rows = [list(r) + [0, 0] for r in g_d]
    for i, row in enumerate(g_e):
        lam = lams[i]
        ext = (lam * a % q, lam) if i % 2 == 0 else ((-lam) % q, lam * a % q)
        out_rows.append(list(row) + list(ext))
    out = LinearCode(FqMatrix(field, out_rows))
    assert is_self_orthogonal(out)
    return out


def _canonical_text(code: LinearCode) -> str:
    reduced, _ = rref(code.generator)
    return reduced.to_text()


def complete_to_self_dual(
    code: LinearCode,
    trials: int = 20,
    seed: int = 0,
    candidate_budget: int = 400,
) -> LinearCode:
    """Complete a self-orthogonal [N, m] code (m < N/2) to a self-dual [N, N/2]
    code by repeatedly adjoining isotropic dual vectors; among `trials` seeded
    random completions the one with the best minimum distance wins (ties break
    to the lexicographically smallest canonical generator text)."""
    if not is_self_orthogonal(code):
        raise ValueError("input must be self-orthogonal")
    if code.n % 2:
        raise ValueError("self-dual codes need even length")
    if is_self_dual(code):
        return code
    field = code.field
    half = code.n // 2
    best: tuple[int, str, LinearCode] | None = None
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        rows = [list(r) for r in code.generator.entries]
        ok = True
        while len(rows) < half:
            x = find_extension_vector(rows, field, rng=rng, budget=candidate_budget)
            if x is None:
                ok = False
                break
            rows.append(list(x))
        if not ok:
            continue
        cand = LinearCode(FqMatrix(field, rows))
        d = min_distance_bz(cand)
        key = (-d, _canonical_text(cand))
        if best is None or key < (-best[0], best[1]):
            best = (d, _canonical_text(cand), cand)
    if best is None:
        raise CompletionError(f"no completion found in {trials} trials")
    out = best[2]
    assert is_self_dual(out)
    return out
