"""Orthogonal-group machinery: generator sets for K_u = <P_n, T_u>, seeded
random sampling, vector orbits, exact group orders via a stabilizer chain on
the vector action, and the closed-form order of O_n(q) for odd q.

Matrices act on row vectors from the right; points of the action are vectors
in GF(q)^n encoded as base-q integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import prod

import numpy as np

from .field import PrimeField, legendre_symbol
from .matrix import (
    BinaryVector4,
    FqMatrix,
    is_orthogonal,
    permutation_matrix,
    transvection_matrix,
)

DEFAULT_POINT_CAP = 1 << 24
DEFAULT_WORD_FACTOR = 8


class OrbitCapExceeded(RuntimeError):
    """Orbit closure was not reached below the requested cap."""


class ActionTooLarge(ValueError):
    """q**n exceeds the point cap for the vector action."""


@dataclass(frozen=True)
class GeneratorSet:
    """Orthogonal matrices generating a matrix group; permutation generators
    of P_n plus (for n >= 4) one transvection with weight-4 support u."""

    field: PrimeField
    n: int
    u: BinaryVector4 | None
    generators: tuple[FqMatrix, ...]

    def __post_init__(self):
        for g in self.generators:
            if not is_orthogonal(g):
                raise ValueError("all generators must be orthogonal")


def ku_generators(n: int, field: PrimeField, u: BinaryVector4 | None = None) -> GeneratorSet:
    """Generators of K_u: the transposition (0 1), the n-cycle, and (for
    n >= 4) the transvection determined by u (default support {0,1,2,3}).

    For n <= 3 no weight-4 vector fits and the set generates P_n only."""
    if n < 1:
        raise ValueError("n must be positive")
    gens: list[FqMatrix] = []
    if n == 1:
        gens.append(FqMatrix.identity(field, 1))
    else:
        gens.append(permutation_matrix([1, 0] + list(range(2, n)), field))
        gens.append(permutation_matrix([(i + 1) % n for i in range(n)], field))
    if n >= 4:
        if u is None:
            u = BinaryVector4(n, (0, 1, 2, 3))
        elif u.n != n:
            raise ValueError(f"support vector has length {u.n}, expected {n}")
        gens.append(transvection_matrix(u, field))
    else:
        u = None
    return GeneratorSet(field=field, n=n, u=u, generators=tuple(gens))


def random_orthogonal(gens: GeneratorSet, word_length: int, seed) -> FqMatrix:
    """Product of word_length generators chosen uniformly (with replacement)
    by a seeded RNG; identical seed gives an identical matrix."""
    if word_length < 1:
        raise ValueError("word_length must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m = rng.choice(gens.generators)
    for _ in range(word_length - 1):
        m = m @ rng.choice(gens.generators)
    return m


def orbit(v, gens: GeneratorSet, cap: int = 1 << 20) -> set[tuple[int, ...]]:
    """BFS closure of {v} under right multiplication by the generators."""
    q = gens.field.q
    start = tuple(int(x) % q for x in v)
    if len(start) != gens.n:
        raise ValueError(f"vector length {len(start)} != n = {gens.n}")
    mats = [g.entries for g in gens.generators]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for m in mats:
                img = tuple(
                    sum(w[i] * m[i][j] for i in range(gens.n)) % q for j in range(gens.n)
                )
                if img not in seen:
                    if len(seen) >= cap:
                        raise OrbitCapExceeded(f"orbit exceeds cap {cap}")
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


# -- stabilizer chain ----------------------------------------------------------


def _mat_inv_mod(m: np.ndarray, q: int) -> np.ndarray:
    inv = FqMatrix(PrimeField(q), m.tolist()).inverse()
    return np.array(inv.entries, dtype=np.int64)


class _Level:
    __slots__ = ("base_vec", "orbit", "vecs", "reps", "rep_invs")

    def __init__(self, base_vec, orbit, vecs, reps, rep_invs):
        self.base_vec = base_vec
        self.orbit = orbit  # point -> index
        self.vecs = vecs
        self.reps = reps
        self.rep_invs = rep_invs


def _orbit_transversal(base_vec, gens, q, powers) -> _Level:
    n = base_vec.shape[0]
    eye = np.eye(n, dtype=np.int64)
    vecs = [base_vec]
    reps = [eye]
    rep_invs = [eye]
    pts = {int(base_vec @ powers): 0}
    frontier = [0]
    while frontier:
        fv = np.stack([vecs[i] for i in frontier])
        fr = np.stack([reps[i] for i in frontier])
        fi = np.stack([rep_invs[i] for i in frontier])
        nxt = []
        for g, g_inv in gens:
            imgs = (fv @ g) % q
            img_pts = imgs @ powers
            fresh = [j for j, p in enumerate(img_pts.tolist()) if p not in pts]
            if not fresh:
                continue
            new_reps = np.einsum("bij,jk->bik", fr[fresh], g) % q
            new_invs = np.einsum("ij,bjk->bik", g_inv, fi[fresh]) % q
            for pos, j in enumerate(fresh):
                p = int(img_pts[j])
                if p in pts:  # duplicate within this batch
                    continue
                pts[p] = len(vecs)
                vecs.append(imgs[j])
                reps.append(new_reps[pos])
                rep_invs.append(new_invs[pos])
                nxt.append(pts[p])
        frontier = nxt
    return _Level(base_vec, pts, np.stack(vecs), np.stack(reps), np.stack(rep_invs))


def _sift_batch(batch: np.ndarray, levels: list[_Level], start: int, q: int, powers):
    """Strip a batch of group elements through levels[start:]; return the
    non-identity residues (matrices that failed membership or survived)."""
    n = batch.shape[1]
    eye = np.eye(n, dtype=np.int64)
    residues = []
    for lvl in levels[start:]:
        if batch.shape[0] == 0:
            return residues
        imgs = (lvl.base_vec @ batch) % q  # broadcasts over the batch: (b, n)
        img_pts = (imgs @ powers).tolist()
        idx = [lvl.orbit.get(p, -1) for p in img_pts]
        member = [j for j, i in enumerate(idx) if i >= 0]
        for j, i in enumerate(idx):
            if i < 0:
                residues.append(batch[j])
        if not member:
            return residues
        tails = lvl.rep_invs[[idx[j] for j in member]]
        batch = np.einsum("bij,bjk->bik", batch[member], tails) % q
    if batch.shape[0]:
        nonid = np.nonzero((batch != eye).any(axis=(1, 2)))[0]
        residues.extend(batch[j] for j in nonid)
    return residues


def _schreier_sims_order(mats: list[np.ndarray], n: int, q: int, point_cap: int) -> int:
    if q**n > point_cap:
        raise ActionTooLarge(f"q^n = {q}^{n} exceeds point cap {point_cap}")
    powers = q ** np.arange(n, dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    basis = [eye[i].copy() for i in range(n)]

    strong: list[tuple[np.ndarray, np.ndarray, int]] = []  # (mat, inv, tag)
    seen_keys: set[bytes] = set()
    base: list[np.ndarray] = []

    def add_strong(m: np.ndarray) -> bool:
        if np.array_equal(m, eye):
            return False
        key = m.tobytes()
        if key in seen_keys:
            return False
        # tag = first chain level whose base point m moves
        tag = None
        for t, b in enumerate(base):
            if not np.array_equal((b @ m) % q, b):
                tag = t + 1
                break
        if tag is None:
            moved = next(i for i in range(n) if not np.array_equal(m[i], eye[i]))
            base.append(basis[moved])
            tag = len(base)
        seen_keys.add(key)
        strong.append((m, _mat_inv_mod(m, q), tag))
        return True

    for m in mats:
        add_strong(m % q)
    if not strong:
        return 1

    while True:
        levels = []
        level_gens = []
        for t in range(1, len(base) + 1):
            s_t = [(g, gi) for g, gi, tag in strong if tag >= t]
            level_gens.append(s_t)
            levels.append(_orbit_transversal(base[t - 1], s_t, q, powers))
        # Deepest level first: fixing the bottom of the chain early keeps the
        # strong generating set small, as in the classical one-at-a-time
        # algorithm.  After the first new residue, rebuild everything.
        added = False
        for t in range(len(levels), 0, -1):
            lvl, s_t = levels[t - 1], level_gens[t - 1]
            orbit_pts = lvl.vecs
            for g, _ in s_t:
                heads = np.einsum("bij,jk->bik", lvl.reps, g) % q
                img_pts = (((orbit_pts @ g) % q) @ powers).tolist()
                idx = [lvl.orbit[p] for p in img_pts]
                tails = lvl.rep_invs[idx]
                schreier = np.einsum("bij,bjk->bik", heads, tails) % q
                for res in _sift_batch(schreier, levels, t, q, powers):
                    if add_strong(res):
                        added = True
                        break
                if added:
                    break
            if added:
                break
        if not added:
            return prod(len(lvl.orbit) for lvl in levels)


def group_order(gens: GeneratorSet, point_cap: int = DEFAULT_POINT_CAP) -> int:
    """Exact order of the generated matrix group via a stabilizer chain with
    standard-basis base points; exact integer arithmetic throughout."""
    mats = [np.array(g.entries, dtype=np.int64) for g in gens.generators]
    return _schreier_sims_order(mats, gens.n, gens.field.q, point_cap)


def orthogonal_group_order_formula(n: int, field: PrimeField) -> int:
    """|O_n(q)| for odd prime q, closed form.

    Odd n = 2m+1: 2 q^(m^2) prod(q^(2i)-1).  Even n = 2m: the identity form
    has type eps = legendre((-1)^m), giving 2 q^(m(m-1)) (q^m - eps) prod."""
    q = field.q
    if q == 2:
        raise ValueError("closed form covers odd q only")
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 2
    m = n // 2
    if n % 2:
        return 2 * q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    eps = legendre_symbol((-1) ** m, field)
    return 2 * q ** (m * (m - 1)) * (q**m - eps) * prod(q ** (2 * i) - 1 for i in range(1, m))


@dataclass(frozen=True)
class GroupOrderReport:
    """Observed orders of K_u and O_n(q) with their exact index."""

    n: int
    q: int
    ku_order: int
    on_order: int
    index: int = dc_field(init=False)

    def __post_init__(self):
        if self.on_order % self.ku_order:
            raise ValueError("K_u order does not divide the full group order")
        object.__setattr__(self, "index", self.on_order // self.ku_order)


def conjecture_probe(n: int, field: PrimeField, point_cap: int = DEFAULT_POINT_CAP) -> GroupOrderReport:
    """Compute |K_u| and |O_n(q)| and report the index without asserting it."""
    ku = group_order(ku_generators(n, field), point_cap=point_cap)
    on = orthogonal_group_order_formula(n, field)
    return GroupOrderReport(n=n, q=field.q, ku_order=ku, on_order=on)


# -- reflections (harness sampling support) -------------------------------------


def reflection(v, field: PrimeField) -> FqMatrix:
    """The reflection across the hyperplane of an anisotropic vector v:
    R = I - (2 / v.v) v^T v; symmetric orthogonal involution of det -1."""
    q = field.q
    vv = sum(x * x for x in v) % q
    if vv == 0:
        raise ValueError("reflection needs an anisotropic vector")
    coef = 2 * field.inverse(vv) % q
    n = len(v)
    ent = [
        [((1 if i == j else 0) - coef * v[i] * v[j]) % q for j in range(n)]
        for i in range(n)
    ]
    return FqMatrix(field, ent)


def all_orthogonal(n: int, field: PrimeField, cap: int = 10**6) -> list[FqMatrix]:
    """Every element of O_n(q) by brute force over all n x n matrices.

    Only feasible for tiny n (the q^(n^2) candidate count is capped)."""
    q = field.q
    total = q ** (n * n)
    if total > cap:
        raise ValueError(f"q^(n^2) = {total} exceeds cap {cap}")
    out = []
    for code_int in range(total):
        x = code_int
        ent = []
        for _ in range(n):
            row = []
            for _ in range(n):
                row.append(x % q)
                x //= q
            ent.append(row)
        m = FqMatrix(field, ent)
        if is_orthogonal(m):
            out.append(m)
    return out
