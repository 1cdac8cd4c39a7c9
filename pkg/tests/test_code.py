"""Linear-code core: duality, weight enumeration, distance engines, and the
MDS classification."""

import random

import numpy as np
import pytest

from orthocode.code import (
    EnumerationTooLarge,
    LinearCode,
    WeightEnumerator,
    classify,
    dual,
    is_mds_systematic,
    is_self_dual,
    is_self_orthogonal,
    macwilliams_transform,
    min_distance_bz,
    min_distance_exhaustive,
    systematic_form,
    weight_enumerator,
    zero_code,
)
from orthocode.field import PrimeField
from orthocode.harness import sample_orthogonal
from orthocode.matrix import FqMatrix


def random_code(q, k, n, seed):
    rng = random.Random(seed)
    while True:
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        m = FqMatrix(PrimeField(q), rows)
        if m.rank() == k:
            return LinearCode(m)


def random_self_dual(q, k, seed):
    rng = random.Random(seed)
    f = PrimeField(q)
    L = sample_orthogonal(k, q, rng, 2 * k)
    if q % 4 == 1:
        from orthocode.field import sqrt_minus_one

        a = (sqrt_minus_one(f) * L) % q
    else:
        from orthocode.construct import build_eq2

        return None if k % 2 else LinearCode(
            FqMatrix(f, [
                [1 if i == j else 0 for j in range(k)] + list(r)
                for i, r in enumerate(
                    build_eq2(FqMatrix(f, L.tolist()), f).matrix.entries)
            ])
        )
    gen = np.hstack([np.eye(k, dtype=np.int64), a])
    return LinearCode(FqMatrix(f, gen.tolist()))


# -- structure ------------------------------------------------------------------


def test_generator_must_have_full_rank():
    f = PrimeField(3)
    with pytest.raises(ValueError):
        LinearCode(FqMatrix(f, [[1, 2, 0], [2, 1, 0]]))


def test_row_space_equality():
    f = PrimeField(5)
    c1 = LinearCode(FqMatrix(f, [[1, 2, 3], [0, 1, 4]]))
    c2 = LinearCode(FqMatrix(f, [[1, 3, 2], [0, 1, 4]]))  # row1 + row2
    assert c1 == c2
    assert hash(c1) == hash(c2)
    assert c1 != LinearCode(FqMatrix(f, [[1, 0, 0], [0, 1, 0]]))


def test_dual_dimension_and_orthogonality():
    for q, k, n, seed in [(3, 2, 5, 0), (5, 3, 7, 1), (7, 2, 6, 2)]:
        c = random_code(q, k, n, seed)
        d = dual(c)
        assert d.k == n - k
        prod = c.generator @ d.generator.transpose()
        assert prod == FqMatrix.zero(c.field, k, n - k)
        assert dual(d) == c


def test_dual_of_full_space_is_zero_code():
    f = PrimeField(3)
    c = LinearCode(FqMatrix.identity(f, 3))
    z = dual(c)
    assert z.k == 0 and z.n == 3
    assert dual(zero_code(f, 3)) == c


def test_systematic_form_is_equivalent():
    c = random_code(7, 3, 6, 4)
    sys_c, perm = systematic_form(c)
    assert sorted(perm) == list(range(6))
    left = [tuple(row[:3]) for row in sys_c.generator.entries]
    assert left == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    # same weight distribution (column permutations preserve weights)
    assert weight_enumerator(sys_c) == weight_enumerator(c)


def test_self_duality_predicates():
    f = PrimeField(3)
    c = LinearCode(FqMatrix(f, [[1, 0, 1, 1], [0, 1, 2, 1]]))
    assert is_self_orthogonal(c)
    assert is_self_dual(c)
    sub = LinearCode(FqMatrix(f, [[1, 0, 1, 1]]))
    assert is_self_orthogonal(sub)
    assert not is_self_dual(sub)


# -- weight enumeration -----------------------------------------------------------


def test_weight_enumerator_oracles():
    f = PrimeField(3)
    c = LinearCode(FqMatrix(f, [[1, 0, 1, 1], [0, 1, 2, 1]]))
    assert weight_enumerator(c).coefficients == (1, 0, 0, 8, 0)
    f5 = PrimeField(5)
    c5 = LinearCode(FqMatrix(f5, [[1, 2]]))
    assert weight_enumerator(c5).coefficients == (1, 0, 4)
    # eq: A = 2*I_3 over GF(5), oracle by independent brute force
    g = [[1, 0, 0, 2, 0, 0], [0, 1, 0, 0, 2, 0], [0, 0, 1, 0, 0, 2]]
    c6 = LinearCode(FqMatrix(f5, g))
    assert weight_enumerator(c6).coefficients == (1, 0, 12, 0, 48, 0, 64)


def test_weight_enumerator_cap():
    c = random_code(13, 3, 6, 0)
    with pytest.raises(EnumerationTooLarge):
        weight_enumerator(c, cap=100)


def test_enumerator_text_round_trip():
    we = WeightEnumerator((1, 0, 0, 8, 0))
    text = we.to_text(3, 2)
    back, q, n, k = WeightEnumerator.from_text(text)
    assert (back, q, n, k) == (we, 3, 4, 2)


def test_enumerator_validation():
    with pytest.raises(ValueError):
        WeightEnumerator((0, 1))
    with pytest.raises(ValueError):
        WeightEnumerator((1, -1))


def test_macwilliams_matches_explicit_dual():
    for q, k, n, seed in [(3, 2, 5, 3), (5, 2, 4, 7), (7, 2, 5, 9)]:
        c = random_code(q, k, n, seed)
        lhs = macwilliams_transform(weight_enumerator(c), q, k, n)
        rhs = weight_enumerator(dual(c))
        assert lhs == rhs


def test_macwilliams_fixed_point_on_self_dual():
    for q, k, seed in [(5, 2, 0), (5, 3, 1), (13, 2, 2), (3, 2, 3)]:
        c = random_self_dual(q, k, seed)
        if c is None:
            continue
        we = weight_enumerator(c)
        assert macwilliams_transform(we, q, k, c.n) == we


# -- distances ----------------------------------------------------------------------


def test_bz_matches_exhaustive_on_random_codes():
    for seed in range(30):
        q = [3, 5, 7, 11, 13][seed % 5]
        k = 2 + seed % 3
        c = random_code(q, k, 2 * k + seed % 3, seed)
        assert min_distance_bz(c) == min_distance_exhaustive(c)


def test_bz_abort_screening():
    c = random_code(5, 3, 8, 11)
    d = min_distance_exhaustive(c)
    assert min_distance_bz(c, abort_below=d) is None
    assert min_distance_bz(c, abort_below=d - 1) == d


def test_distance_of_zero_dimensional_code_rejected():
    with pytest.raises(ValueError):
        min_distance_exhaustive(zero_code(PrimeField(3), 4))


# -- MDS classification ----------------------------------------------------------------


def test_mds_criterion_matches_distance():
    for seed in range(40):
        q = [3, 5, 7, 11][seed % 4]
        k = 2 + seed % 2
        c = random_code(q, k, k + 2 + seed % 2, seed)
        d = min_distance_exhaustive(c)
        assert is_mds_systematic(c) == (d == c.n - c.k + 1)


def test_classify_labels():
    f = PrimeField(3)
    c = LinearCode(FqMatrix(f, [[1, 0, 1, 1], [0, 1, 2, 1]]))
    assert classify(c, 3) == ("MDS", 0)
    assert classify(c, 2) == ("almost-MDS", 1)
    assert classify(c, 1) == ("other", 2)
    with pytest.raises(ValueError):
        classify(c, 4)  # beyond the Singleton bound
    with pytest.raises(ValueError):
        classify(LinearCode(FqMatrix(f, [[1, 0, 1]])), 1)  # not half-dimension
