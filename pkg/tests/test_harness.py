"""Search campaigns, target-table lookups, and the archive."""

import random

import numpy as np
import pytest

from orthocode.code import LinearCode, is_self_dual, min_distance_exhaustive
from orthocode.field import PrimeField
from orthocode.harness import (
    TABLE2,
    CellTarget,
    CodeRecord,
    InvalidSpecError,
    SearchSpec,
    archive_verify,
    archive_write,
    reproduce_cell,
    run_search,
    sample_orthogonal,
    screen_distance,
)
from orthocode.matrix import FqMatrix


# -- target table -----------------------------------------------------------------


def test_table_spot_checks():
    assert TABLE2[(4, 3)].value == "M"
    assert TABLE2[(4, 5)].value == "A"
    assert TABLE2[(12, 17)].value == 6
    assert TABLE2[(8, 11)].value == "M"
    assert TABLE2[(24, 19)].value == 10
    assert TABLE2[(18, 37)].value == 8
    assert TABLE2[(14, 109)].value == 7
    assert (6, 3) not in TABLE2  # blank cell: no target recorded
    assert TABLE2[(4, 53)].new and not TABLE2[(4, 3)].new


def test_target_distance_resolution():
    assert CellTarget("M").distance(4) == 5
    assert CellTarget("A").distance(4) == 4
    assert CellTarget(6).distance(6) == 6


# -- spec validation ------------------------------------------------------------------


def test_spec_rejects_incompatible_constructions():
    with pytest.raises(InvalidSpecError):
        SearchSpec(7, 3, "eq1", 10)  # q = 3 (mod 4)
    with pytest.raises(InvalidSpecError):
        SearchSpec(7, 3, "eq2", 10)  # odd size
    with pytest.raises(InvalidSpecError):
        SearchSpec(13, 3, "eq1", 0)  # empty budget
    with pytest.raises(InvalidSpecError):
        SearchSpec(13, 3, "bogus", 10)
    with pytest.raises(InvalidSpecError):
        SearchSpec(9, 3, "eq1", 10)  # not prime
    with pytest.raises(InvalidSpecError):
        SearchSpec(11, 3, "extend-four", 10)  # base half-length 1 is odd, q = 3 mod 4
    SearchSpec(13, 3, "extend-two", 10)  # valid


def test_sample_orthogonal_is_orthogonal():
    for q, n in [(5, 3), (13, 5), (7, 4)]:
        rng = random.Random(0)
        L = sample_orthogonal(n, q, rng, 2 * n)
        assert ((L @ L.T) % q == np.eye(n, dtype=np.int64)).all()


# -- search -----------------------------------------------------------------------------


def test_run_search_returns_self_dual_best():
    rec = run_search(SearchSpec(13, 2, "eq1", iters=30, seed=5))
    code = LinearCode(rec.generator)
    assert is_self_dual(code)
    assert min_distance_exhaustive(code) == rec.d
    assert rec.enumerator is not None
    assert rec.enumerator.min_distance() == rec.d


def test_run_search_is_deterministic():
    spec = SearchSpec(11, 4, "eq2", iters=40, seed="rep")
    a = run_search(spec)
    b = run_search(spec)
    assert a.canonical_text() == b.canonical_text()


def test_run_search_extension_construction():
    rec = run_search(SearchSpec(13, 3, "extend-two", iters=4, seed=1))
    code = LinearCode(rec.generator)
    assert is_self_dual(code)
    assert (code.n, code.k) == (6, 3)


def test_singleton_guard_in_record():
    f = PrimeField(3)
    gen = FqMatrix(f, [[1, 0, 1, 1], [0, 1, 2, 1]])
    with pytest.raises(ValueError):
        CodeRecord(3, 4, 2, 4, "MDS", gen, None, False, {}, "t")
    with pytest.raises(ValueError):
        CodeRecord(3, 4, 2, 3, "almost-MDS", gen, None, False, {}, "t")


def test_screen_distance_engines_agree():
    f = PrimeField(7)
    rng = random.Random(3)
    L = sample_orthogonal(4, 7, rng, 8)
    from orthocode.field import two_squares_minus_one

    a, b = two_squares_minus_one(f)
    D = np.array([[a, b, 0, 0], [(7 - b) % 7, a, 0, 0],
                  [0, 0, a, b], [0, 0, (7 - b) % 7, a]], dtype=np.int64)
    gen = np.hstack([np.eye(4, dtype=np.int64), (D @ L) % 7])
    d_ex = screen_distance(gen, 7, "exhaustive", 10**6, 0, f)
    d_bz = screen_distance(gen, 7, "bz", 10**6, 0, f)
    assert d_ex == d_bz
    cert = screen_distance(gen, 7, "mds-cert", 10**6, 0, f)
    assert (cert == 5) == (d_ex == 5)


# -- cell reproduction ----------------------------------------------------------------------


def test_reproduce_cell_unknown_cell():
    with pytest.raises(KeyError):
        reproduce_cell(3, 6)


def test_reproduce_cell_deterministic_mds():
    rep = reproduce_cell(3, 4)
    assert rep.met and rep.achieved_d == 3
    assert rep.record.classification == "MDS"


def test_reproduce_cell_exhaustive_almost_mds():
    # proves no [4,2,3] arises from the rotation construction over GF(5)
    rep = reproduce_cell(5, 4)
    assert rep.met and rep.achieved_d == 2
    assert "exhausted" in rep.note


def test_reproduce_cell_budget_insufficient_reported():
    rep = reproduce_cell(13, 10, budget=3, seed=0)
    if not rep.met:
        assert rep.note == "budget insufficient"
        assert rep.achieved_d < rep.target_d


# -- archive ------------------------------------------------------------------------------------


def _records(count, seed=0):
    recs = []
    t = 0
    while len(recs) < count:
        recs.append(run_search(SearchSpec(13, 2, "eq1", iters=3, seed=f"{seed}:{t}")))
        t += 1
    return recs


def test_archive_round_trip(tmp_path):
    recs = _records(3)
    for r in recs:
        archive_write(r, tmp_path)
    assert archive_verify(tmp_path) == []
    index = (tmp_path / "index.txt").read_text().splitlines()
    assert len(index) == 3
    q, n, k, d, label, path = index[0].split()
    assert (q, n, k) == ("13", "4", "2")
    assert (tmp_path / path / "generator.txt").exists()
    assert (tmp_path / path / "enumerator.txt").exists()
    assert (tmp_path / path / "provenance.json").exists()


def test_archive_flags_tampered_generator(tmp_path):
    rec = _records(1)[0]
    path = archive_write(rec, tmp_path)
    gen_file = path / "generator.txt"
    lines = gen_file.read_text().splitlines()
    row = lines[1].split()
    row[0] = str((int(row[0]) + 1) % 13)
    lines[1] = " ".join(row)
    gen_file.write_text("\n".join(lines) + "\n")
    problems = archive_verify(tmp_path)
    assert len(problems) == 1
    assert path.name in problems[0]


def test_archive_flags_wrong_index_distance(tmp_path):
    rec = _records(1)[0]
    archive_write(rec, tmp_path)
    index = tmp_path / "index.txt"
    parts = index.read_text().split()
    parts[3] = str(int(parts[3]) - 1)  # lie about d
    parts[4] = "other" if parts[4] != "other" else "MDS"
    index.write_text(" ".join(parts) + "\n")
    assert archive_verify(tmp_path) != []


def test_archive_name_collisions_get_suffixes(tmp_path):
    rec = _records(1)[0]
    p1 = archive_write(rec, tmp_path)
    p2 = archive_write(rec, tmp_path)
    assert p1 != p2 and p2.name.startswith(p1.name)
    assert archive_verify(tmp_path) == []


def test_archive_missing_index(tmp_path):
    assert archive_verify(tmp_path) != []
