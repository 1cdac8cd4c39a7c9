"""CLI contract: subcommands, flags, and exit codes."""

from click.testing import CliRunner

from orthocode.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_search_prints_record():
    res = run("search", "--q", "13", "--n", "2", "--construction", "eq1",
              "--iters", "20", "--seed", "1")
    assert res.exit_code == 0
    assert "over GF(13)" in res.output
    assert "weight enumerator:" in res.output


def test_search_invalid_spec_exits_2():
    res = run("search", "--q", "7", "--n", "3", "--construction", "eq1", "--iters", "5")
    assert res.exit_code == 2
    assert "invalid spec" in res.output


def test_search_writes_archive(tmp_path):
    out = tmp_path / "arc"
    res = run("search", "--q", "13", "--n", "2", "--construction", "eq2",
              "--iters", "10", "--seed", "2", "--out", str(out))
    assert res.exit_code == 0
    assert (out / "index.txt").exists()


def test_cell_met_exits_0():
    res = run("cell", "--q", "3", "--n", "2")
    assert res.exit_code == 0
    assert "met" in res.output


def test_cell_unknown_exits_2():
    res = run("cell", "--q", "3", "--n", "3")
    assert res.exit_code == 2


def test_cell_budget_insufficient_exits_1():
    res = run("cell", "--q", "13", "--n", "5", "--iters", "2", "--seed", "0")
    if "NOT met" in res.output:
        assert res.exit_code == 1
    else:
        assert res.exit_code == 0


def test_extend_command():
    res = run("extend", "--q", "13", "--n", "3", "--construction", "extend-two",
              "--iters", "3", "--seed", "1")
    assert res.exit_code == 0
    assert "over GF(13)" in res.output


def test_group_order_both_engines():
    res = run("group", "order", "--q", "3", "--n", "6")
    assert res.exit_code == 0
    assert res.output.count("26127360") == 4  # aligned block + key=value block


def test_group_orbit():
    res = run("group", "orbit", "--q", "3", "--n", "6")
    assert res.exit_code == 0
    assert "orbit_size=252" in res.output


def test_group_probe():
    res = run("group", "probe", "--q", "5", "--n", "5")
    assert res.exit_code == 0
    assert "index=1" in res.output


def test_verify_self_dual_file(tmp_path):
    gen = tmp_path / "g.txt"
    gen.write_text("3 2 4\n1 0 1 1\n0 1 2 1\n")
    res = run("verify", str(gen))
    assert res.exit_code == 0
    assert "self-dual: True" in res.output
    assert "minimum distance: 3" in res.output


def test_verify_non_self_dual_exits_1(tmp_path):
    gen = tmp_path / "g.txt"
    gen.write_text("3 1 2\n1 0\n")
    res = run("verify", str(gen))
    assert res.exit_code == 1
    assert "self-dual: False" in res.output


def test_verify_unreadable_exits_io(tmp_path):
    gen = tmp_path / "g.txt"
    gen.write_text("3 2 2\n1 0\n")  # truncated
    res = run("verify", str(gen))
    assert res.exit_code == 3


def test_archive_check(tmp_path):
    out = tmp_path / "arc"
    run("search", "--q", "13", "--n", "2", "--construction", "eq1",
        "--iters", "5", "--seed", "4", "--out", str(out))
    res = run("archive", "check", "--dir", str(out))
    assert res.exit_code == 0
    assert "archive clean" in res.output
    # corrupt and re-check
    idx = out / "index.txt"
    parts = idx.read_text().split()
    parts[3] = "1"
    parts[4] = "other"
    idx.write_text(" ".join(parts) + "\n")
    res = run("archive", "check", "--dir", str(out))
    assert res.exit_code == 1
