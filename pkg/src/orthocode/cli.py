"""Command-line interface.

Exit codes: 0 success, 1 target not met within budget, 2 invalid
specification, 3 I/O error.
"""

from __future__ import annotations

import sys

import click

from .code import (
    LinearCode,
    is_self_dual,
    min_distance_bz,
    min_distance_exhaustive,
    weight_enumerator,
)
from .field import PrimeField
from .group import conjecture_probe, group_order, ku_generators, orbit
from .group import orthogonal_group_order_formula
from .harness import (
    DEFAULT_MAX_ENUM,
    InvalidSpecError,
    SearchSpec,
    archive_verify,
    archive_write,
    reproduce_cell,
    run_search,
)
from .matrix import FqMatrix

EXIT_NOT_MET = 1
EXIT_INVALID = 2
EXIT_IO = 3


def _field(q: int) -> PrimeField:
    try:
        return PrimeField(q)
    except ValueError as exc:
        click.echo(f"invalid field: {exc}", err=True)
        sys.exit(EXIT_INVALID)


def _print_record(rec) -> None:
    click.echo(
        f"[{rec.n},{rec.k},{rec.d}] over GF({rec.q}) -- {rec.classification}"
        + (" (MDS-certified)" if rec.mds_certified else "")
    )
    click.echo(rec.generator.to_text(), nl=False)
    if rec.enumerator is not None:
        click.echo("weight enumerator: " + " ".join(map(str, rec.enumerator.coefficients)))


@click.group()
def main():
    """Self-dual codes over GF(q) from orthogonal matrices."""


@main.command()
@click.option("--q", type=int, required=True, help="field size (odd prime)")
@click.option("--n", type=int, required=True, help="half-length of the target code")
@click.option("--construction", default="eq1", show_default=True)
@click.option("--iters", type=int, default=1000, show_default=True)
@click.option("--word-length", type=int, default=None)
@click.option("--seed", default="0", show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None, help="archive directory")
@click.option("--engine", type=click.Choice(["auto", "exhaustive", "bz", "mds-cert"]),
              default="auto", show_default=True)
@click.option("--max-enum", type=int, default=DEFAULT_MAX_ENUM, show_default=True)
def search(q, n, construction, iters, word_length, seed, out_dir, engine, max_enum):
    """Randomized search for a self-dual [2n, n] code with high distance."""
    try:
        spec = SearchSpec(q, n, construction, iters, word_length, seed, engine, max_enum)
        record = run_search(spec)
    except InvalidSpecError as exc:
        click.echo(f"invalid spec: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    _print_record(record)
    if out_dir:
        try:
            path = archive_write(record, out_dir)
        except OSError as exc:
            click.echo(f"archive write failed: {exc}", err=True)
            sys.exit(EXIT_IO)
        click.echo(f"archived at {path}")


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True, help="half-length of the cell")
@click.option("--iters", type=int, default=10**5, show_default=True, help="sample budget")
@click.option("--seed", default="0", show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None)
@click.option("--max-enum", type=int, default=DEFAULT_MAX_ENUM, show_default=True)
def cell(q, n, iters, seed, out_dir, max_enum):
    """Reproduce one published best-distance table cell."""
    try:
        report = reproduce_cell(q, 2 * n, budget=iters, seed=seed, max_enum=max_enum)
    except KeyError as exc:
        click.echo(f"no target recorded: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    except InvalidSpecError as exc:
        click.echo(f"invalid spec: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    click.echo(report.summary())
    if report.record is not None and out_dir:
        try:
            archive_write(report.record, out_dir)
        except OSError as exc:
            click.echo(f"archive write failed: {exc}", err=True)
            sys.exit(EXIT_IO)
    if not report.met:
        sys.exit(EXIT_NOT_MET)


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True, help="half-length of the target code")
@click.option("--construction",
              type=click.Choice(["extend-two", "extend-four", "extend-2+2", "split"]),
              default="extend-two", show_default=True)
@click.option("--iters", type=int, default=100, show_default=True)
@click.option("--seed", default="0", show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None)
@click.option("--max-enum", type=int, default=DEFAULT_MAX_ENUM, show_default=True)
def extend(q, n, construction, iters, seed, out_dir, max_enum):
    """Search via the recursive extend-and-complete constructions."""
    try:
        spec = SearchSpec(q, n, construction, iters, None, seed, "auto", max_enum)
        record = run_search(spec)
    except InvalidSpecError as exc:
        click.echo(f"invalid spec: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    _print_record(record)
    if out_dir:
        try:
            archive_write(record, out_dir)
        except OSError as exc:
            click.echo(f"archive write failed: {exc}", err=True)
            sys.exit(EXIT_IO)


@main.group()
def group():
    """Orthogonal-group computations."""


def _emit_report(pairs: list[tuple[str, object]]) -> None:
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        click.echo(f"{k.ljust(width)}  {v}")
    click.echo("---")
    for k, v in pairs:
        click.echo(f"{k.replace(' ', '_')}={v}")


@group.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--engine", type=click.Choice(["formula", "chain", "both"]),
              default="both", show_default=True)
def order(q, n, engine):
    """|O_n(q)| by the closed formula and/or a stabilizer chain on K_u."""
    field = _field(q)
    pairs: list[tuple[str, object]] = [("n", n), ("q", q)]
    if engine in ("formula", "both"):
        pairs.append(("formula order", orthogonal_group_order_formula(n, field)))
    if engine in ("chain", "both"):
        pairs.append(("K_u chain order", group_order(ku_generators(n, field))))
    _emit_report(pairs)


@group.command("orbit")
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
def orbit_cmd(q, n):
    """Size of the K_u orbit of the first standard basis vector."""
    field = _field(q)
    e1 = tuple([1] + [0] * (n - 1))
    size = len(orbit(e1, ku_generators(n, field)))
    _emit_report([("n", n), ("q", q), ("orbit size", size)])


@group.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
def probe(q, n):
    """Index of K_u in O_n(q), computed, not assumed."""
    field = _field(q)
    rep = conjecture_probe(n, field)
    _emit_report([
        ("n", rep.n), ("q", rep.q),
        ("K_u order", rep.ku_order),
        ("O_n order", rep.on_order),
        ("index", rep.index),
    ])


@main.command()
@click.argument("generator_file", type=click.Path(exists=True))
@click.option("--max-enum", type=int, default=DEFAULT_MAX_ENUM, show_default=True)
def verify(generator_file, max_enum):
    """Check a generator-matrix file: self-duality, distance, classification."""
    try:
        with open(generator_file) as fh:
            gen = FqMatrix.from_text(fh.read())
    except (OSError, ValueError) as exc:
        click.echo(f"cannot read generator: {exc}", err=True)
        sys.exit(EXIT_IO)
    try:
        code = LinearCode(gen)
    except ValueError as exc:
        click.echo(f"invalid generator: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    sd = is_self_dual(code)
    click.echo(f"[{code.n},{code.k}] over GF({code.field.q}); self-dual: {sd}")
    if code.field.q**code.k <= max_enum:
        we = weight_enumerator(code)
        d = we.min_distance()
        click.echo("weight enumerator: " + " ".join(map(str, we.coefficients)))
    else:
        d = min_distance_bz(code)
    click.echo(f"minimum distance: {d}")
    if not sd:
        sys.exit(EXIT_NOT_MET)


@main.group()
def archive():
    """Archive maintenance."""


@archive.command()
@click.option("--dir", "root", type=click.Path(exists=True), required=True)
@click.option("--max-enum", type=int, default=DEFAULT_MAX_ENUM, show_default=True)
def check(root, max_enum):
    """Re-verify every archived record against its index line."""
    problems = archive_verify(root, max_enum=max_enum)
    if problems:
        for p in problems:
            click.echo(p, err=True)
        sys.exit(EXIT_NOT_MET)
    click.echo("archive clean")


if __name__ == "__main__":
    main()
