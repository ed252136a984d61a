"""
ybsolve command line: verify, analyse, retract, construct and enumerate
square-free solutions of the set-theoretic Yang-Baxter equation.

'-' stands for standard input or output wherever a file is expected.
"""

import os
import sys
import tempfile
from typing import List, Optional, Sequence

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ybsolve.construct import FAMILIES, get_family
from ybsolve.enumerate import census, census_to_tsv, enumerate_square_free, min_order_scan
from ybsolve.exceptions import FamilyUsageError, YBSolveError, YbsParseError
from ybsolve.graph import export_dot
from ybsolve.logging_config import get_logger, set_level
from ybsolve.models import SolutionReport
from ybsolve.qset import FLAG_NAMES, QuadraticSet, classify
from ybsolve.report import build_report
from ybsolve.retract import retract_tower
from ybsolve.retract import mpl as mpl_of
from ybsolve.ybs_format import read_ybs, write_ybs

load_dotenv()

logger = get_logger(__name__)

console = Console()
err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_SOLUTION = 2
EXIT_USAGE = 64


class YBSolveGroup(click.Group):
    """Click group with the ybsolve exit codes: usage 64, errors 1."""

    def main(self, *args, **kwargs):
        kwargs.pop("standalone_mode", None)
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_ERROR)
        except click.Abort:
            err_console.print("[red]Aborted[/red]")
            sys.exit(EXIT_ERROR)
        except (YBSolveError, OSError) as exc:
            err_console.print(f"[red]error:[/red] {exc}", highlight=False)
            sys.exit(EXIT_ERROR)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def _load(path: str) -> QuadraticSet:
    try:
        return read_ybs(path)
    except YbsParseError as exc:
        raise click.ClickException(f"{path}: {exc}") from exc


def _emit(text: str, output: Optional[str]) -> None:
    """Write text to stdout or replace the output file in one step."""
    if output is None or output == "-":
        click.echo(text, nl=False)
        return
    directory = os.path.dirname(os.path.abspath(output))
    handle = tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=directory, delete=False, suffix=".tmp")
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, output)
    except OSError:
        if os.path.exists(handle.name):
            os.unlink(handle.name)
        raise
    logger.info("wrote %s", output)


def _yes(value: Optional[bool]) -> str:
    if value is None:
        return "-"
    return "[green]yes[/green]" if value else "[red]no[/red]"


@click.group(cls=YBSolveGroup)
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Override YBSOLVE_LOG_LEVEL for this run")
@click.pass_context
def cli(ctx, log_level):
    """ybsolve - finite square-free solutions of the Yang-Baxter equation"""
    ctx.ensure_object(dict)
    if log_level:
        set_level(log_level)
    ctx.obj = {"log_level": log_level}


@cli.command()
@click.argument("file")
@click.pass_context
def verify(ctx, file):
    """Check the axioms; exit 0 for a square-free solution, 2 otherwise"""
    Q = _load(file)
    flags = classify(Q)

    table = Table(title=f"{file} ({Q.n} elements)")
    table.add_column("Property", style="cyan")
    table.add_column("Holds")
    table.add_column("Witness", style="yellow")
    for name in FLAG_NAMES:
        witness = flags.first_witness.get(name)
        shown = " ".join(Q.labels[i] for i in witness) if witness else "-"
        table.add_row(name, _yes(getattr(flags, name)), shown)
    console.print(table)

    if flags.square_free_solution:
        console.print("[green]✓ square-free solution[/green]")
        return EXIT_OK
    console.print("[red]✗ not a square-free solution[/red]")
    ctx.exit(EXIT_NOT_SOLUTION)


def _print_report(report: SolutionReport) -> None:
    table = Table(title=f"Solution report ({report.n} elements)", show_header=False)
    table.add_column("Field", style="cyan")
    table.add_column("Value")
    table.add_row("square-free solution", _yes(report.square_free_solution))
    table.add_row("orbits", str(len(report.orbits)))
    if report.mpl is not None:
        table.add_row("mpl", str(report.mpl))
    else:
        table.add_row("mpl", report.mpl_note or report.mpl_status.value)
    table.add_row("|𝒢|", "-" if report.group_order is None else str(report.group_order))
    table.add_row("𝒢 abelian", _yes(report.group_abelian))
    table.add_row("sol(𝒢)", "-" if report.sol_group is None else str(report.sol_group))
    table.add_row("sol(G)", "-" if report.sol_structure_group is None else str(report.sol_structure_group))
    if report.abelian_invariants is not None:
        table.add_row("invariants", str(report.abelian_invariants))
    if report.retract_classes:
        table.add_row("retract classes", str(len(report.retract_classes)))
        table.add_row("classes form stu union", _yes(report.retract_classes_stu))
    console.print(table)

    failed = [name for name, holds in report.flags.model_dump().items() if holds is False]
    if failed:
        console.print(f"[yellow]failing laws:[/yellow] {', '.join(failed)}", highlight=False)
    orbit_text = "\n".join("{" + ", ".join(orbit) + "}" for orbit in report.orbits)
    if orbit_text:
        console.print(Panel(orbit_text, title="𝒢-orbits", expand=False))
    for note in report.notes:
        console.print(f"[dim]{note}[/dim]", highlight=False)


@cli.command()
@click.argument("file")
@click.option("--max-group", type=int, default=None, help="Bound on full group enumeration (default YBSOLVE_MAX_GROUP_ENUM)")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report")
@click.pass_context
def analyze(ctx, file, max_group, as_json):
    """Full report: flags, orbits, mpl, group order, solvable lengths"""
    Q = _load(file)
    report = build_report(Q, max_group)
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        _print_report(report)


@cli.command()
@click.argument("file")
@click.option("-k", "levels", type=click.IntRange(min=0), default=1, show_default=True, help="Number of retract steps")
@click.option("-o", "--output", default=None, help="Output file ('-' for stdout)")
@click.pass_context
def retract(ctx, file, levels, output):
    """Write the K-th retract Ret^K"""
    Q = _load(file)
    tower = retract_tower(Q, max_levels=levels)
    retracts = tower.retracts()
    result = retracts[min(levels, len(retracts) - 1)]
    err_console.print(f"[dim]{tower.describe()} after {len(tower.levels)} step(s)[/dim]", highlight=False)
    _emit(write_ybs(result), output)


def _family_help() -> str:
    return "\n".join(f"{f.name} {f.usage}".rstrip() + f": {f.description}" for f in FAMILIES.values())


@cli.command(context_settings={"ignore_unknown_options": True})
@click.argument("family")
@click.argument("args", nargs=-1, type=click.UNPROCESSED)
@click.option("-o", "--output", default=None, help="Output file ('-' for stdout)")
@click.pass_context
def construct(ctx, family, args, output):
    """Build a solution from a named family (see 'construct list')"""
    if family == "list":
        click.echo(_family_help())
        return
    try:
        Q = get_family(family)(args)
    except FamilyUsageError as exc:
        raise click.UsageError(str(exc), ctx) from exc
    logger.info("constructed %s with %d elements", family, Q.n)
    _emit(write_ybs(Q), output)


@cli.command("enumerate")
@click.option("-n", "n", type=click.IntRange(min=1), required=True, help="Order of the solutions")
@click.option("--up-to-iso", is_flag=True, help="Emit one canonical form per isomorphism class")
@click.option("--mpl", "level", type=click.IntRange(min=0), default=None, help="Only solutions of this mpl")
@click.option("--count-only", is_flag=True, help="Print the number of solutions only")
@click.option("--shards", type=click.IntRange(min=1), default=None, help="Worker processes for the shards")
@click.option("--allow-large", is_flag=True, help="Allow orders above YBSOLVE_ENUM_MAX_N")
@click.option("-o", "--output", default=None, help="Output file ('-' for stdout)")
@click.pass_context
def enumerate_command(ctx, n, up_to_iso, level, count_only, shards, allow_large, output):
    """Enumerate square-free solutions of order N"""
    found: List[QuadraticSet] = []
    count = 0
    for Q in enumerate_square_free(n, up_to_iso=up_to_iso, workers=shards, allow_large=allow_large):
        if level is not None and mpl_of(Q) != level:
            continue
        count += 1
        if not count_only:
            found.append(Q)
    if count_only:
        _emit(f"{count}\n", output)
        return
    _emit("\n".join(write_ybs(Q) for Q in found), output)
    err_console.print(f"[dim]{count} solution(s)[/dim]", highlight=False)


@cli.command()
@click.option("--mpl", "level", type=click.IntRange(min=0), required=True, help="Target multipermutation level")
@click.option("--max-n", type=click.IntRange(min=1), required=True, help="Largest order to scan")
@click.option("--shards", type=click.IntRange(min=1), default=None, help="Worker processes for the shards")
@click.option("--allow-large", is_flag=True, help="Allow orders above YBSOLVE_ENUM_MAX_N")
@click.pass_context
def minorder(ctx, level, max_n, shards, allow_large):
    """Least order carrying a square-free solution of the given mpl"""
    found = min_order_scan(level, max_n, workers=shards, allow_large=allow_large)
    click.echo("none" if found is None else str(found))


@cli.command("census")
@click.option("--max-n", type=click.IntRange(min=2), required=True, help="Largest order to scan")
@click.option("--labelled", is_flag=True, help="Count labelled solutions instead of isomorphism classes")
@click.option("--shards", type=click.IntRange(min=1), default=None, help="Worker processes for the shards")
@click.option("--allow-large", is_flag=True, help="Allow orders above YBSOLVE_ENUM_MAX_N")
@click.option("-o", "--output", default=None, help="Output file ('-' for stdout)")
@click.pass_context
def census_command(ctx, max_n, labelled, shards, allow_large, output):
    """Tab-separated statistics per order"""
    rows = census(max_n, up_to_iso=not labelled, workers=shards, allow_large=allow_large)
    _emit(census_to_tsv(rows), output)
    irretractable = sum(row.irretractable for row in rows)
    if irretractable:
        err_console.print(f"[red]{irretractable} irretractable square-free solution(s) found[/red]")
        return EXIT_ERROR
    return EXIT_OK


@cli.command()
@click.argument("file")
@click.option("--loops", is_flag=True, help="Include self-loops")
@click.option("-o", "--output", default=None, help="Output file ('-' for stdout)")
@click.pass_context
def graph(ctx, file, loops, output):
    """DOT export of the action graph"""
    Q = _load(file)
    _emit(export_dot(Q, include_loops=loops), output)


def main(argv: Optional[Sequence[str]] = None) -> None:
    cli.main(args=list(argv) if argv is not None else None, prog_name="ybsolve")


if __name__ == "__main__":
    main()
