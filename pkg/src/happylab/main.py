"""happylab — happy and unhappy vertex solvers, relaxations and rounding."""

from __future__ import annotations

import os
from typing import Optional

import typer

from happylab import __version__
from happylab.commands.check import cmd_check
from happylab.commands.config import config_app, config_int, load_config
from happylab.commands.gap_table import cmd_gap_table
from happylab.commands.gen import cmd_gen
from happylab.commands.info import cmd_info
from happylab.commands.reduce import cmd_reduce
from happylab.commands.solve import cmd_solve
from happylab.commands.validate import cmd_validate
from happylab.reduction import HYPMC_BUDGET_ENV
from happylab.solvers import BUDGET_ENV
from happylab.state import OutputFormat, SolverName, state

# ---------------------------------------------------------------------------
# Root app
# ---------------------------------------------------------------------------

app = typer.Typer(
    name="happylab",
    help=(
        "[bold cyan]happylab[/bold cyan] — Maximum Happy Vertices and Minimum Unhappy "
        "Vertices.\n\n"
        "Exact search, LP relaxations, threshold rounding, gap instances and "
        "property checks over exact rational arithmetic.\n\n"
        "[bold]Note:[/bold] global flags ([bold]--output[/bold], [bold]--quiet[/bold], "
        "[bold]--solver[/bold], [bold]--budget[/bold]) must come [bold]before[/bold] "
        "the subcommand:\n\n"
        "  happylab --output json solve --gen gap:k=3 --algo round-derand\n"
        "  happylab --solver float gap-table --problem mhv --k-max 4"
    ),
    add_completion=True,
    no_args_is_help=True,
    rich_markup_mode="rich",
)


@app.callback()
def _root(
    ctx: typer.Context,
    output: Optional[OutputFormat] = typer.Option(
        None,
        "--output",
        "-o",
        help="Output format: table | json | csv",
        envvar="HAPPYLAB_OUTPUT",
    ),
    quiet: bool = typer.Option(
        False,
        "--quiet",
        "-q",
        help="Suppress non-essential output (useful in scripts)",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Emit solver diagnostics on stderr",
    ),
    solver: Optional[SolverName] = typer.Option(
        None,
        "--solver",
        help="LP backend: exact | float | highs",
        envvar="HAPPYLAB_SOLVER",
    ),
    budget: Optional[int] = typer.Option(
        None,
        "--budget",
        min=1,
        help="Candidate limit for exhaustive search (default 20000000)",
        envvar=BUDGET_ENV,
    ),
    version: bool = typer.Option(
        False,
        "--version",
        help="Print version and exit",
        is_eager=True,
    ),
) -> None:
    """Global options that apply to every happylab command."""
    if version:
        typer.echo(f"happylab {__version__}")
        raise typer.Exit()

    cfg = load_config()
    try:
        state.output = output or OutputFormat(cfg.get("output", OutputFormat.table.value))
        state.solver = solver or SolverName(cfg.get("solver", SolverName.exact.value))
        state.budget = budget if budget is not None else config_int("budget", cfg)
        hypmc_env = os.environ.get(HYPMC_BUDGET_ENV)
        state.hypmc_budget = int(hypmc_env) if hypmc_env else config_int("hypmc_budget", cfg)
        state.workers = config_int("workers", cfg) or 1
    except ValueError as exc:
        typer.echo(f"Invalid configuration value: {exc}", err=True)
        raise typer.Exit(code=2)
    state.quiet = quiet
    state.verbose = verbose


# ---------------------------------------------------------------------------
# Register commands
# ---------------------------------------------------------------------------

app.command("solve", help="Solve one instance and report the value (and optionally LP / exact optima).")(cmd_solve)
app.command("gap-table", help="Exact optimum, LP optimum and their ratio on the gap family.")(cmd_gap_table)
app.command("check", help="Run a randomized property suite.")(cmd_check)
app.command("validate", help="Validate a happygraph / happyhyper file.")(cmd_validate)
app.command("info", help="Show statistics of an instance or hypergraph.")(cmd_info)
app.command("gen", help="Write a generated instance or hypergraph.")(cmd_gen)
app.command("reduce", help="Reduce hypergraph multiway cut to an MUHV instance.")(cmd_reduce)

# Sub-command groups
app.add_typer(config_app, name="config")


if __name__ == "__main__":
    app()
