"""happylab solve — run one algorithm on one instance and report the result."""

from __future__ import annotations

import time
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Tuple

import typer
from rich.panel import Panel
from rich.table import Table

from happylab import formats
from happylab.console import console, debug, fail
from happylab.errors import BudgetExceeded, HappyLabError, SolverFailure
from happylab.lp.simplex import get_solver
from happylab.models import Hypergraph, Instance, Objective
from happylab.relaxation import Relaxation, build_lp, relax
from happylab.report import RunReport
from happylab.rounding import round_derandomized, round_random
from happylab.solvers import Solution, solve_exact, solve_greedy
from happylab.state import OutputFormat, state
from happylab.utils import fmt_decimal, fmt_rational, generate, parse_key_values


class Algorithm(str, Enum):
    exact = "exact"
    greedy = "greedy"
    round_random = "round-random"
    round_derand = "round-derand"


# Keys a --config file may set.
CONFIG_KEYS = ("input", "gen", "problem", "algo", "seed", "workers")

MAX_SEED = 2**64 - 1


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def load_run_config(path: Path) -> Dict[str, str]:
    if not path.exists():
        fail(f"Config file not found: {path}", 2)
    try:
        values = parse_key_values(path.read_text(encoding="utf-8"))
    except HappyLabError as exc:
        fail(f"{path}: {exc}", 2)
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        fail(f"{path}: unknown key(s) {', '.join(unknown)}; expected {', '.join(CONFIG_KEYS)}", 2)
    return values


def _config_choice(values: Dict[str, str], key: str, enum: type) -> Optional[Enum]:
    if key not in values:
        return None
    try:
        return enum(values[key])
    except ValueError:
        fail(f"Invalid {key} in config file: {values[key]!r}", 2)


def _config_int(values: Dict[str, str], key: str) -> Optional[int]:
    if key not in values:
        return None
    try:
        return int(values[key])
    except ValueError:
        fail(f"Invalid {key} in config file: {values[key]!r}", 2)


def load_instance(input: Optional[Path], gen: Optional[str]) -> Tuple[Instance, str]:
    """The instance named by exactly one of --input / --gen, with its descriptor."""
    if (input is None) == (gen is None):
        fail("Pass exactly one of --input FILE or --gen SPEC", 2)
    if input is not None:
        if not input.exists():
            fail(f"File not found: {input}", 2)
        try:
            return formats.read_instance(input), str(input)
        except HappyLabError as exc:
            fail(f"{input}: {exc}", 2)
    try:
        inst = generate(gen)
    except HappyLabError as exc:
        fail(str(exc), 2)
    if isinstance(inst, Hypergraph):
        fail("Hypergraph generators produce no graph instance; use happylab reduce", 2)
    return inst, gen


# ---------------------------------------------------------------------------
# Command
# ---------------------------------------------------------------------------


def cmd_solve(
    input: Optional[Path] = typer.Option(
        None, "--input", "-i", help="happygraph v1 instance file"
    ),
    gen: Optional[str] = typer.Option(
        None, "--gen", "-g", help="Generator spec, e.g. gap:k=3,wt=1,wb=0"
    ),
    problem: Optional[Objective] = typer.Option(
        None, "--problem", "-p", help="mhv | muhv  [default: muhv]"
    ),
    algo: Optional[Algorithm] = typer.Option(
        None, "--algo", "-a", help="exact | greedy | round-random | round-derand  [default: exact]"
    ),
    seed: Optional[int] = typer.Option(
        None, "--seed", "-s", min=0, max=MAX_SEED, help="Seed for round-random  [default: 0]"
    ),
    json_out: bool = typer.Option(False, "--json", help="Shorthand for --output json"),
    csv_out: bool = typer.Option(False, "--csv", help="Shorthand for --output csv"),
    config: Optional[Path] = typer.Option(
        None, "--config", help="key=value file with any of: " + ", ".join(CONFIG_KEYS)
    ),
    workers: Optional[int] = typer.Option(
        None, "--workers", "-w", min=1, help="Worker processes for exhaustive search"
    ),
    with_exact: bool = typer.Option(False, "--with-exact", help="Also report the exact optimum"),
    with_lp: bool = typer.Option(False, "--with-lp", help="Also report the LP optimum"),
    export_lp: Optional[Path] = typer.Option(
        None, "--export-lp", help="Write the LP relaxation in CPLEX LP format"
    ),
    timing: bool = typer.Option(False, "--timing", help="Include wall-clock time in the report"),
) -> None:
    """
    Solve a Maximum Happy Vertices / Minimum Unhappy Vertices instance.

    Exit codes: 0 success · 1 solver failure · 2 bad input · 3 over budget

        happylab solve --gen gap:k=3 --problem muhv --algo exact --json
    """
    if json_out and csv_out:
        fail("--json and --csv are mutually exclusive", 2)
    if json_out:
        state.output = OutputFormat.json
    elif csv_out:
        state.output = OutputFormat.csv

    values = load_run_config(config) if config is not None else {}
    if input is None and gen is None:
        input = Path(values["input"]) if "input" in values else None
        gen = values.get("gen")
    problem = problem or _config_choice(values, "problem", Objective) or Objective.muhv
    algo = algo or _config_choice(values, "algo", Algorithm) or Algorithm.exact
    seed = seed if seed is not None else (_config_int(values, "seed") or 0)
    workers = workers or _config_int(values, "workers") or state.workers

    inst, descriptor = load_instance(input, gen)
    debug(f"instance {descriptor}: n={inst.num_vertices} m={inst.num_edges} k={inst.num_labels}")

    if export_lp is not None:
        formats.write_lp(build_lp(inst, problem), export_lp)
        debug(f"wrote {export_lp}")

    started = time.perf_counter()
    try:
        report = run_pipeline(
            inst, descriptor, problem, algo, seed, workers, with_exact=with_exact, with_lp=with_lp
        )
    except BudgetExceeded as exc:
        fail(str(exc), 3, hint="Raise it with [bold]--budget[/bold] or HAPPYLAB_BUDGET.")
    except SolverFailure as exc:
        fail(f"LP solver failed: {exc}", 1)
    if timing:
        report = report.model_copy(update={"wall_time": time.perf_counter() - started})

    if state.output == OutputFormat.json:
        print(report.to_json())
    elif state.output == OutputFormat.csv:
        print(report.to_csv(), end="")
    elif not state.quiet:
        _print_report(report)
    else:
        console.print(fmt_rational(report.value))


def run_pipeline(
    inst: Instance,
    descriptor: str,
    problem: Objective,
    algo: Algorithm,
    seed: int,
    workers: int = 1,
    with_exact: bool = False,
    with_lp: bool = False,
) -> RunReport:
    """Run *algo* and assemble the report, adding the exact and LP optima on request."""
    exact: Optional[Solution] = None
    relaxation: Optional[Relaxation] = None

    if algo == Algorithm.exact:
        exact = solve_exact(inst, problem, budget=state.budget, workers=workers)
        coloring, value = exact.coloring, exact.value
    elif algo == Algorithm.greedy:
        greedy = solve_greedy(inst, problem)
        coloring, value = greedy.coloring, greedy.value
    else:
        relaxation = relax(inst, problem, get_solver())
        if algo == Algorithm.round_random:
            outcome = round_random(inst, relaxation.labeling, seed)
        else:
            outcome, dist = round_derandomized(inst, relaxation.labeling, problem)
            debug(f"expected value over {len(dist.cells)} cells: {dist.expected(problem)}")
        coloring, value = outcome.coloring, outcome.value(problem)

    if with_exact and exact is None:
        exact = solve_exact(inst, problem, budget=state.budget, workers=workers)
    if with_lp and relaxation is None:
        relaxation = relax(inst, problem, get_solver())

    return RunReport(
        instance=descriptor,
        seed=seed if algo == Algorithm.round_random else None,
        algorithm=algo.value,
        objective=problem,
        value=value,
        lp_value=relaxation.value if relaxation is not None else None,
        exact_value=exact.value if exact is not None else None,
        coloring=coloring.assignment,
    )


# ---------------------------------------------------------------------------
# Output renderer
# ---------------------------------------------------------------------------


def _row(table: Table, key: str, x: Optional[Fraction]) -> None:
    if x is not None:
        table.add_row(key, f"[value]{fmt_rational(x)}[/value]  [muted]≈ {fmt_decimal(x)}[/muted]")


def _print_report(report: RunReport) -> None:
    console.print()
    console.print(
        Panel(
            f"[bold]{report.objective.value.upper()}[/bold]  [muted]·[/muted]  "
            f"{report.algorithm}  [muted]·[/muted]  {report.instance}",
            border_style="cyan",
            padding=(0, 2),
        )
    )

    table = Table(show_header=False, box=None, padding=(0, 2, 0, 0))
    table.add_column("key", style="key", min_width=14)
    table.add_column("value")

    _row(table, "Value", report.value)
    _row(table, "LP optimum", report.lp_value)
    _row(table, "Exact optimum", report.exact_value)
    _row(table, "value / exact", report.approx_ratio)
    _row(table, "exact / LP", report.gap_ratio)
    if report.seed is not None:
        table.add_row("Seed", str(report.seed))
    table.add_row("Coloring", " ".join(str(c) for c in report.coloring))
    if report.wall_time is not None:
        table.add_row("Wall time", f"{report.wall_time:.3f}s")

    console.print(table)
    console.print()
