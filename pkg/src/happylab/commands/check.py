"""happylab check — run the randomized property suites."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from happylab.checks import DEFAULT_TRIALS, SUITES, SuiteResult, dump_failure, run_suite
from happylab.console import console, fail
from happylab.errors import BudgetExceeded, SolverFailure
from happylab.report import rows_to_csv
from happylab.state import OutputFormat, state

ALL = "all"


def cmd_check(
    suite: str = typer.Argument(
        ..., help=f"Suite to run: {', '.join(SUITES)} or {ALL}"
    ),
    trials: int = typer.Option(DEFAULT_TRIALS, "--trials", "-n", min=1, help="Random instances per suite"),
    seed: int = typer.Option(0, "--seed", "-s", min=0, help="Seed for the instance stream"),
    dump_dir: Path = typer.Option(
        Path("happylab-failures"), "--dump-dir", help="Where failing instances are written"
    ),
) -> None:
    """
    Check a structural property on seeded random instances.

    On failure the smallest failing instance of each suite is written to
    --dump-dir. Exit codes: 0 all checks pass · 1 a property fails ·
    2 unknown suite · 3 search budget exceeded
    """
    if suite != ALL and suite not in SUITES:
        fail(f"Unknown suite {suite!r}", 2, hint=f"Choose one of: {', '.join(SUITES)}, {ALL}")
    names = list(SUITES) if suite == ALL else [suite]

    results: List[SuiteResult] = []
    dumps: Dict[str, Optional[Path]] = {}
    for name in names:
        try:
            result = run_suite(name, trials, seed)
        except BudgetExceeded as exc:
            fail(f"{name}: {exc}", 3, hint="Raise it with HAPPYLAB_BUDGET or HAPPYLAB_HYPMC_BUDGET.")
        except SolverFailure as exc:
            fail(f"{name}: {exc}", 1)
        results.append(result)
        dumps[name] = dump_failure(result, dump_dir)

    if state.output == OutputFormat.json:
        payload = {"passed": all(r.passed for r in results), "suites": [_suite_dict(r, dumps) for r in results]}
        print(json.dumps(payload, indent=2))
    elif state.output == OutputFormat.csv:
        print(rows_to_csv([_suite_csv(r, dumps) for r in results]), end="")
    elif not state.quiet:
        _print_results(results, dumps)

    if not all(r.passed for r in results):
        raise typer.Exit(code=1)


# ---------------------------------------------------------------------------
# Output renderers
# ---------------------------------------------------------------------------


def _suite_dict(result: SuiteResult, dumps: Dict[str, Optional[Path]]) -> Dict[str, Any]:
    dumped = dumps.get(result.name)
    return {
        "suite": result.name,
        "passed": result.passed,
        "trials": result.trials,
        "seed": result.seed,
        "checks": result.checks,
        "failures": [{"trial": f.trial, "message": f.message} for f in result.failures],
        "dumped": str(dumped) if dumped else None,
    }


def _suite_csv(result: SuiteResult, dumps: Dict[str, Optional[Path]]) -> Dict[str, str]:
    dumped = dumps.get(result.name)
    return {
        "suite": result.name,
        "passed": "1" if result.passed else "0",
        "trials": str(result.trials),
        "seed": str(result.seed),
        "checks": str(result.checks),
        "failures": str(len(result.failures)),
        "dumped": str(dumped) if dumped else "",
    }


def _print_results(results: List[SuiteResult], dumps: Dict[str, Optional[Path]]) -> None:
    failed = [r for r in results if not r.passed]
    console.print()
    if failed:
        console.print(
            Panel(
                f"[error]✗ {len(failed)} suite{'s' if len(failed) != 1 else ''} failed[/error]",
                border_style="red",
                padding=(0, 2),
            )
        )
    else:
        console.print(
            Panel("[success]✓ All properties hold[/success]", border_style="green", padding=(0, 2))
        )

    table = Table(show_header=False, box=None, padding=(0, 2, 0, 0))
    table.add_column("suite", style="key", min_width=20)
    table.add_column("result")
    for result in results:
        if result.passed:
            table.add_row(
                f"[check.ok]✓[/check.ok] {result.name}",
                f"{result.checks} checks on {result.trials} instances",
            )
            continue
        first = result.failures[0]
        table.add_row(
            f"[check.fail]✗[/check.fail] {result.name}",
            f"{len(result.failures)} failure(s); first in trial {first.trial}: {escape(first.message)}",
        )
        dumped = dumps.get(result.name)
        if dumped:
            table.add_row("", f"[muted]smallest failing instance → {dumped}[/muted]")
    console.print(table)
    console.print()
