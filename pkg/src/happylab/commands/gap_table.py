"""happylab gap-table — integrality ratios on the terminal/pair gap family."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional

import typer
from rich import box
from rich.table import Table

from happylab.console import console, debug, fail
from happylab.errors import BudgetExceeded, HappyLabError, SolverFailure
from happylab.generators import gen_gap_instance
from happylab.lp.simplex import get_solver
from happylab.models import Objective, to_fraction
from happylab.relaxation import relax
from happylab.report import rational, rows_to_csv
from happylab.solvers import solve_exact
from happylab.state import OutputFormat, state
from happylab.utils import fmt_decimal, fmt_rational

TOLERANCE = Fraction(1, 10**9)


class GapRow(NamedTuple):
    k: int
    optimum: Fraction
    lp_value: Fraction
    ratio: Optional[Fraction]     # optimum / LP; None when the LP optimum is 0
    bound: Fraction
    ok: bool


def ratio_bound(problem: Objective, k: int) -> Fraction:
    """2/k from above for MHV, 2 - 2/k from below for MUHV."""
    return Fraction(2, k) if problem == Objective.mhv else 2 - Fraction(2, k)


def gap_row(
    k: int, problem: Objective, w_t: Fraction, w_b: Fraction, tolerance: Fraction = TOLERANCE
) -> GapRow:
    inst = gen_gap_instance(k, w_t, w_b)
    optimum = solve_exact(inst, problem, budget=state.budget, workers=state.workers).value
    lp_value = relax(inst, problem, get_solver()).value
    ratio = optimum / lp_value if lp_value else None
    bound = ratio_bound(problem, k)
    if ratio is None:
        ok = True
    elif problem == Objective.mhv:
        ok = ratio <= bound + tolerance
    else:
        # the lower bound is only claimed when the pair vertices weigh nothing
        ok = w_b != 0 or ratio >= bound - tolerance
    debug(f"k={k}: optimum {optimum}, LP {lp_value}")
    return GapRow(k, optimum, lp_value, ratio, bound, ok)


def cmd_gap_table(
    problem: Objective = typer.Option(Objective.muhv, "--problem", "-p", help="mhv | muhv"),
    k_min: int = typer.Option(2, "--k-min", min=2, help="Smallest number of labels"),
    k_max: int = typer.Option(4, "--k-max", min=2, help="Largest number of labels"),
    wt: str = typer.Option("1", "--wt", help="Terminal weight (integer, decimal or p/q)"),
    wb: str = typer.Option("0", "--wb", help="Pair-vertex weight (integer, decimal or p/q)"),
) -> None:
    """
    Tabulate exact optimum, LP optimum and their ratio on the gap family.

    MHV rows must satisfy ratio ≤ 2/k; MUHV rows with --wb 0 must satisfy
    ratio ≥ 2 − 2/k. Exit codes: 0 all bounds hold · 1 a bound fails ·
    2 bad parameters · 3 over budget
    """
    if k_max < k_min:
        fail(f"--k-max ({k_max}) is smaller than --k-min ({k_min})", 2)
    try:
        w_t, w_b = to_fraction(wt), to_fraction(wb)
    except ValueError as exc:
        fail(str(exc), 2)

    rows: List[GapRow] = []
    try:
        for k in range(k_min, k_max + 1):
            rows.append(gap_row(k, problem, w_t, w_b))
    except BudgetExceeded as exc:
        fail(str(exc), 3, hint="Lower [bold]--k-max[/bold] or raise [bold]--budget[/bold].")
    except SolverFailure as exc:
        fail(f"LP solver failed: {exc}", 1)
    except HappyLabError as exc:
        fail(str(exc), 2)

    ok = all(row.ok for row in rows)
    if state.output == OutputFormat.json:
        payload: Dict[str, Any] = {
            "problem": problem.value,
            "wt": rational(w_t),
            "wb": rational(w_b),
            "ok": ok,
            "rows": [_row_dict(row) for row in rows],
        }
        print(json.dumps(payload, indent=2))
    elif state.output == OutputFormat.csv:
        print(rows_to_csv([_row_csv(row) for row in rows]), end="")
    elif not state.quiet:
        _print_table(problem, rows)

    if not ok:
        if not state.is_machine_readable:
            bad = ", ".join(str(row.k) for row in rows if not row.ok)
            fail(f"Ratio bound violated for k = {bad}", 1)
        raise typer.Exit(code=1)


# ---------------------------------------------------------------------------
# Output renderers
# ---------------------------------------------------------------------------


def _row_dict(row: GapRow) -> Dict[str, Any]:
    return {
        "k": row.k,
        "optimum": rational(row.optimum),
        "lp": rational(row.lp_value),
        "ratio": rational(row.ratio) if row.ratio is not None else None,
        "bound": rational(row.bound),
        "ok": row.ok,
    }


def _row_csv(row: GapRow) -> Dict[str, str]:
    return {
        "k": str(row.k),
        "optimum": fmt_rational(row.optimum),
        "lp": fmt_rational(row.lp_value),
        "ratio": fmt_rational(row.ratio) if row.ratio is not None else "",
        "ratio_decimal": fmt_decimal(row.ratio) if row.ratio is not None else "",
        "bound": fmt_rational(row.bound),
        "ok": "1" if row.ok else "0",
    }


def _print_table(problem: Objective, rows: List[GapRow]) -> None:
    relation = "≤" if problem == Objective.mhv else "≥"
    table = Table(box=box.SIMPLE, show_header=True, header_style="bold white")
    table.add_column("k", justify="right")
    table.add_column("OPT", justify="right")
    table.add_column("LP", justify="right")
    table.add_column("OPT / LP", justify="right")
    table.add_column(f"bound ({relation})", justify="right", style="muted")
    table.add_column("")

    for row in rows:
        ratio = "—" if row.ratio is None else f"{fmt_rational(row.ratio)}  [muted]≈ {fmt_decimal(row.ratio, 6)}[/muted]"
        mark = "[check.ok]✓[/check.ok]" if row.ok else "[check.fail]✗[/check.fail]"
        table.add_row(
            str(row.k), fmt_rational(row.optimum), fmt_rational(row.lp_value),
            ratio, fmt_rational(row.bound), mark,
        )

    console.print()
    console.print(f"  [bold]{problem.value.upper()}[/bold] gap family")
    console.print(table)
