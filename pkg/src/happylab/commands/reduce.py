"""happylab reduce — turn a hypergraph multiway cut instance into an MUHV instance."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from rich.panel import Panel
from rich.table import Table

from happylab import formats
from happylab.console import console, fail
from happylab.errors import BudgetExceeded, HappyLabError
from happylab.models import Objective
from happylab.reduction import (
    backmap_solution,
    disconnects_terminals,
    reduce_hypmc,
    solve_hypmc_exact,
)
from happylab.report import rational
from happylab.solvers import solve_exact
from happylab.state import OutputFormat, state
from happylab.utils import fmt_rational


def map_path(dest: Path) -> Path:
    """Sidecar map next to *dest*: ``out.hg`` → ``out.map``."""
    return dest.with_suffix(".map")


def cmd_reduce(
    input: Path = typer.Argument(..., help="happyhyper v1 hypergraph file"),
    dest: Path = typer.Option(..., "--dest", "-d", help="Where to write the reduced instance"),
    solve: bool = typer.Option(
        False, "--solve", help="Solve the reduced instance exactly, map the cut back and compare with the hyperedge-subset optimum"
    ),
) -> None:
    """
    Reduce hypergraph multiway cut to Minimum Unhappy Vertices.

    Writes the reduced happygraph v1 instance to --dest and a sidecar map
    (one ``e v_e`` line per hyperedge) beside it with the suffix .map.
    Exit codes: 0 success · 2 missing or unparseable input · 3 over budget
    """
    if not input.exists():
        fail(f"File not found: {input}", 2)
    try:
        H = formats.read_hypergraph(input)
        inst, mapping = reduce_hypmc(H)
    except HappyLabError as exc:
        fail(f"{input}: {exc}", 2)

    dest.parent.mkdir(parents=True, exist_ok=True)
    formats.write_instance(inst, dest)
    formats.write_map(mapping, map_path(dest))

    result: Dict[str, Any] = {
        "input": str(input),
        "instance": str(dest),
        "map": str(map_path(dest)),
        "vertices": inst.num_vertices,
        "edges": inst.num_edges,
    }

    cut: Optional[Dict[str, Any]] = None
    if solve:
        try:
            solution = solve_exact(inst, Objective.muhv, budget=state.budget, workers=state.workers)
            oracle = solve_hypmc_exact(H, state.hypmc_budget)
        except BudgetExceeded as exc:
            fail(str(exc), 3, hint="Raise it with [bold]--budget[/bold] or HAPPYLAB_BUDGET.")
        removed = backmap_solution(H, mapping, solution.coloring)
        cut = {
            "hyperedges": [e + 1 for e in removed],
            "weight": H.weight_of(removed),
            "muhv_value": solution.value,
            "disconnects": disconnects_terminals(H, removed),
            "optimum": oracle.value,
        }

    if state.output == OutputFormat.json:
        if cut is not None:
            result["cut"] = {
                **cut,
                "weight": rational(cut["weight"]),
                "muhv_value": rational(cut["muhv_value"]),
                "optimum": rational(cut["optimum"]),
            }
        print(json.dumps(result, indent=2))
    elif not state.quiet:
        _print_result(result, cut)


# ---------------------------------------------------------------------------
# Output renderer
# ---------------------------------------------------------------------------


def _print_result(result: Dict[str, Any], cut: Optional[Dict[str, Any]]) -> None:
    console.print()
    console.print(
        Panel(
            f"[success]✓ Reduced[/success]  [muted]·[/muted]  [bold]{result['input']}[/bold]  "
            f"[muted]→[/muted]  [bold]{result['instance']}[/bold]",
            border_style="green",
            padding=(0, 2),
        )
    )
    table = Table(show_header=False, box=None, padding=(0, 2, 0, 0))
    table.add_column("key", style="key", min_width=14)
    table.add_column("value")
    table.add_row("Instance", f"{result['vertices']} vertices, {result['edges']} edges")
    table.add_row("Map", result["map"])
    if cut is not None:
        table.add_row("Cut", " ".join(str(e) for e in cut["hyperedges"]) or "[muted](none)[/muted]")
        table.add_row("Cut weight", fmt_rational(cut["weight"]))
        table.add_row("MUHV value", fmt_rational(cut["muhv_value"]))
        table.add_row("Cut optimum", fmt_rational(cut["optimum"]))
        table.add_row(
            "Disconnects",
            "[check.ok]✓ yes[/check.ok]" if cut["disconnects"] else "[check.fail]✗ no[/check.fail]",
        )
    console.print(table)
    console.print()
