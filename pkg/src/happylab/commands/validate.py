"""happylab validate — check that an instance or hypergraph file is well formed."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import typer
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from happylab import formats
from happylab.console import console, err_console
from happylab.errors import FormatError, HappyLabError
from happylab.graph import describe
from happylab.models import Hypergraph, Instance
from happylab.state import OutputFormat, state
from happylab.utils import fmt_rational

Parsed = Union[Instance, Hypergraph]


def parse_file(text: str) -> Parsed:
    """Dispatch on the header line: happyhyper files become hypergraphs."""
    if text.lstrip().startswith(formats.HYPER_HEADER):
        return formats.loads_hypergraph(text)
    return formats.loads_instance(text)


def summarize(parsed: Parsed) -> Dict[str, Any]:
    if isinstance(parsed, Hypergraph):
        return {
            "kind": "hypergraph",
            "vertices": parsed.num_vertices,
            "hyperedges": len(parsed.hyperedges),
            "terminals": parsed.num_terminals,
            "total_weight": fmt_rational(parsed.weight_of(range(len(parsed.hyperedges)))),
        }
    stats = describe(parsed)
    stats["total_weight"] = fmt_rational(stats["total_weight"])
    return {"kind": "instance", **stats}


def cmd_validate(
    file: Path = typer.Argument(..., help="happygraph v1 or happyhyper v1 file"),
) -> None:
    """
    Validate an instance or hypergraph file.

    Checks that the file exists, parses, and satisfies every instance
    invariant (edges in range, no self-loops, non-negative weights, every
    label pre-assigned). Exit codes: 0 valid · 1 invalid · 2 missing or
    unparseable file
    """
    output_fmt = state.output

    if not file.exists():
        _report_error(file, "file", f"File not found: {file}", code=2)

    try:
        parsed = parse_file(file.read_text(encoding="utf-8"))
    except FormatError as exc:
        _report_error(file, "parse", str(exc), code=2)
    except HappyLabError as exc:
        _report_error(file, type(exc).__name__, str(exc), code=1)

    summary = summarize(parsed)
    if output_fmt == OutputFormat.json:
        _emit_json(valid=True, file=str(file), errors=[], summary=summary)
    elif not state.quiet:
        _print_success(file, summary)


# ---------------------------------------------------------------------------
# Output renderers
# ---------------------------------------------------------------------------


def _emit_json(
    *,
    valid: bool,
    file: str,
    errors: list,
    summary: Optional[Dict[str, Any]] = None,
) -> None:
    payload: Dict[str, Any] = {"valid": valid, "file": file, "errors": errors}
    if summary is not None:
        payload["summary"] = summary
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _report_error(file: Path, field: str, message: str, code: int) -> None:
    if state.output == OutputFormat.json:
        _emit_json(valid=False, file=str(file), errors=[{"field": field, "message": message}])
    elif code == 1:
        if not state.quiet:
            console.print()
            console.print(
                Panel(
                    f"[error]✗ Invalid[/error]  [muted]·[/muted]  [bold]{file}[/bold]",
                    border_style="red",
                    padding=(0, 2),
                )
            )
        err_console.print(f"  [error]✗[/error] {field}  {escape(message)}\n")
    else:
        err_console.print(f"\n[error]✗[/error] {escape(message)}\n")
    raise typer.Exit(code=code)


def _print_success(file: Path, summary: Dict[str, Any]) -> None:
    console.print()
    console.print(
        Panel(
            f"[success]✓ Valid[/success]  [muted]·[/muted]  [bold]{file}[/bold]  "
            f"[muted]·[/muted]  {summary['kind']}",
            border_style="green",
            padding=(0, 2),
        )
    )

    table = Table(show_header=False, box=None, padding=(0, 2, 0, 0))
    table.add_column("key", style="key", min_width=14)
    table.add_column("value")
    for key, value in summary.items():
        if key == "kind":
            continue
        if isinstance(value, dict):
            value = "  ".join(f"{k}:{v}" for k, v in value.items())
        table.add_row(key.replace("_", " ").capitalize(), str(value))
    console.print(table)
    console.print()
