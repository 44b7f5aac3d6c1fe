"""happylab info — show statistics of an instance or hypergraph."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from rich.panel import Panel
from rich.table import Table

from happylab.commands.validate import Parsed, parse_file, summarize
from happylab.console import console, fail
from happylab.errors import HappyLabError
from happylab.models import Hypergraph
from happylab.state import OutputFormat, state
from happylab.utils import generate


def cmd_info(
    file: Optional[Path] = typer.Argument(None, help="happygraph v1 or happyhyper v1 file"),
    gen: Optional[str] = typer.Option(None, "--gen", "-g", help="Generator spec instead of a file"),
) -> None:
    """
    Show size, degree and weight statistics of an instance.

    Reports n, m, k, the maximum degree Δ, the total weight and the number
    of pre-colored vertices per label. Exit codes: 0 success · 2 missing,
    unparseable or invalid input
    """
    if (file is None) == (gen is None):
        fail("Pass exactly one of FILE or --gen SPEC", 2)

    try:
        if file is not None:
            if not file.exists():
                fail(f"File not found: {file}", 2)
            parsed: Parsed = parse_file(file.read_text(encoding="utf-8"))
            source = str(file)
        else:
            parsed = generate(gen)
            source = gen
    except HappyLabError as exc:
        fail(str(exc), 2)

    summary = summarize(parsed)
    if state.output == OutputFormat.json:
        print(json.dumps({"source": source, **summary}, indent=2, ensure_ascii=False))
        return

    if not state.quiet:
        _print_info(source, parsed, summary)


# ---------------------------------------------------------------------------
# Output renderer
# ---------------------------------------------------------------------------


def _print_info(source: str, parsed: Parsed, summary: Dict[str, Any]) -> None:
    console.print()
    console.print(
        Panel(
            f"[value]{source}[/value]  [muted]{summary['kind']}[/muted]",
            border_style="cyan",
            padding=(0, 2),
        )
    )

    meta = Table(show_header=False, box=None, padding=(0, 2, 0, 0))
    meta.add_column("key", style="key", min_width=14)
    meta.add_column("value")

    if isinstance(parsed, Hypergraph):
        meta.add_row("Vertices", str(summary["vertices"]))
        meta.add_row("Hyperedges", str(summary["hyperedges"]))
        meta.add_row("Terminals", "  ".join(str(t + 1) for t in parsed.terminals))
        meta.add_row("Total weight", summary["total_weight"])
    else:
        meta.add_row("Vertices", str(summary["vertices"]))
        meta.add_row("Edges", str(summary["edges"]))
        meta.add_row("Labels", str(summary["labels"]))
        meta.add_row("Max degree", str(summary["max_degree"]))
        meta.add_row("Total weight", summary["total_weight"])
        meta.add_row("Uncolored", str(summary["uncolored"]))
        meta.add_row(
            "Pre-colored",
            "  ".join(f"{label}[muted]×{count}[/muted]" for label, count in summary["terminals"].items()),
        )
    console.print(meta)
    console.print()
