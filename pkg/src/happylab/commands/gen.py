"""happylab gen — write a generated instance or hypergraph."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

import typer

from happylab import formats
from happylab.console import console, fail
from happylab.errors import HappyLabError
from happylab.models import Hypergraph
from happylab.state import OutputFormat, state
from happylab.utils import GENERATORS, generate


def _spec_help() -> str:
    parts = []
    for name, keys in GENERATORS.items():
        parts.append(f"{name}:" + ",".join(f"{k}=" if d is None else f"{k}={d}" for k, d in keys.items()))
    return "  ".join(parts)


def cmd_gen(
    spec: str = typer.Argument(..., help="Generator spec, e.g. gap:k=4 or rand:n=8,k=3,seed=7"),
    dest: Optional[Path] = typer.Option(
        None, "--dest", "-d", help="Output file (omit to print to stdout)"
    ),
) -> None:
    """
    Generate an instance (happygraph v1) or hypergraph (happyhyper v1).

    Generators and their defaults:

        gap:k=,wt=1,wb=0    rand:n=,k=,p=0.5,per=1,wlo=0,whi=10,seed=0,connected=0
        pair:w=10,eps=1,contracted=0    hyper:nv=,ne=,k=,size=3,seed=0

    Exit codes: 0 success · 2 bad spec
    """
    try:
        made = generate(spec)
    except HappyLabError as exc:
        fail(str(exc), 2, hint=f"[muted]{_spec_help()}[/muted]")

    is_hyper = isinstance(made, Hypergraph)
    text = formats.dumps_hypergraph(made) if is_hyper else formats.dumps_instance(made)

    if dest is None:
        print(text, end="")
        return

    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(text, encoding="utf-8")
    kind = "hypergraph" if is_hyper else "instance"
    if state.output == OutputFormat.json:
        print(json.dumps({"spec": spec, "kind": kind, "dest": str(dest)}, indent=2))
    elif not state.quiet:
        console.print(f"  [success]✓[/success]  {kind} written to [bold]{dest}[/bold]")
