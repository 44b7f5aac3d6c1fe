import json
from typing import NoReturn

import typer
from rich.console import Console
from rich.markup import escape
from rich.theme import Theme

_THEME = Theme(
    {
        "info": "dim cyan",
        "warning": "yellow",
        "error": "bold red",
        "success": "bold green",
        "muted": "dim white",
        "value": "bold cyan",
        "key": "bold white",
        "check.ok": "green",
        "check.fail": "red",
    }
)

# Results, tables and JSON go to stdout.
console = Console(theme=_THEME)

# Errors and --verbose diagnostics go to stderr.
err_console = Console(stderr=True, theme=_THEME)


def debug(message: str) -> None:
    """Print a muted diagnostic line on stderr when --verbose is active."""
    from happylab.state import state

    if state.verbose:
        err_console.print(f"  [muted]{escape(message)}[/muted]")


def fail(message: str, code: int, hint: str = "") -> NoReturn:
    """Report *message* and exit with *code*.

    JSON mode prints ``{"error": ...}`` on stdout; every other mode writes to stderr.
    """
    from happylab.state import OutputFormat, state

    if state.output == OutputFormat.json:
        print(json.dumps({"error": message}, indent=2))
    else:
        text = f"\n[error]✗[/error] {escape(message)}\n"
        if hint:
            text += f"\n  {hint}\n"
        err_console.print(text)
    raise typer.Exit(code=code)
