"""happylab config — manage local happylab configuration."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Dict, NoReturn, Optional

import typer
from rich import box
from rich.table import Table

from happylab.console import console, err_console, fail
from happylab.state import OutputFormat, SolverName, state

config_app = typer.Typer(help="Manage local happylab configuration.")

# Keys with descriptions shown in `happylab config list`
KNOWN_KEYS = {
    "solver":       "Default LP backend  (exact | float | highs)",
    "output":       "Default output format  (table | json | csv)",
    "budget":       "Candidate limit for exhaustive search",
    "hypmc_budget": "Hyperedge limit for the exhaustive hypergraph cut",
    "workers":      "Worker processes for exhaustive search",
}


def get_config_path() -> Path:
    return Path("~/.happylab/config.json").expanduser()


def load_config() -> dict:
    """Read the user config; a file that is not a JSON object ends the process with exit 2."""
    path = get_config_path()
    try:
        cfg = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return {}
    except (OSError, json.JSONDecodeError) as exc:
        err_console.print(f"\n[error]✗[/error] Unreadable config [bold]{path}[/bold]: {exc}\n")
        raise SystemExit(2)
    if not isinstance(cfg, dict):
        err_console.print(f"\n[error]✗[/error] Config [bold]{path}[/bold] must hold a JSON object\n")
        raise SystemExit(2)
    return cfg


def save_config(cfg: dict) -> None:
    path = get_config_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(cfg, indent=2) + "\n", encoding="utf-8")


def config_int(key: str, cfg: Optional[dict] = None) -> Optional[int]:
    """Integer value of *key* in the user config, or None when unset."""
    value = (load_config() if cfg is None else cfg).get(key)
    return None if value is None else int(value)


# ---------------------------------------------------------------------------
# Value parsing
# ---------------------------------------------------------------------------


def _positive_int(raw: str) -> int:
    value = int(float(raw))
    if value < 1:
        raise ValueError("must be a positive integer")
    return value


_PARSERS: Dict[str, Callable[[str], Any]] = {
    "solver": lambda raw: SolverName(raw).value,
    "output": lambda raw: OutputFormat(raw).value,
    "budget": _positive_int,
    "hypmc_budget": _positive_int,
    "workers": _positive_int,
}


def parse_value(key: str, raw: str) -> Any:
    parser = _PARSERS.get(key)
    if parser is None:
        return raw
    try:
        return parser(raw)
    except (ValueError, OverflowError):
        fail(f"Invalid value for {key}: {raw!r}", 2, hint=f"[muted]{KNOWN_KEYS[key]}[/muted]")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


@config_app.command("get")
def config_get(
    key: str = typer.Argument(..., help="Configuration key"),
) -> None:
    """Print the value of a configuration key."""
    _print_key(key)


@config_app.command("set")
def config_set(
    key: str = typer.Argument(..., help="Configuration key"),
    value: str = typer.Argument(..., help="Configuration value"),
) -> None:
    """Set a configuration value."""
    parsed = parse_value(key, value)
    cfg = load_config()
    cfg[key] = parsed
    save_config(cfg)

    if state.output == OutputFormat.json:
        print(json.dumps({"key": key, "value": parsed}, indent=2))
    elif not state.quiet:
        if key not in KNOWN_KEYS:
            err_console.print(f"  [warning]⚠[/warning]  [bold]{key}[/bold] is not a known key")
        console.print(f"  [success]✓[/success]  [bold]{key}[/bold] = {parsed}")


@config_app.command("show")
def config_show(
    key: Optional[str] = typer.Argument(None, help="Key to show (omit to show all)"),
) -> None:
    """Show one key or all configuration values."""
    if key is not None:
        return _print_key(key)
    _print_all()


@config_app.command("list")
def config_list() -> None:
    """List all configuration values."""
    _print_all()


def _missing_key(key: str, payload: Dict[str, Any]) -> NoReturn:
    if state.output == OutputFormat.json:
        print(json.dumps({"key": key, **payload}, indent=2))
        raise typer.Exit(code=1)
    fail(f"{key} is not set in {get_config_path()}", 1, hint="Set it with [bold]happylab config set[/bold].")


def _print_key(key: str) -> None:
    cfg = load_config()
    if key not in cfg:
        _missing_key(key, {"value": None})
    if state.output == OutputFormat.json:
        print(json.dumps({"key": key, "value": cfg[key]}, indent=2))
    else:
        console.print(cfg[key])


def _print_all() -> None:
    cfg = load_config()
    if state.output == OutputFormat.json:
        print(json.dumps(cfg, indent=2))
        return
    if state.quiet:
        return
    if not cfg:
        console.print(f"\n  [muted]No configuration in {get_config_path()}; built-in defaults apply.[/muted]\n")
        return

    table = Table(box=box.SIMPLE, header_style="bold white")
    table.add_column("Key", style="key")
    table.add_column("Value", style="value")
    table.add_column("Meaning", style="muted")
    for name in sorted(cfg):
        table.add_row(name, str(cfg[name]), KNOWN_KEYS.get(name, "[warning]unknown key[/warning]"))
    console.print(table)


@config_app.command("unset")
def config_unset(
    key: str = typer.Argument(..., help="Configuration key to remove"),
) -> None:
    """Remove a configuration key so its built-in default applies again."""
    cfg = load_config()
    if cfg.pop(key, None) is None:
        _missing_key(key, {"removed": False})
    save_config(cfg)

    if state.output == OutputFormat.json:
        print(json.dumps({"key": key, "removed": True}, indent=2))
    elif not state.quiet:
        console.print(f"  [success]✓[/success]  {key} reset to its default")
