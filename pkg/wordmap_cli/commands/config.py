"""Config commands: write and inspect the pipeline configuration."""

from dataclasses import asdict

import typer

from ..config import init_config
from ..io import console, handle_error, output_result
from . import load_pipeline_config

app = typer.Typer(help="Manage wordmap configuration")


@app.command("init")
def config_init(
    path: str | None = typer.Option(None, help="Config file to write (default ./.wordmap.conf)"),
    force: bool = typer.Option(False, "--force", help="Overwrite an existing file"),
) -> None:
    """Write a config file holding every default value."""
    try:
        config_path = init_config(path, force=force)
        console.print(f"[green]Configuration saved to {config_path}[/green]")
    except Exception as e:
        handle_error(e)


@app.command("show")
def config_show(
    ctx: typer.Context,
    output: str = typer.Option("table", help="Output format (json, table)"),
) -> None:
    """Show the configuration after applying file, environment and flags."""
    try:
        config = load_pipeline_config(ctx)
        rows = [{"key": key, "value": value} for key, value in asdict(config).items()]
        output_result(rows, output, title="Configuration")
    except Exception as e:
        handle_error(e)
