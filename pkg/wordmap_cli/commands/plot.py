"""Plot command: SVG word maps."""

import typer

from ..artifacts import ArtifactStore
from ..errors import ArgumentError
from ..io import console, handle_error, parse_list
from ..pipeline import run_plot
from ..render import LabelPolicy
from . import load_pipeline_config


def plot(
    ctx: typer.Context,
    mode: str = typer.Option("left", help="Map to draw (left, right, cross)"),
    highlight: str | None = typer.Option(
        None, help="Comma-separated suffixes whose pseudo-words are colored"
    ),
    morph: bool = typer.Option(False, "--morph", help="Plot the pseudo-word maps"),
    labels: str = typer.Option("top", help="Label policy (all, top, none)"),
    label_top_n: int | None = typer.Option(None, help="Labels drawn with --labels top"),
) -> None:
    """Write plot.<stage>.<mode>.svg."""
    try:
        try:
            policy = LabelPolicy(labels.lower())
        except ValueError:
            raise ArgumentError(f"Unknown label policy {labels!r} (choose all, top, none)") from None
        config = load_pipeline_config(ctx, label_top_n=label_top_n)
        path = run_plot(
            config,
            ArtifactStore(config.out_dir),
            mode.lower(),
            parse_list(highlight),
            morph=morph,
            label_policy=policy,
        )
        console.print(f"[green]Wrote {path}[/green]")
    except Exception as e:
        handle_error(e)
