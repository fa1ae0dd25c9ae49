"""Command modules for the wordmap CLI."""

from typing import Any

import typer

from ..config import PipelineConfig, resolve_config


def load_pipeline_config(ctx: typer.Context, **overrides: Any) -> PipelineConfig:
    """Resolve the config from the global options plus a command's own flags.

    Args:
        ctx: Typer context carrying the global options
        **overrides: Command flags; None means "not given"

    Returns:
        Validated PipelineConfig
    """
    options = ctx.obj or {}
    return resolve_config(
        options.get("config_path"),
        corpus=options.get("corpus"),
        out_dir=options.get("out_dir"),
        **overrides,
    )
