"""Corners command: the most extreme words of a map."""

import logging

import typer

from ..artifacts import ArtifactStore
from ..io import check_format, handle_error, output_result
from ..pipeline import parse_direction, run_corners
from . import load_pipeline_config

logger = logging.getLogger(__name__)


def corners(
    ctx: typer.Context,
    direction: str = typer.Option("left", help="Map to inspect (left, right)"),
    morph: bool = typer.Option(False, "--morph", help="Inspect a pseudo-word map"),
    count: int = typer.Option(10, help="Words listed per region"),
    output: str = typer.Option("table", help="Output format (json, table)"),
) -> None:
    """List the words nearest each side of a map and write corners.<stage>.<dir>.tsv."""
    try:
        check_format(output)
        config = load_pipeline_config(ctx)
        regions, coords, path = run_corners(
            config, ArtifactStore(config.out_dir), parse_direction(direction), count, morph=morph
        )
        logger.info("Wrote %s", path)
        rows = [
            {
                "region": region,
                "position": position,
                "word": word,
                "x": coords.points[word][0],
                "y": coords.points[word][1],
            }
            for region, words in regions.items()
            for position, word in enumerate(words, start=1)
        ]
        output_result(rows, output, title="Corners")
    except Exception as e:
        handle_error(e)
