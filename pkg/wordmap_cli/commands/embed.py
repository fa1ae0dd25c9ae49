"""Embed command: neighbor graph and spectral coordinates per direction."""

import logging

import typer

from ..artifacts import ArtifactStore
from ..context import Direction
from ..io import check_format, handle_error, output_result
from ..pipeline import parse_direction, run_embed
from . import load_pipeline_config

logger = logging.getLogger(__name__)


def embed(
    ctx: typer.Context,
    direction: str = typer.Option("both", help="Context direction (left, right, both)"),
    morph: bool = typer.Option(False, "--morph", help="Embed the pseudo-word corpus"),
    top_k: int | None = typer.Option(None, help="Most frequent words to embed"),
    neighbors: int | None = typer.Option(None, help="Nearest neighbors per word"),
    eigenpairs: int | None = typer.Option(None, help="Coordinate columns to keep"),
    atomic_k: int | None = typer.Option(None, help="Words kept atomic with --morph"),
    pseudo_word_floor: int | None = typer.Option(
        None, help="Minimum pseudo-word count with --morph"
    ),
    solver: str | None = typer.Option(None, help="Eigensolver (ql, lapack)"),
    dump_context: bool = typer.Option(
        False, "--dump-context", help="Also write the context count triplets"
    ),
    output: str = typer.Option("table", help="Output format (json, table)"),
) -> None:
    """Build LeftGraph and/or RightGraph and write their embeddings."""
    try:
        check_format(output)
        directions = (
            list(Direction) if direction.lower() == "both" else [parse_direction(direction)]
        )
        config = load_pipeline_config(
            ctx,
            top_k=top_k,
            neighbors=neighbors,
            eigenpairs=eigenpairs,
            atomic_k=atomic_k,
            pseudo_word_floor=pseudo_word_floor,
            solver=solver,
        )
        store = ArtifactStore(config.out_dir)

        rows = []
        for d in directions:
            result = run_embed(config, store, d, morph=morph, dump_context=dump_context)
            for path in result.paths:
                logger.info("Wrote %s", path)
            rows.append(result.as_row())
        output_result(rows, output, title="Embeddings")
    except Exception as e:
        handle_error(e)
