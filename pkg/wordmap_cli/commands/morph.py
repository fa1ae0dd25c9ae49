"""Morph command: signatures and the pseudo-word corpus."""

import logging

import typer

from ..artifacts import ArtifactStore
from ..io import check_format, handle_error, output_result
from ..pipeline import run_morph
from . import load_pipeline_config

logger = logging.getLogger(__name__)


def morph(
    ctx: typer.Context,
    atomic_k: int | None = typer.Option(None, help="Most frequent words kept atomic"),
    signatures_file: str | None = typer.Option(
        None, help="Load stem<TAB>signature lines instead of inducing them"
    ),
    min_word_length: int | None = typer.Option(None, help="Shortest word split with a suffix"),
    min_stem_length: int | None = typer.Option(None, help="Shortest stem"),
    max_suffix_length: int | None = typer.Option(None, help="Longest suffix"),
    min_stems: int | None = typer.Option(None, help="Stems needed for a robust signature"),
    output: str = typer.Option("table", help="Output format (json, table)"),
) -> None:
    """Analyze words into stem + suffix and rewrite the corpus with pseudo-words."""
    try:
        check_format(output)
        config = load_pipeline_config(
            ctx,
            atomic_k=atomic_k,
            signatures_file=signatures_file,
            min_word_length=min_word_length,
            min_stem_length=min_stem_length,
            max_suffix_length=max_suffix_length,
            min_stems=min_stems,
        )
        result = run_morph(config, ArtifactStore(config.out_dir))
        for path in result.paths:
            logger.info("Wrote %s", path)
        output_result([result.as_row()], output, title="Morphology")
    except Exception as e:
        handle_error(e)
