"""Ingest command: corpus to tokens, vocabulary and bigram counts."""

import logging

import typer

from ..artifacts import ArtifactStore
from ..io import check_format, handle_error, output_result
from ..pipeline import run_ingest
from . import load_pipeline_config

logger = logging.getLogger(__name__)


def ingest(
    ctx: typer.Context,
    lowercase: bool | None = typer.Option(
        None, "--lowercase/--no-lowercase", help="Lowercase words (default on)"
    ),
    sentence_boundaries: bool | None = typer.Option(
        None,
        "--sentence-boundaries/--no-sentence-boundaries",
        help="Block bigrams across . ! ? (default on)",
    ),
    keep_punctuation: bool | None = typer.Option(
        None, "--keep-punctuation/--drop-punctuation", help="Keep punctuation runs as tokens"
    ),
    output: str = typer.Option("table", help="Output format (json, table)"),
) -> None:
    """Tokenize the corpus and write tokens.txt, vocab.tsv and bigrams.tsv."""
    try:
        check_format(output)
        config = load_pipeline_config(
            ctx,
            lowercase=lowercase,
            sentence_boundaries=sentence_boundaries,
            keep_punctuation=keep_punctuation,
        )
        result = run_ingest(config, ArtifactStore(config.out_dir))
        for path in result.paths:
            logger.info("Wrote %s", path)
        output_result([result.as_row()], output, title="Corpus")
    except Exception as e:
        handle_error(e)
