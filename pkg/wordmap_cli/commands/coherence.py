"""Coherence command: suffix scatter in both pseudo-word maps."""

import logging

import typer

from ..artifacts import REPORT, ArtifactStore
from ..io import check_format, handle_error, output_result, parse_list
from ..pipeline import run_coherence
from . import load_pipeline_config

logger = logging.getLogger(__name__)


def coherence(
    ctx: typer.Context,
    suffixes: str | None = typer.Option(
        None, help="Comma-separated suffixes, e.g. ed,s,-ly (default: all)"
    ),
    cutoff: float | None = typer.Option(None, help="Coherence cut-off on the mean scatter"),
    output: str = typer.Option("table", help="Output format (json, table)"),
) -> None:
    """Score how tightly each suffix's signatures cluster and write coherence.tsv."""
    try:
        check_format(output)
        config = load_pipeline_config(ctx, cutoff=cutoff)
        store = ArtifactStore(config.out_dir)
        report = run_coherence(config, store, parse_list(suffixes))
        logger.info("Wrote %s", store.path(REPORT))
        output_result(
            [row.as_row() for row in report.rows],
            output,
            title=f"Suffix coherence (cut-off {report.cutoff:g})",
        )
    except Exception as e:
        handle_error(e)
