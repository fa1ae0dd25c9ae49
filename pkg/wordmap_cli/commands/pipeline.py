"""Pipeline command: every stage in order."""

import logging

import typer

from ..artifacts import ArtifactStore
from ..io import check_format, handle_error, output_json, output_table, parse_list
from ..pipeline import run_pipeline
from . import load_pipeline_config

logger = logging.getLogger(__name__)


def pipeline(
    ctx: typer.Context,
    top_k: int | None = typer.Option(None, help="Most frequent words to embed"),
    neighbors: int | None = typer.Option(None, help="Nearest neighbors per word"),
    eigenpairs: int | None = typer.Option(None, help="Coordinate columns to keep"),
    atomic_k: int | None = typer.Option(None, help="Most frequent words kept atomic"),
    signatures_file: str | None = typer.Option(
        None, help="Load stem<TAB>signature lines instead of inducing them"
    ),
    suffixes: str | None = typer.Option(None, help="Comma-separated suffixes to score"),
    cutoff: float | None = typer.Option(None, help="Coherence cut-off on the mean scatter"),
    highlight: str | None = typer.Option(
        None, help="Suffixes colored in the pseudo-word plots (default: --suffixes)"
    ),
    solver: str | None = typer.Option(None, help="Eigensolver (ql, lapack)"),
    output: str = typer.Option("table", help="Output format (json, table)"),
) -> None:
    """Run ingest, embed, plot, morph, embed --morph, coherence and the pseudo-word plots."""
    try:
        check_format(output)
        config = load_pipeline_config(
            ctx,
            top_k=top_k,
            neighbors=neighbors,
            eigenpairs=eigenpairs,
            atomic_k=atomic_k,
            signatures_file=signatures_file,
            cutoff=cutoff,
            solver=solver,
        )
        result = run_pipeline(
            config,
            ArtifactStore(config.out_dir),
            suffixes=parse_list(suffixes),
            highlights=parse_list(highlight),
        )
        for path in result.plots:
            logger.info("Wrote %s", path)

        summary = {
            "corpus": result.ingest.as_row(),
            "embeddings": [e.as_row() for e in result.embeddings],
            "morphology": result.morph.as_row(),
            "coherence": [row.as_row() for row in result.report.rows],
        }
        if output == "json":
            output_json(summary)
            return
        output_table([summary["corpus"]], title="Corpus")
        output_table(summary["embeddings"], title="Embeddings")
        output_table([summary["morphology"]], title="Morphology")
        output_table(summary["coherence"], title=f"Suffix coherence (cut-off {config.cutoff:g})")
    except Exception as e:
        handle_error(e)
