"""wordmap CLI main entrypoint."""

import sys

import click
import typer
from rich.console import Console

from . import __version__
from .commands import coherence, config, corners, embed, ingest, morph, pipeline, plot
from .errors import EXIT_USAGE
from .log import setup_logging

app = typer.Typer(
    help="wordmap - spectral word maps from bigram neighbor graphs, with suffix coherence",
    no_args_is_help=True,
)

# Global options
config_path_option = typer.Option(None, "--config", help="Config file path")
corpus_option = typer.Option(None, help="Corpus file (UTF-8 text)")
out_dir_option = typer.Option(None, help="Directory for stage artifacts")
verbose_option = typer.Option(False, "--verbose", "-v", help="Verbose output")
quiet_option = typer.Option(False, "--quiet", "-q", help="Quiet mode (errors only)")


def _version_callback(value: bool) -> None:
    """Print version and exit when --version is provided."""
    if value:
        Console().print(f"wordmap version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    ctx: typer.Context,
    _version: bool | None = typer.Option(
        None,
        "--version",
        "-V",
        help="Show version and exit.",
        callback=_version_callback,
        is_eager=True,
    ),
    config_path: str | None = config_path_option,
    corpus: str | None = corpus_option,
    out_dir: str | None = out_dir_option,
    verbose: bool = verbose_option,
    quiet: bool = quiet_option,
) -> None:
    """
    wordmap - embed frequent words in 2-D and score suffix coherence.

    Supports configuration via:
    - Command line flags
    - Environment variables (WORDMAP_CORPUS, WORDMAP_OUT_DIR)
    - Config file (./.wordmap.conf or ~/.wordmap.conf)
    """
    setup_logging(verbose=verbose, quiet=quiet)

    # Store in context for subcommands; each command resolves the full config
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    ctx.obj["corpus"] = corpus
    ctx.obj["out_dir"] = out_dir
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet


# Register commands
app.command("ingest")(ingest.ingest)
app.command("embed")(embed.embed)
app.command("morph")(morph.morph)
app.command("coherence")(coherence.coherence)
app.command("plot")(plot.plot)
app.command("corners")(corners.corners)
app.command("pipeline")(pipeline.pipeline)
app.add_typer(config.app, name="config")


def cli() -> None:
    """Console entrypoint; option parsing errors exit with the usage code."""
    try:
        code = app(standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except click.exceptions.Abort:
        Console(stderr=True).print("Aborted!")
        sys.exit(EXIT_USAGE)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    cli()
