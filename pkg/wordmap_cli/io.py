"""Console output, argument parsing helpers, and error exits."""

import json
import logging
import sys
from typing import Any, NoReturn

from rich import box
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from .errors import EXIT_IO, EXIT_USAGE, WordmapError

console = Console()
logger = logging.getLogger(__name__)

FORMATS = ("json", "table")


def output_json(data: Any) -> None:
    """Output data as JSON."""
    console.print_json(json.dumps(data, indent=2, default=str))


def output_table(data: list[dict[str, Any]], title: str | None = None) -> None:
    """Output rows as a formatted table.

    Args:
        data: List of dicts to display, all sharing the keys of the first row
        title: Optional table title
    """
    if not data:
        console.print("[dim]No results[/dim]")
        return

    fields = list(data[0].keys())
    table = Table(box=box.SIMPLE, show_header=True, title=title)

    for field in fields:
        table.add_column(field, overflow="fold")

    for row in data:
        table.add_row(*[_format_cell(row.get(field, "")) for field in fields])

    console.print(table)


def _format_cell(value: Any) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def check_format(format: str) -> None:
    """Reject an unknown output format before any work is done."""
    if format not in FORMATS:
        raise WordmapError(f"Unknown output format: {format} (choose from {', '.join(FORMATS)})")


def output_result(data: list[dict[str, Any]], format: str = "table", title: str | None = None) -> None:
    """Output rows in the requested format.

    Args:
        data: Rows to output
        format: Output format (json, table)
        title: Table title, ignored for json
    """
    check_format(format)
    if format == "json":
        output_json(data)
    else:
        output_table(data, title)


def parse_list(value: str | None) -> list[str]:
    """Parse comma-separated string to list.

    Args:
        value: Comma-separated values, or None

    Returns:
        List of stripped, non-empty strings
    """
    if not value:
        return []
    return [v.strip() for v in value.split(",") if v.strip()]


def error_exit(message: str, exit_code: int = EXIT_USAGE) -> NoReturn:
    """Print error message and exit.

    Args:
        message: Error message
        exit_code: Exit code (default 1)
    """
    error_console = Console(stderr=True)
    error_console.print(f"[bold red]Error:[/bold red] {escape(message)}", highlight=False)
    sys.exit(exit_code)


def handle_error(e: Exception) -> NoReturn:
    """Map an exception to its exit code and exit with its message.

    Args:
        e: Exception raised by a pipeline stage
    """
    if isinstance(e, WordmapError):
        exit_code = e.exit_code
    elif isinstance(e, OSError):
        exit_code = EXIT_IO
    else:
        exit_code = EXIT_USAGE
    logger.debug("Stage failed", exc_info=e)
    error_exit(str(e), exit_code)
