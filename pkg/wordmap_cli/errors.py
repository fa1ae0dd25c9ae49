"""Exception hierarchy shared by the pipeline modules and the CLI."""

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERIC = 3


class WordmapError(Exception):
    """Base class for all pipeline errors."""

    exit_code = EXIT_USAGE


class ArgumentError(WordmapError, ValueError):
    """Invalid argument to a pipeline operation (K, N, m, columns, canvas)."""


class ConfigError(ArgumentError):
    """Invalid or unreadable configuration."""


class ValidationError(WordmapError, ValueError):
    """Input data violates an invariant (duplicate labels, inconsistent splits)."""


class ParseError(ValidationError):
    """Malformed line in an input file."""

    def __init__(self, message: str, line_number: int, path: str | None = None):
        location = f"{path}:{line_number}" if path else f"line {line_number}"
        super().__init__(f"{location}: {message}")
        self.line_number = line_number
        self.path = path


class IngestionError(WordmapError):
    """Corpus bytes could not be decoded."""

    exit_code = EXIT_IO

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class MissingArtifactError(WordmapError, FileNotFoundError):
    """A stage input is missing; names the stage that produces it."""

    exit_code = EXIT_IO

    def __init__(self, path: str, stage: str):
        super().__init__(f"Missing {path}; run `wordmap {stage}` first")
        self.path = path
        self.stage = stage


class NumericError(WordmapError, ArithmeticError):
    """Eigensolver failed to converge or to meet its residual bound."""

    exit_code = EXIT_NUMERIC

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual
