"""Configuration management for the wordmap pipeline."""

import os
import shutil
import tempfile
from collections.abc import Iterator
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any

import yaml

from .errors import ConfigError

CONFIG_FILENAME = ".wordmap.conf"
SOLVERS = ("ql", "lapack")


@dataclass(frozen=True)
class PipelineConfig:
    """Every tunable of the pipeline, with the defaults used in the experiments."""

    corpus: str | None = None
    out_dir: str = "wordmap-out"
    top_k: int = 1000
    neighbors: int = 20
    eigenpairs: int = 3
    atomic_k: int = 1000
    min_word_length: int = 4
    min_stem_length: int = 3
    max_suffix_length: int = 5
    min_stems: int = 2
    pseudo_word_floor: int = 5
    cutoff: float = 0.10
    lowercase: bool = True
    sentence_boundaries: bool = True
    keep_punctuation: bool = False
    label_top_n: int = 100
    solver: str = "ql"
    signatures_file: str | None = None

    def validate(self) -> "PipelineConfig":
        """Check cross-field constraints, returning self so calls can chain."""
        counts = {
            "top_k": self.top_k,
            "neighbors": self.neighbors,
            "eigenpairs": self.eigenpairs,
            "atomic_k": self.atomic_k,
            "min_word_length": self.min_word_length,
            "min_stem_length": self.min_stem_length,
            "max_suffix_length": self.max_suffix_length,
            "min_stems": self.min_stems,
            "pseudo_word_floor": self.pseudo_word_floor,
            "label_top_n": self.label_top_n,
        }
        for key, value in counts.items():
            if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
                raise ConfigError(f"{key} must be a positive integer, got {value!r}")
        if self.neighbors >= self.top_k:
            raise ConfigError(
                f"neighbors ({self.neighbors}) must be smaller than top_k ({self.top_k})"
            )
        if self.eigenpairs < 3:
            raise ConfigError(
                f"eigenpairs must be at least 3, got {self.eigenpairs} (maps read columns 1 and 2)"
            )
        if not self.cutoff > 0:
            raise ConfigError(f"cutoff must be positive, got {self.cutoff!r}")
        if not self.out_dir:
            raise ConfigError("out_dir must not be empty")
        if self.corpus is not None and not self.corpus:
            raise ConfigError("corpus path must not be empty")
        if self.solver not in SOLVERS:
            raise ConfigError(f"Unknown solver {self.solver!r} (choose from {', '.join(SOLVERS)})")
        return self


CONFIG_KEYS = {f.name for f in fields(PipelineConfig)}


def load_config(config_path: str | None = None) -> dict[str, Any]:
    """Load configuration values from file.

    Searches for config in:
    1. Provided path (if given)
    2. ./.wordmap.conf (project-local)
    3. ~/.wordmap.conf (user home) when allowed

    Returns empty dict if no config found.
    """
    # Home config is skipped during tests
    use_home_config = not os.getenv("WORDMAP_DISABLE_HOME_CONFIG") and not os.getenv(
        "PYTEST_CURRENT_TEST"
    )

    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise ConfigError(f"Config file not found: {config_path}")
        return _read_config(path)

    local_config = Path(CONFIG_FILENAME)
    if local_config.exists():
        return _read_config(local_config)

    if use_home_config:
        home_config = Path.home() / CONFIG_FILENAME
        if home_config.exists():
            return _read_config(home_config)

    return {}


def _read_config(path: Path) -> dict[str, Any]:
    """Read a YAML mapping or a `key = value` file into normalized keys."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e

    items: list[tuple[str, Any, int | None]]
    if path.suffix in (".yaml", ".yml"):
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in config file {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"Config file {path} must contain a mapping")
        items = [(str(k), v, None) for k, v in data.items()]
    else:
        items = list(_parse_key_values(text, path))

    config: dict[str, Any] = {}
    for raw_key, value, line_number in items:
        key = raw_key.strip().replace("-", "_")
        if key not in CONFIG_KEYS:
            where = f"{path}:{line_number}" if line_number else str(path)
            raise ConfigError(f"{where}: unknown config key '{raw_key}'")
        config[key] = value
    return config


def _parse_key_values(text: str, path: Path) -> Iterator[tuple[str, Any, int]]:
    """Yield (key, value, line_number) from `key = value` lines."""
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_number}: expected 'key = value', got '{raw.strip()}'")
        key, _, value = line.partition("=")
        value = value.strip()
        try:
            parsed = yaml.safe_load(value) if value else None
        except yaml.YAMLError:
            parsed = value
        yield key, parsed, line_number


def resolve_config(config_path: str | None = None, **overrides: Any) -> PipelineConfig:
    """Resolve final configuration from precedence: CLI flags > env vars > config file > defaults.

    Args:
        config_path: Optional explicit config file
        **overrides: CLI flag values; None means "not given"

    Returns:
        Validated PipelineConfig
    """
    unknown = set(overrides) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}")

    file_values = load_config(config_path)
    env_values = {
        key: value
        for key, value in (
            ("corpus", os.getenv("WORDMAP_CORPUS")),
            ("out_dir", os.getenv("WORDMAP_OUT_DIR")),
        )
        if value
    }
    flag_values = {key: value for key, value in overrides.items() if value is not None}

    merged = {**file_values, **env_values, **flag_values}
    for key in ("corpus", "out_dir", "signatures_file", "solver"):
        if merged.get(key) is not None:
            merged[key] = str(merged[key])
    if "cutoff" in merged and isinstance(merged["cutoff"], int | str):
        try:
            merged["cutoff"] = float(merged["cutoff"])
        except ValueError as e:
            raise ConfigError(f"cutoff must be a number, got {merged['cutoff']!r}") from e

    return replace(PipelineConfig(), **merged).validate()


def init_config(path: str | None = None, force: bool = False) -> Path:
    """Write a config file holding every default value.

    Args:
        path: Target file (default ./.wordmap.conf)
        force: Overwrite an existing file

    Returns:
        Path of the written file
    """
    config_path = Path(path) if path else Path(CONFIG_FILENAME)
    if config_path.exists() and not force:
        raise ConfigError(f"{config_path} already exists (use --force to overwrite)")

    lines = ["# wordmap pipeline configuration", "# flags and WORDMAP_* env vars override these"]
    for key, value in asdict(PipelineConfig()).items():
        if value is None:
            lines.append(f"# {key} =")
        elif isinstance(value, bool):
            lines.append(f"{key} = {str(value).lower()}")
        else:
            lines.append(f"{key} = {value}")
    content = "\n".join(lines) + "\n"

    # Write atomically using temp file
    config_dir = config_path.parent if str(config_path.parent) else Path(".")
    config_dir.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        mode="w", dir=config_dir, delete=False, suffix=".tmp", encoding="utf-8"
    ) as f:
        temp_path = Path(f.name)
        f.write(content)

    shutil.move(str(temp_path), str(config_path))

    return config_path
