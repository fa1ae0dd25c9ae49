"""Pipeline stages: each reads its inputs from the artifact store and writes its outputs back.

Commands are thin wrappers around these functions; `run_pipeline` chains
them in the same order a user would call the commands.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .artifacts import (
    MORPH,
    MORPH_BIGRAMS,
    MORPH_TOKENS,
    MORPH_VOCAB,
    SIGNATURES,
    WORDS,
    ArtifactStore,
)
from .coherence import (
    CoherenceReport,
    NormalizedCoords,
    coherence_report,
    normalize_coords,
    normalize_points,
)
from .config import PipelineConfig
from .context import Direction, build_context_matrix
from .corpus import (
    BOUNDARY,
    TokenizeConfig,
    build_vocabulary,
    count_bigrams,
    read_corpus,
    tokenize,
    word_token_count,
)
from .errors import ArgumentError
from .graph import connected_components, knn_graph, nearest_neighbors
from .morphology import (
    SEPARATOR,
    MorphAnalysis,
    MorphParams,
    induce_signatures,
    load_signatures,
    normalize_suffix,
    read_signature_table,
    select_graph_units,
    transform_corpus,
)
from .render import LabelPolicy, PlotPoint, PlotSpec, make_highlight_groups, render_svg
from .spectral import SpectralEmbedding, corner_words, embed

logger = logging.getLogger(__name__)

PLOT_MODES = ("left", "right", "cross")
# Columns of the 2-D maps; column 0 is the trivial degree direction
X_COLUMN = 1
Y_COLUMN = 2


@dataclass(frozen=True)
class IngestResult:
    tokens: int
    types: int
    sentences: int
    bigram_types: int
    bigram_tokens: int
    skipped: int
    paths: list[Path] = field(default_factory=list)

    def as_row(self) -> dict[str, Any]:
        return {
            "tokens": self.tokens,
            "types": self.types,
            "sentences": self.sentences,
            "bigram_types": self.bigram_types,
            "bigram_tokens": self.bigram_tokens,
            "skipped_pairs": self.skipped,
        }


@dataclass(frozen=True)
class EmbedResult:
    stage: str
    direction: Direction
    vertices: int
    edges: int
    removed: int
    components: int
    eigenvalues: tuple[float, ...]
    paths: list[Path] = field(default_factory=list)

    def as_row(self) -> dict[str, Any]:
        return {
            "stage": self.stage,
            "direction": self.direction.value,
            "vertices": self.vertices,
            "edges": self.edges,
            "removed": self.removed,
            "components": self.components,
            "eigenvalues": " ".join(f"{v:.6f}" for v in self.eigenvalues),
        }


@dataclass(frozen=True)
class MorphResult:
    stems: int
    signatures: int
    analyzed_words: int
    replaced_tokens: int
    paths: list[Path] = field(default_factory=list)

    def as_row(self) -> dict[str, Any]:
        return {
            "stems": self.stems,
            "signatures": self.signatures,
            "analyzed_words": self.analyzed_words,
            "replaced_tokens": self.replaced_tokens,
        }


def stage_name(morph: bool) -> str:
    return MORPH if morph else WORDS


def parse_direction(value: str) -> Direction:
    try:
        return Direction(value.lower())
    except ValueError:
        raise ArgumentError(f"Unknown direction {value!r} (choose left or right)") from None


def _embed_command(stage: str, direction: Direction) -> str:
    """Command line that produces an embedding, for missing-artifact messages."""
    morph_flag = " --morph" if stage == MORPH else ""
    return f"embed{morph_flag} --direction {direction.value}"


def run_ingest(config: PipelineConfig, store: ArtifactStore) -> IngestResult:
    """Tokenize the corpus and write tokens, vocabulary and bigram counts."""
    if not config.corpus:
        raise ArgumentError("No corpus given (use --corpus, WORDMAP_CORPUS or the config file)")

    text = read_corpus(config.corpus)
    tokens = tokenize(
        text,
        TokenizeConfig(
            lowercase=config.lowercase,
            sentence_boundaries=config.sentence_boundaries,
            keep_punctuation=config.keep_punctuation,
        ),
    )
    if not tokens:
        logger.warning("Corpus %s contains no words; writing empty artifacts", config.corpus)

    vocab = build_vocabulary(tokens)
    bigrams = count_bigrams(tokens, vocab)
    paths = [
        store.write_tokens(tokens),
        store.write_vocabulary(vocab),
        store.write_bigrams(bigrams, vocab),
    ]
    logger.info("Ingested %s: %d tokens, %d types", config.corpus, len(tokens), len(vocab))
    return IngestResult(
        tokens=word_token_count(tokens),
        types=len(vocab),
        sentences=sum(1 for token in tokens if token == BOUNDARY),
        bigram_types=len(bigrams.counts),
        bigram_tokens=bigrams.total(),
        skipped=bigrams.skipped,
        paths=paths,
    )


def run_embed(
    config: PipelineConfig,
    store: ArtifactStore,
    direction: Direction | str,
    morph: bool = False,
    dump_context: bool = False,
) -> EmbedResult:
    """Context vectors, neighbor graph and spectral embedding for one direction.

    Without `morph` the graph covers the top_k words of the raw corpus
    (clamped to the vocabulary size). With `morph` it covers the atomic words
    plus the pseudo-words reaching the frequency floor in the transformed corpus.
    """
    direction = Direction(direction)
    stage = stage_name(morph)

    units: list[str] | None = None
    if morph:
        words_vocab = store.read_vocabulary()
        tokens = store.read_tokens(MORPH_TOKENS, stage="morph")
        vocab = build_vocabulary(tokens)
        bigrams = count_bigrams(tokens, vocab)
        store.write_vocabulary(vocab, MORPH_VOCAB)
        store.write_bigrams(bigrams, vocab, MORPH_BIGRAMS)
        atomic = set(words_vocab.words[: config.atomic_k])
        units = select_graph_units(vocab, atomic, config.pseudo_word_floor)
        size = len(units)
    else:
        vocab = store.read_vocabulary()
        bigrams = store.read_bigrams(vocab)
        size = config.top_k
        if size > len(vocab):
            logger.warning(
                "top_k %d exceeds the vocabulary size %d; using %d", size, len(vocab), len(vocab)
            )
            size = len(vocab)

    if size == 0:
        raise ArgumentError(f"No {stage} units to embed; the corpus is empty")
    if config.neighbors >= size:
        raise ArgumentError(
            f"neighbors ({config.neighbors}) must be smaller than the number of "
            f"{stage} units ({size})"
        )

    ctx = build_context_matrix(bigrams, vocab, size, direction, units=units)
    neighbors = nearest_neighbors(ctx, config.neighbors)
    graph = knn_graph(ctx, config.neighbors, neighbors=neighbors)
    embedding = embed(graph, config.eigenpairs, solver=config.solver)
    components, _ = connected_components(graph)

    prefix = store.graph_prefix(stage, direction)
    paths = [store.write_embedding(embedding, store.embedding_name(stage, direction))]
    paths.extend(store.write_graph(graph, prefix))
    paths.append(store.write_neighbors(ctx, neighbors, prefix))
    if dump_context:
        paths.append(store.write_context(ctx, prefix))

    eigenvalues = embedding.eigenvalues if embedding.eigenvalues is not None else np.array([])
    return EmbedResult(
        stage=stage,
        direction=direction,
        vertices=graph.size,
        edges=len(graph.edges),
        removed=len(graph.removed),
        components=components,
        eigenvalues=tuple(float(v) for v in eigenvalues),
        paths=paths,
    )


def run_morph(config: PipelineConfig, store: ArtifactStore) -> MorphResult:
    """Analyze the vocabulary and write signatures plus the pseudo-word corpus."""
    vocab = store.read_vocabulary()
    tokens = store.read_tokens()

    analysis: MorphAnalysis
    if config.signatures_file:
        logger.info("Loading signatures from %s", config.signatures_file)
        analysis = load_signatures(config.signatures_file, vocab)
    else:
        analysis = induce_signatures(
            vocab,
            MorphParams(
                min_word_length=config.min_word_length,
                min_stem_length=config.min_stem_length,
                max_suffix_length=config.max_suffix_length,
                min_stems=config.min_stems,
            ),
        )

    transformed = transform_corpus(tokens, analysis, vocab, config.atomic_k)
    replaced = sum(1 for before, after in zip(tokens, transformed, strict=True) if before != after)
    paths = [store.write_signatures(analysis), store.write_tokens(transformed, MORPH_TOKENS)]
    logger.info(
        "%d signatures over %d stems; %d tokens replaced by pseudo-words",
        len(analysis.signatures()),
        len(analysis.stem_to_signature),
        replaced,
    )
    return MorphResult(
        stems=len(analysis.stem_to_signature),
        signatures=len(analysis.signatures()),
        analyzed_words=len(analysis.word_to_split),
        replaced_tokens=replaced,
        paths=paths,
    )


def read_analysis(store: ArtifactStore) -> MorphAnalysis:
    """The stored signatures; enough to enumerate pseudo-words per suffix."""
    path = store.require(SIGNATURES, "morph")
    return MorphAnalysis(stem_to_signature=read_signature_table(path), word_to_split={})


def read_embedding(store: ArtifactStore, stage: str, direction: Direction) -> SpectralEmbedding:
    return store.read_embedding(
        store.embedding_name(stage, direction), stage=_embed_command(stage, direction)
    )


def run_coherence(
    config: PipelineConfig, store: ArtifactStore, suffixes: Sequence[str] = ()
) -> CoherenceReport:
    """Score suffixes in both transformed-corpus maps and write the report."""
    analysis = read_analysis(store)
    left = normalize_coords(read_embedding(store, MORPH, Direction.LEFT), X_COLUMN, Y_COLUMN)
    right = normalize_coords(read_embedding(store, MORPH, Direction.RIGHT), X_COLUMN, Y_COLUMN)
    report = coherence_report(left, right, suffixes, analysis, cutoff=config.cutoff)
    store.write_report(report)
    return report


def plot_coords(store: ArtifactStore, stage: str, mode: str) -> NormalizedCoords:
    """Unit-square points of a plot mode, in embedding row order.

    left and right use columns 1 and 2 of one map; cross pairs column 1 of
    the left map with column 1 of the right map over the words both contain.
    """
    if mode not in PLOT_MODES:
        raise ArgumentError(f"Unknown plot mode {mode!r} (choose from {', '.join(PLOT_MODES)})")
    if mode != "cross":
        embedding = read_embedding(store, stage, Direction(mode))
        return normalize_coords(embedding, X_COLUMN, Y_COLUMN)

    left = read_embedding(store, stage, Direction.LEFT)
    right = read_embedding(store, stage, Direction.RIGHT)
    right_index = right.index()
    shared = [i for i, word in enumerate(left.vertex_words) if word in right_index]
    if not shared:
        raise ArgumentError("Left and right maps share no words")
    words = [left.vertex_words[i] for i in shared]
    x = left.column(X_COLUMN)[shared]
    y = right.column(X_COLUMN)[[right_index[w] for w in words]]
    return normalize_points(words, x, y)


def highlight_labels(labels: Sequence[str], suffix: str) -> list[str]:
    """Pseudo-words among `labels` that carry the given suffix."""
    ending = f"{SEPARATOR}{normalize_suffix(suffix)}"
    return [label for label in labels if label.endswith(ending)]


def run_plot(
    config: PipelineConfig,
    store: ArtifactStore,
    mode: str,
    highlights: Sequence[str] = (),
    morph: bool = False,
    label_policy: LabelPolicy | str = LabelPolicy.TOP,
) -> Path:
    """Render one map as SVG; highlighted suffixes color their pseudo-words."""
    stage = stage_name(morph)
    coords = plot_coords(store, stage, mode)
    labels = list(coords.points)

    groups: dict[str, list[str]] = {}
    for suffix in highlights:
        name = normalize_suffix(suffix)
        members = highlight_labels(labels, name)
        if not members:
            logger.warning("No %s points carry the suffix %s", stage, name)
        groups[f"-{name}"] = members

    spec = PlotSpec(
        points=tuple(PlotPoint(label, *coords.points[label]) for label in labels),
        highlight_groups=make_highlight_groups(groups),
        label_policy=LabelPolicy(label_policy),
        label_top_n=config.label_top_n,
        title=f"{stage} {mode}",
    )
    return store.write_text(f"plot.{stage}.{mode}.svg", render_svg(spec))


def run_corners(
    config: PipelineConfig,
    store: ArtifactStore,
    direction: Direction | str,
    count: int = 10,
    morph: bool = False,
) -> tuple[dict[str, list[str]], NormalizedCoords, Path]:
    """Most extreme words toward each side of a map, with their unit-square positions."""
    direction = Direction(direction)
    stage = stage_name(morph)
    embedding = read_embedding(store, stage, direction)
    corners = corner_words(embedding, X_COLUMN, Y_COLUMN, count)
    coords = normalize_coords(embedding, X_COLUMN, Y_COLUMN)
    path = store.write_corners(corners, coords, f"corners.{stage}.{direction.value}.tsv")
    return corners, coords, path


@dataclass
class PipelineResult:
    ingest: IngestResult
    embeddings: list[EmbedResult]
    morph: MorphResult
    report: CoherenceReport
    plots: list[Path]


def run_pipeline(
    config: PipelineConfig,
    store: ArtifactStore,
    suffixes: Sequence[str] = (),
    highlights: Sequence[str] = (),
) -> PipelineResult:
    """Every stage in command order.

    ingest; embed left and right; plot left, right, cross; morph; embed
    --morph left and right; coherence; plot --morph left, right, cross with
    the highlights (default: the scored suffixes).
    """
    ingest = run_ingest(config, store)
    if ingest.types == 0:
        logger.warning("Nothing to embed in an empty corpus; skipping the remaining stages")
        return PipelineResult(
            ingest=ingest,
            embeddings=[],
            morph=MorphResult(stems=0, signatures=0, analyzed_words=0, replaced_tokens=0),
            report=CoherenceReport(rows=(), cutoff=config.cutoff),
            plots=[],
        )

    embeddings = [run_embed(config, store, d) for d in Direction]
    plots = [run_plot(config, store, mode) for mode in PLOT_MODES]

    morph = run_morph(config, store)
    embeddings.extend(run_embed(config, store, d, morph=True) for d in Direction)
    report = run_coherence(config, store, suffixes)

    marked = list(highlights) or list(suffixes)
    plots.extend(run_plot(config, store, mode, marked, morph=True) for mode in PLOT_MODES)
    return PipelineResult(
        ingest=ingest, embeddings=embeddings, morph=morph, report=report, plots=plots
    )
