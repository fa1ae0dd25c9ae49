"""On-disk stage artifacts: TSV codecs and stage preconditions."""

import os
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from .coherence import CoherenceReport, NormalizedCoords
from .context import ContextMatrix, Direction
from .corpus import BOUNDARY, BigramTable, Vocabulary
from .errors import MissingArtifactError, ParseError
from .graph import NeighborGraph
from .morphology import MorphAnalysis
from .spectral import SpectralEmbedding

WORDS = "words"
MORPH = "morph"

VOCAB = "vocab.tsv"
BIGRAMS = "bigrams.tsv"
TOKENS = "tokens.txt"
SIGNATURES = "signatures.tsv"
MORPH_TOKENS = "morph.tokens.txt"
MORPH_VOCAB = "morph.vocab.tsv"
MORPH_BIGRAMS = "morph.bigrams.tsv"
REPORT = "coherence.tsv"


def _format_score(value: float | None) -> str:
    return "NA" if value is None else f"{value:.4f}"


class ArtifactStore:
    """Reads and writes every intermediate file under one output directory."""

    def __init__(self, out_dir: str | Path):
        self.root = Path(out_dir)

    def path(self, name: str) -> Path:
        return self.root / name

    def require(self, name: str, stage: str) -> Path:
        """Path of an input artifact, or MissingArtifactError naming the stage to run."""
        path = self.path(name)
        if not path.exists():
            raise MissingArtifactError(str(path), stage)
        return path

    @staticmethod
    def embedding_name(stage: str, direction: Direction | str) -> str:
        return f"{stage}.{Direction(direction).value}.embedding.tsv"

    @staticmethod
    def graph_prefix(stage: str, direction: Direction | str) -> str:
        return f"{stage}.{Direction(direction).value}"

    def write_lines(self, name: str, lines: Iterable[str]) -> Path:
        """Write lines atomically (temp file + rename)."""
        self.root.mkdir(parents=True, exist_ok=True)
        target = self.path(name)
        with tempfile.NamedTemporaryFile(
            mode="w", dir=self.root, delete=False, suffix=".tmp", encoding="utf-8", newline="\n"
        ) as f:
            temp_path = Path(f.name)
            for line in lines:
                f.write(line)
                f.write("\n")
        os.replace(temp_path, target)
        return target

    def write_text(self, name: str, text: str) -> Path:
        return self.write_lines(name, [text.rstrip("\n")])

    def _read_rows(self, name: str, stage: str, width: int) -> list[tuple[int, list[str]]]:
        path = self.require(name, stage)
        rows = []
        with open(path, encoding="utf-8") as f:
            for line_number, raw in enumerate(f, start=1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                fields = line.split("\t")
                if len(fields) != width:
                    raise ParseError(f"expected {width} tab-separated fields", line_number, str(path))
                rows.append((line_number, fields))
        return rows

    # Vocabulary: rank<TAB>word<TAB>count

    def write_vocabulary(self, vocab: Vocabulary, name: str = VOCAB) -> Path:
        return self.write_lines(
            name, (f"{rank}\t{word}\t{count}" for rank, (word, count) in enumerate(vocab.entries))
        )

    def read_vocabulary(self, name: str = VOCAB, stage: str = "ingest") -> Vocabulary:
        entries = []
        for line_number, (rank, word, count) in self._read_rows(name, stage, 3):
            try:
                if int(rank) != len(entries):
                    raise ParseError(f"rank {rank} out of order", line_number, name)
                entries.append((word, int(count)))
            except ValueError as e:
                raise ParseError(f"bad number ({e})", line_number, name) from e
        return Vocabulary.from_entries(entries)

    # Bigrams: left<TAB>right<TAB>count

    def write_bigrams(self, bigrams: BigramTable, vocab: Vocabulary, name: str = BIGRAMS) -> Path:
        return self.write_lines(
            name,
            (
                f"{vocab.word(left)}\t{vocab.word(right)}\t{count}"
                for (left, right), count in bigrams.sorted_items()
            ),
        )

    def read_bigrams(
        self, vocab: Vocabulary, name: str = BIGRAMS, stage: str = "ingest"
    ) -> BigramTable:
        counts: dict[tuple[int, int], int] = {}
        for line_number, (left, right, count) in self._read_rows(name, stage, 3):
            if left not in vocab or right not in vocab:
                raise ParseError("bigram word missing from vocabulary", line_number, name)
            try:
                counts[(vocab.rank[left], vocab.rank[right])] = int(count)
            except ValueError as e:
                raise ParseError(f"bad count ({e})", line_number, name) from e
        return BigramTable(counts=counts)

    # Token streams: space-separated, one sentence per line

    def write_tokens(self, tokens: Sequence[str], name: str = TOKENS) -> Path:
        def sentences() -> Iterable[str]:
            current: list[str] = []
            for token in tokens:
                current.append(token)
                if token == BOUNDARY:
                    yield " ".join(current)
                    current = []
            if current:
                yield " ".join(current)

        return self.write_lines(name, sentences())

    def read_tokens(self, name: str = TOKENS, stage: str = "ingest") -> list[str]:
        path = self.require(name, stage)
        return path.read_text(encoding="utf-8").split()

    # Embeddings: word<TAB>c0<TAB>...<TAB>c(m-1)

    def write_embedding(self, embedding: SpectralEmbedding, name: str) -> Path:
        return self.write_lines(
            name,
            (
                "\t".join([word, *(f"{value:.12g}" for value in embedding.coords[i])])
                for i, word in enumerate(embedding.vertex_words)
            ),
        )

    def read_embedding(self, name: str, stage: str) -> SpectralEmbedding:
        path = self.require(name, stage)
        words: list[str] = []
        rows: list[list[float]] = []
        with open(path, encoding="utf-8") as f:
            for line_number, raw in enumerate(f, start=1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                word, *values = line.split("\t")
                if rows and len(values) != len(rows[0]):
                    raise ParseError("inconsistent column count", line_number, str(path))
                try:
                    rows.append([float(v) for v in values])
                except ValueError as e:
                    raise ParseError(f"bad coordinate ({e})", line_number, str(path)) from e
                words.append(word)
        coords = np.array(rows, dtype=np.float64).reshape(len(words), -1 if rows else 0)
        return SpectralEmbedding(vertex_words=tuple(words), coords=coords)

    # Graph side files

    def write_graph(self, graph: NeighborGraph, prefix: str) -> list[Path]:
        return [
            self.write_lines(f"{prefix}.edges.tsv", (f"{a}\t{b}" for a, b in graph.edge_words())),
            self.write_lines(f"{prefix}.removed.txt", graph.removed),
        ]

    def write_neighbors(self, ctx: ContextMatrix, neighbors: list[list[int]], prefix: str) -> Path:
        return self.write_lines(
            f"{prefix}.neighbors.tsv",
            (
                f"{ctx.words[i]}\t{','.join(ctx.words[j] for j in chosen)}"
                for i, chosen in enumerate(neighbors)
            ),
        )

    def write_context(self, ctx: ContextMatrix, prefix: str) -> Path:
        return self.write_lines(
            f"{prefix}.context.tsv",
            (f"{w}\t{d}\t{c}\t{n}" for w, d, c, n in ctx.triplets()),
        )

    # Morphology

    def write_signatures(self, analysis: MorphAnalysis, name: str = SIGNATURES) -> Path:
        return self.write_lines(
            name,
            (f"{stem}\t{sig.name}" for stem, sig in sorted(analysis.stem_to_signature.items())),
        )

    # Reports

    def write_report(self, report: CoherenceReport, name: str = REPORT) -> Path:
        header = "suffix\tn_signatures\tleft_scatter\tright_scatter\tmean\tverdict"
        rows = (
            f"{row.suffix}\t{row.signature_count}\t{_format_score(row.left_scatter)}\t"
            f"{_format_score(row.right_scatter)}\t{_format_score(row.mean_scatter)}\t{row.verdict}"
            for row in report.rows
        )
        return self.write_lines(name, [header, *rows])

    def write_corners(
        self, corners: dict[str, list[str]], coords: NormalizedCoords, name: str
    ) -> Path:
        lines = ["region\tposition\tword\tx\ty"]
        for region, words in corners.items():
            for position, word in enumerate(words, start=1):
                x, y = coords.points[word]
                lines.append(f"{region}\t{position}\t{word}\t{x:.4f}\t{y:.4f}")
        return self.write_lines(name, lines)
