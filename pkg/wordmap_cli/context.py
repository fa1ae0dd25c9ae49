"""Left and right context count vectors and cosine similarity."""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
import scipy.sparse as sp

from .corpus import BigramTable, Vocabulary
from .errors import ArgumentError


class Direction(str, Enum):
    """Which neighbor a context vector counts."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, eq=False)
class ContextMatrix:
    """K sparse rows of length V.

    For a LEFT matrix, entry (i, j) counts how often vocabulary word j occurs
    immediately before row word i; for a RIGHT matrix, immediately after.
    """

    direction: Direction
    rows: sp.csr_matrix
    word_ids: tuple[int, ...]
    words: tuple[str, ...]
    vocabulary: Vocabulary

    @property
    def size(self) -> int:
        return len(self.word_ids)

    def triplets(self) -> Iterator[tuple[str, str, str, int]]:
        """Yield (word, direction, context word, count) for every nonzero entry."""
        coo = self.rows.tocoo()
        order = np.lexsort((coo.col, coo.row))
        for index in order:
            row, col, count = coo.row[index], coo.col[index], coo.data[index]
            yield (
                self.words[row],
                self.direction.value,
                self.vocabulary.word(int(col)),
                int(count),
            )


def build_context_matrix(
    bigrams: BigramTable,
    vocab: Vocabulary,
    K: int,
    direction: Direction | str,
    units: Sequence[str] | None = None,
) -> ContextMatrix:
    """Build context vectors for the top-K words (or an explicit unit list).

    Columns span the whole vocabulary, not only the rows' words.

    Args:
        bigrams: Bigram counts over `vocab`
        vocab: Vocabulary the bigram ids refer to
        K: Number of most frequent words to cover; ignored when `units` is given
        direction: left or right contexts
        units: Optional explicit row words, in the order they should appear

    Returns:
        ContextMatrix with one row per covered word
    """
    direction = Direction(direction)
    if units is None:
        if K <= 0:
            raise ArgumentError(f"K must be positive, got {K}")
        if K > len(vocab):
            raise ArgumentError(f"K ({K}) exceeds vocabulary size ({len(vocab)})")
        word_ids = tuple(range(K))
    else:
        missing = [u for u in units if u not in vocab]
        if missing:
            raise ArgumentError(f"Units missing from vocabulary: {', '.join(missing[:5])}")
        word_ids = tuple(vocab.rank[u] for u in units)
        if not word_ids:
            raise ArgumentError("Unit list is empty")

    row_of = {word_id: i for i, word_id in enumerate(word_ids)}
    row_index: list[int] = []
    col_index: list[int] = []
    data: list[int] = []
    for (left, right), count in bigrams.sorted_items():
        row_word, context_word = (right, left) if direction is Direction.LEFT else (left, right)
        row = row_of.get(row_word)
        if row is None:
            continue
        row_index.append(row)
        col_index.append(context_word)
        data.append(count)

    rows = sp.csr_matrix(
        (np.array(data, dtype=np.int64), (row_index, col_index)),
        shape=(len(word_ids), len(vocab)),
        dtype=np.int64,
    )
    return ContextMatrix(
        direction=direction,
        rows=rows,
        word_ids=word_ids,
        words=tuple(vocab.word(i) for i in word_ids),
        vocabulary=vocab,
    )


def _as_dense_vector(v: Any) -> np.ndarray:
    if sp.issparse(v):
        return np.asarray(v.toarray(), dtype=np.float64).ravel()
    return np.asarray(v, dtype=np.float64).ravel()


def cosine(u: Any, v: Any) -> float:
    """Cosine of the angle between two nonnegative count vectors.

    An all-zero vector has cosine 0 with everything.
    """
    a = _as_dense_vector(u)
    b = _as_dense_vector(v)
    if a.shape != b.shape:
        raise ArgumentError(f"Dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    norm = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if norm == 0.0:
        return 0.0
    return float(np.clip(np.dot(a, b) / norm, 0.0, 1.0))


def cosine_matrix(ctx: ContextMatrix) -> np.ndarray:
    """Dense K x K matrix of pairwise row cosines; zero rows give zero rows."""
    rows = ctx.rows.astype(np.float64)
    norms = np.sqrt(np.asarray(rows.multiply(rows).sum(axis=1)).ravel())
    inverse = np.divide(1.0, norms, out=np.zeros_like(norms), where=norms > 0)
    unit_rows = sp.diags(inverse) @ rows
    similarities = (unit_rows @ unit_rows.T).toarray()
    return np.clip(similarities, 0.0, 1.0)
