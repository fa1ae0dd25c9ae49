"""Tokenization, frequency-ranked vocabulary, and bigram counting."""

import re
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .errors import IngestionError

# Reserved token between sentences. Tokens never start with "<" because
# leading non-alphanumerics are stripped, so it cannot collide with a word.
BOUNDARY = "</s>"
SENTENCE_FINAL = frozenset(".!?")
# Code points XML 1.0 cannot carry; the tokenizer treats them as whitespace
XML_ILLEGAL = re.compile(r"[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff\ufffe\uffff]")


@dataclass(frozen=True)
class TokenizeConfig:
    """Switches for the punctuation heuristic."""

    lowercase: bool = True
    sentence_boundaries: bool = True
    keep_punctuation: bool = False


@dataclass(frozen=True)
class Vocabulary:
    """Words ranked by descending count, ties in first-occurrence order."""

    entries: tuple[tuple[str, int], ...]
    rank: dict[str, int] = field(compare=False, repr=False)

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[str, int]]) -> "Vocabulary":
        entries = tuple(entries)
        rank = {word: i for i, (word, _) in enumerate(entries)}
        if len(rank) != len(entries):
            raise ValueError("Vocabulary entries must be unique")
        if BOUNDARY in rank:
            raise ValueError("Boundary marker cannot be a vocabulary entry")
        return cls(entries=entries, rank=rank)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: object) -> bool:
        return word in self.rank

    @property
    def words(self) -> list[str]:
        return [word for word, _ in self.entries]

    def count(self, word: str) -> int:
        index = self.rank.get(word)
        return 0 if index is None else self.entries[index][1]

    def word(self, index: int) -> str:
        return self.entries[index][0]


@dataclass(frozen=True)
class BigramTable:
    """Sparse counts of ordered adjacent (left id, right id) pairs.

    `skipped` counts adjacencies that were not recorded because a boundary
    marker or an out-of-vocabulary token sat on either side.
    """

    counts: dict[tuple[int, int], int]
    skipped: int = 0

    def total(self) -> int:
        return sum(self.counts.values())

    def sorted_items(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.counts.items())


def decode_text(data: bytes, source: str = "corpus") -> str:
    """Decode corpus bytes as strict UTF-8."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise IngestionError(f"{source}: invalid UTF-8 ({e.reason})", e.start) from e


def read_corpus(path: str | Path) -> str:
    """Read a UTF-8 corpus file.

    Args:
        path: Corpus file

    Returns:
        Decoded text
    """
    path = Path(path)
    return decode_text(path.read_bytes(), source=str(path))


def _split_chunk(chunk: str) -> tuple[str, str, str]:
    """Split a whitespace chunk into (leading punctuation, word, trailing punctuation)."""
    start = 0
    while start < len(chunk) and not chunk[start].isalnum():
        start += 1
    end = len(chunk)
    while end > start and not chunk[end - 1].isalnum():
        end -= 1
    return chunk[:start], chunk[start:end], chunk[end:]


def iter_tokens(text: str, config: TokenizeConfig) -> Iterator[str]:
    previous_was_word = False
    for chunk in XML_ILLEGAL.sub(" ", text).split():
        lead, word, trail = _split_chunk(chunk)
        if config.lowercase:
            word = word.lower()

        if config.keep_punctuation and lead:
            yield lead
            previous_was_word = True
        if word:
            yield word
            previous_was_word = True
        if config.keep_punctuation and trail:
            yield trail
            previous_was_word = True

        # A punctuation-only chunk lands entirely in `lead`
        closing = trail if word else lead
        if (
            config.sentence_boundaries
            and previous_was_word
            and any(ch in SENTENCE_FINAL for ch in closing)
        ):
            yield BOUNDARY
            previous_was_word = False


def tokenize(text: str | bytes, config: TokenizeConfig | None = None) -> list[str]:
    """Turn raw text into lowercased word tokens and boundary markers.

    Whitespace and control characters XML cannot carry separate chunks;
    leading and trailing non-alphanumerics are stripped from each chunk
    while internal apostrophes and hyphens survive.
    A run of `.`, `!` or `?` closing a chunk emits one boundary marker, and
    consecutive markers collapse into one.

    Args:
        text: Corpus text, or raw bytes decoded as UTF-8
        config: Tokenization switches

    Returns:
        Token list
    """
    if isinstance(text, bytes):
        text = decode_text(text)
    return list(iter_tokens(text, config or TokenizeConfig()))


def build_vocabulary(tokens: Iterable[str]) -> Vocabulary:
    """Count words, excluding boundary markers, ranked by frequency."""
    # Counter keeps first-insertion order and most_common() sorts stably
    counts = Counter(token for token in tokens if token != BOUNDARY)
    return Vocabulary.from_entries(counts.most_common())


def count_bigrams(tokens: Sequence[str], vocab: Vocabulary) -> BigramTable:
    """Count adjacent ordered word pairs that no boundary separates.

    Pairs with a token outside `vocab` are skipped, since the vocabulary
    may have been truncated externally.
    """
    counts: Counter[tuple[int, int]] = Counter()
    skipped = 0
    rank = vocab.rank
    for left, right in zip(tokens, tokens[1:], strict=False):
        left_id = rank.get(left)
        right_id = rank.get(right)
        if left_id is None or right_id is None:
            skipped += 1
            continue
        counts[(left_id, right_id)] += 1
    return BigramTable(counts=dict(counts), skipped=skipped)


def word_token_count(tokens: Iterable[str]) -> int:
    return sum(1 for token in tokens if token != BOUNDARY)
