"""Stem/suffix signatures and the signature_suffix corpus rewrite.

Signatures are induced by a small robust-signature heuristic: every split of
a word into stem + suffix is a candidate, a stem's signature is the set of
suffixes it occurs with, and only signatures shared by several stems are kept.
Analyses produced by an external analyzer can be loaded instead.
"""

from collections import defaultdict
from collections.abc import Collection, Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from .corpus import BOUNDARY, Vocabulary
from .errors import ArgumentError, ParseError, ValidationError

NULL = "NULL"
SEPARATOR = "_"


def suffix_name(suffix: str) -> str:
    """Printable suffix: the empty suffix is NULL."""
    return suffix or NULL


def normalize_suffix(name: str) -> str:
    """Map a user-supplied suffix (`-ed`, `ed`, `NULL`) to its printable name."""
    name = name.strip()
    if name.startswith("-") and len(name) > 1:
        name = name[1:]
    return NULL if name in ("", NULL) else name


def _sort_key(suffix: str) -> tuple[bool, str]:
    return (suffix != "", suffix)


@dataclass(frozen=True)
class Signature:
    """Sorted set of suffixes a stem occurs with; "" stands for NULL."""

    suffixes: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.suffixes) < 2:
            raise ValueError("A signature needs at least two suffixes")
        if len(set(self.suffixes)) != len(self.suffixes):
            raise ValueError("Signature suffixes must be unique")
        if list(self.suffixes) != sorted(self.suffixes, key=_sort_key):
            raise ValueError("Signature suffixes must be sorted with NULL first")
        for suffix in self.suffixes:
            if suffix == NULL or any(ch in suffix for ch in ".\t ") or SEPARATOR in suffix:
                raise ValueError(f"Invalid suffix {suffix!r}")

    @classmethod
    def of(cls, suffixes: Iterable[str]) -> "Signature":
        return cls(tuple(sorted(set(suffixes), key=_sort_key)))

    @classmethod
    def parse(cls, name: str) -> "Signature":
        """Parse a dot-joined name such as NULL.ed.ing."""
        parts = name.split(".")
        if any(not part for part in parts):
            raise ValueError(f"Empty suffix in signature {name!r}")
        suffixes = ["" if part == NULL else part for part in parts]
        if len(set(suffixes)) != len(suffixes):
            raise ValueError(f"Duplicate suffix in signature {name!r}")
        return cls.of(suffixes)

    @property
    def name(self) -> str:
        return ".".join(suffix_name(s) for s in self.suffixes)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class WordSplit:
    stem: str
    suffix: str
    signature: Signature

    @property
    def word(self) -> str:
        return self.stem + self.suffix

    @property
    def pseudo_word(self) -> str:
        return f"{self.signature.name}{SEPARATOR}{suffix_name(self.suffix)}"


@dataclass(frozen=True)
class MorphParams:
    min_word_length: int = 4
    min_stem_length: int = 3
    max_suffix_length: int = 5
    min_stems: int = 2


@dataclass(frozen=True, eq=False)
class MorphAnalysis:
    """Stem signatures and the split chosen for every analyzed word."""

    stem_to_signature: dict[str, Signature]
    word_to_split: dict[str, WordSplit]

    def validate(self) -> "MorphAnalysis":
        for word, split in self.word_to_split.items():
            if split.word != word:
                raise ValidationError(f"Split {split.stem}+{split.suffix} does not spell {word}")
            if self.stem_to_signature.get(split.stem) != split.signature:
                raise ValidationError(f"Word {word} disagrees with the signature of {split.stem}")
            if split.suffix not in split.signature.suffixes:
                raise ValidationError(f"Suffix {suffix_name(split.suffix)} not in {split.signature}")
        return self

    def signatures(self) -> list[Signature]:
        return sorted(set(self.stem_to_signature.values()), key=lambda s: s.name)

    def suffixes(self) -> list[str]:
        """Printable names of all suffixes used by some signature, NULL first."""
        found = {suffix for sig in self.stem_to_signature.values() for suffix in sig.suffixes}
        return [suffix_name(s) for s in sorted(found, key=_sort_key)]

    def pseudo_words(self, suffix: str) -> list[str]:
        """`<signature>_<suffix>` for every signature containing the suffix."""
        name = normalize_suffix(suffix)
        raw = "" if name == NULL else name
        return sorted(
            f"{sig.name}{SEPARATOR}{name}" for sig in self.signatures() if raw in sig.suffixes
        )


def is_pseudo_word(token: str) -> bool:
    return SEPARATOR in token


def _analyzable(word: str) -> bool:
    return word != BOUNDARY and SEPARATOR not in word and not any(ch.isspace() for ch in word)


def induce_signatures(
    vocab: Vocabulary | Iterable[str], params: MorphParams | None = None
) -> MorphAnalysis:
    """Induce robust signatures from a word list.

    1. Every word of at least `min_word_length` characters is split into
       stem + suffix with 1..`max_suffix_length` suffix characters and a stem of
       at least `min_stem_length`; every word at least `min_stem_length` long is
       also its own stem with the NULL suffix.
    2. A stem's candidate signature is the set of its suffixes.
    3. Signatures with at least two suffixes and `min_stems` stems are robust.
    4. Each word takes the split whose robust signature has the most stems,
       then the longer suffix, then the lexicographically smaller suffix.

    Args:
        vocab: Vocabulary or plain word list
        params: Length and count thresholds

    Returns:
        MorphAnalysis; words without a robust split are absent
    """
    params = params or MorphParams()
    source = vocab.words if isinstance(vocab, Vocabulary) else list(vocab)
    words = sorted({w for w in source if _analyzable(w)})

    stem_suffixes: dict[str, set[str]] = defaultdict(set)
    for word in words:
        for stem, suffix in _splits(word, params):
            stem_suffixes[stem].add(suffix)

    stems_by_signature: dict[frozenset[str], list[str]] = defaultdict(list)
    for stem, suffixes in stem_suffixes.items():
        stems_by_signature[frozenset(suffixes)].append(stem)

    robust: dict[frozenset[str], Signature] = {
        suffixes: Signature.of(suffixes)
        for suffixes, stems in stems_by_signature.items()
        if len(suffixes) >= 2 and len(stems) >= params.min_stems
    }
    stem_count = {suffixes: len(stems_by_signature[suffixes]) for suffixes in robust}

    stem_to_signature = {
        stem: robust[frozenset(suffixes)]
        for stem, suffixes in sorted(stem_suffixes.items())
        if frozenset(suffixes) in robust
    }

    word_to_split: dict[str, WordSplit] = {}
    for word in words:
        candidates = [
            (stem, suffix)
            for stem, suffix in _splits(word, params)
            if stem in stem_to_signature
        ]
        if not candidates:
            continue
        stem, suffix = min(
            candidates,
            key=lambda c: (-stem_count[frozenset(stem_suffixes[c[0]])], -len(c[1]), c[1]),
        )
        word_to_split[word] = WordSplit(stem, suffix, stem_to_signature[stem])

    return MorphAnalysis(stem_to_signature, word_to_split).validate()


def _splits(word: str, params: MorphParams) -> list[tuple[str, str]]:
    splits: list[tuple[str, str]] = []
    if len(word) >= params.min_stem_length:
        splits.append((word, ""))
    if len(word) >= params.min_word_length:
        for length in range(1, params.max_suffix_length + 1):
            stem, suffix = word[:-length], word[-length:]
            if len(stem) < params.min_stem_length:
                break
            if "." in suffix:
                continue
            splits.append((stem, suffix))
    return splits


def read_signature_table(source: str | Path | Iterable[str]) -> dict[str, Signature]:
    """Parse `stem<TAB>signature-name` lines; stems sharing a name share one Signature."""
    path: str | None = None
    if isinstance(source, str | Path):
        path = str(source)
        lines: Iterable[str] = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = source

    interned: dict[str, Signature] = {}
    stem_to_signature: dict[str, Signature] = {}
    for line_number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("expected 'stem<TAB>signature'", line_number, path)
        stem, name = parts
        if not stem or not _analyzable(stem):
            raise ParseError(f"invalid stem {stem!r}", line_number, path)
        try:
            signature = Signature.parse(name)
        except ValueError as e:
            raise ParseError(str(e), line_number, path) from e
        signature = interned.setdefault(signature.name, signature)

        previous = stem_to_signature.get(stem)
        if previous is not None and previous != signature:
            raise ValidationError(
                f"Stem {stem} listed with both {previous} and {signature} (line {line_number})"
            )
        stem_to_signature[stem] = signature
    return stem_to_signature


def load_signatures(
    source: str | Path | Iterable[str], vocab: Vocabulary | None = None
) -> MorphAnalysis:
    """Read `stem<TAB>signature-name` lines into an analysis.

    Every stem + suffix combination becomes an analyzed word; with a
    vocabulary, only combinations that occur in it are kept.

    Args:
        source: Signature file path, or its lines
        vocab: Optional vocabulary restricting the generated words

    Returns:
        Validated MorphAnalysis
    """
    stem_to_signature = read_signature_table(source)
    word_to_split: dict[str, WordSplit] = {}
    for stem, signature in sorted(stem_to_signature.items()):
        for suffix in signature.suffixes:
            split = WordSplit(stem, suffix, signature)
            if vocab is not None and split.word not in vocab:
                continue
            existing = word_to_split.get(split.word)
            if existing is not None:
                raise ValidationError(
                    f"Word {split.word} is split both as {existing.stem}+"
                    f"{suffix_name(existing.suffix)} and {stem}+{suffix_name(suffix)}"
                )
            word_to_split[split.word] = split

    return MorphAnalysis(stem_to_signature, word_to_split).validate()


def transform_corpus(
    tokens: Sequence[str], analysis: MorphAnalysis, vocab: Vocabulary, K_atomic: int
) -> list[str]:
    """Replace analyzed non-atomic words by `<signature>_<suffix>` pseudo-words.

    Words ranked below K_atomic, unanalyzed words, boundary markers and
    existing pseudo-words pass through unchanged.
    """
    if K_atomic <= 0:
        raise ArgumentError(f"K_atomic must be positive, got {K_atomic}")
    transformed: list[str] = []
    for token in tokens:
        if token == BOUNDARY or is_pseudo_word(token):
            transformed.append(token)
            continue
        rank = vocab.rank.get(token)
        if rank is not None and rank < K_atomic:
            transformed.append(token)
            continue
        split = analysis.word_to_split.get(token)
        transformed.append(split.pseudo_word if split else token)
    return transformed


def select_graph_units(vocab: Vocabulary, atomic_words: Collection[str], floor: int) -> list[str]:
    """Units of the second-pass graph, in vocabulary rank order.

    Atomic words are kept unconditionally; pseudo-words need at least
    `floor` occurrences.
    """
    return [
        word
        for word, count in vocab.entries
        if word in atomic_words or (is_pseudo_word(word) and count >= floor)
    ]
