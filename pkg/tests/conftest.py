"""Shared test fixtures and configuration."""

import random
from pathlib import Path

import numpy as np
import pytest

from wordmap_cli.graph import NeighborGraph

DETERMINERS = ["the", "a"]
ADJECTIVES = ["big", "small", "quick", "lazy"]
NOUNS = ["dog", "cat", "bird", "horse", "fox", "wolf"]
VERBS = ["jump", "walk", "play", "climb", "kick", "push"]
VERB_ENDINGS = ["", "ed", "ing", "s"]


def make_corpus(sentences: int = 300, seed: int = 7) -> str:
    """Deterministic toy English: `det adj noun verb-form det noun(s).`"""
    rng = random.Random(seed)
    lines = []
    for _ in range(sentences):
        lines.append(
            f"{rng.choice(DETERMINERS).capitalize()} {rng.choice(ADJECTIVES)} "
            f"{rng.choice(NOUNS)} {rng.choice(VERBS)}{rng.choice(VERB_ENDINGS)} "
            f"{rng.choice(DETERMINERS)} {rng.choice(NOUNS)}{rng.choice(['', 's'])}."
        )
    return "\n".join(lines) + "\n"


def graph_from_edges(n: int, edges: list[tuple[int, int]]) -> NeighborGraph:
    """NeighborGraph over vertices w0..w(n-1)."""
    return NeighborGraph(
        vertex_words=tuple(f"w{i}" for i in range(n)),
        edges=frozenset((min(i, j), max(i, j)) for i, j in edges),
    )


def random_connected_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """A random spanning tree plus random extra edges."""
    edges = {(int(rng.integers(0, i)), i) for i in range(1, n)}
    extra = int(rng.integers(0, n * 2))
    for _ in range(extra):
        i, j = sorted(int(v) for v in rng.choice(n, size=2, replace=False))
        edges.add((i, j))
    return sorted(edges)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep WORDMAP_* variables from the developer shell out of tests."""
    for name in ("WORDMAP_CORPUS", "WORDMAP_OUT_DIR"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def corpus_text() -> str:
    """Toy corpus with regular verb and noun inflections."""
    return make_corpus()


@pytest.fixture
def corpus_file(tmp_path: Path, corpus_text: str) -> Path:
    """Toy corpus written to disk."""
    path = tmp_path / "corpus.txt"
    path.write_text(corpus_text, encoding="utf-8")
    return path


@pytest.fixture
def path_graph() -> NeighborGraph:
    """Path w0 - w1 - w2."""
    return graph_from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle_graph() -> NeighborGraph:
    """Complete graph on three vertices."""
    return graph_from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def star_graph() -> NeighborGraph:
    """Center w0 with three leaves."""
    return graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])
