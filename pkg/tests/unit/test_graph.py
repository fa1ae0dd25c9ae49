"""Unit tests for the nearest-neighbor graph."""

import logging

import numpy as np
import pytest
import scipy.sparse as sp

from tests.conftest import graph_from_edges
from wordmap_cli.context import ContextMatrix, Direction, build_context_matrix
from wordmap_cli.corpus import BigramTable, Vocabulary
from wordmap_cli.errors import ArgumentError
from wordmap_cli.graph import (
    adjacency_and_degrees,
    connected_components,
    knn_graph,
    nearest_neighbors,
)


def make_context(rows: np.ndarray) -> ContextMatrix:
    """Context matrix whose row i belongs to word wi."""
    k, v = rows.shape
    size = max(k, v)
    vocab = Vocabulary.from_entries((f"w{i}", size - i) for i in range(size))
    return ContextMatrix(
        direction=Direction.LEFT,
        rows=sp.csr_matrix(rows.astype(np.int64)),
        word_ids=tuple(range(k)),
        words=tuple(f"w{i}" for i in range(k)),
        vocabulary=vocab,
    )


def random_context(rng: np.random.Generator) -> ContextMatrix:
    k = int(rng.integers(3, 12))
    v = int(rng.integers(2, 8))
    dense = rng.integers(0, 3, size=(k, v)) * (rng.random((k, v)) < 0.6)
    return make_context(dense)


class TestNearestNeighbors:
    """Tests for nearest_neighbors."""

    def test_ties_go_to_lower_rank(self):
        """Equal similarities select the more frequent word first."""
        ctx = make_context(np.array([[1, 0], [1, 0], [1, 0], [1, 0]]))
        assert nearest_neighbors(ctx, 2)[3] == [0, 1]
        assert nearest_neighbors(ctx, 2)[0] == [1, 2]

    def test_zero_row_selects_nothing(self):
        """A word without contexts chooses no neighbors."""
        ctx = make_context(np.array([[1, 0], [0, 0], [1, 1]]))
        assert nearest_neighbors(ctx, 1)[1] == []

    def test_n_must_be_below_k(self):
        """N >= K is an argument error."""
        ctx = make_context(np.eye(3, dtype=int))
        with pytest.raises(ArgumentError):
            nearest_neighbors(ctx, 3)

    def test_n_must_be_positive(self):
        """N = 0 is an argument error."""
        ctx = make_context(np.eye(3, dtype=int))
        with pytest.raises(ArgumentError):
            nearest_neighbors(ctx, 0)


class TestKnnGraph:
    """Tests for knn_graph."""

    def test_all_similar_gives_triangle(self):
        """Three mutually similar words with N=2 form K3."""
        ctx = make_context(np.array([[2, 1], [1, 1], [1, 2]]))
        g = knn_graph(ctx, 2)
        assert g.edges == frozenset({(0, 1), (0, 2), (1, 2)})

    def test_union_rule(self):
        """An edge chosen by only one side is present."""
        # w2 is closest to w1, but w1's single nearest neighbor is w0
        ctx = make_context(np.array([[10, 1, 0], [10, 2, 0], [0, 5, 5]]))
        neighbors = nearest_neighbors(ctx, 1)
        assert neighbors[1] == [0]
        assert neighbors[2] == [1]
        g = knn_graph(ctx, 1)
        assert (1, 2) in g.edges

    def test_isolated_zero_row_removed(self, caplog):
        """An unselected all-zero word is dropped and reported."""
        ctx = make_context(np.array([[1, 0], [1, 0], [0, 0]]))
        with caplog.at_level(logging.WARNING, logger="wordmap_cli"):
            g = knn_graph(ctx, 1)
        assert g.removed == ("w2",)
        assert g.vertex_words == ("w0", "w1")
        assert g.edges == frozenset({(0, 1)})
        assert "isolated" in caplog.text

    def test_edge_words_sorted(self):
        """Edges print lower vertex first."""
        ctx = make_context(np.array([[2, 1], [1, 1], [1, 2]]))
        assert knn_graph(ctx, 2).edge_words() == [("w0", "w1"), ("w0", "w2"), ("w1", "w2")]

    def test_randomized_properties(self):
        """Symmetry, degree bound, degree sum, repeatability and N-monotonicity."""
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            ctx = random_context(rng)
            k = ctx.size
            n = int(rng.integers(1, k))
            g = knn_graph(ctx, n)

            assert all(i < j for i, j in g.edges)
            degrees = g.degrees
            assert int(degrees.sum()) == 2 * len(g.edges)
            assert (degrees >= 1).all()

            nonzero = np.diff(ctx.rows.indptr) > 0
            position = {w: i for i, w in enumerate(g.vertex_words)}
            for row, word in enumerate(ctx.words):
                if nonzero[row]:
                    assert degrees[position[word]] >= min(n, k - 1)

            again = knn_graph(ctx, n)
            assert again.edges == g.edges and again.vertex_words == g.vertex_words

            if n + 1 < k:
                wider = knn_graph(ctx, n + 1)
                wider_pos = {w: i for i, w in enumerate(wider.vertex_words)}
                for a, b in g.edge_words():
                    pair = (wider_pos[a], wider_pos[b])
                    assert (min(pair), max(pair)) in wider.edges

    def test_bigram_order_does_not_matter(self):
        """Shuffling the bigram table's insertion order leaves the edges unchanged."""
        rng = np.random.default_rng(5)
        vocab = Vocabulary.from_entries((f"w{i}", 20 - i) for i in range(20))
        for _ in range(50):
            pairs = {
                (int(a), int(b)): int(rng.integers(1, 4))
                for a, b in rng.integers(0, 20, size=(60, 2))
            }
            items = list(pairs.items())
            shuffled = [items[i] for i in rng.permutation(len(items))]
            first = knn_graph(
                build_context_matrix(BigramTable(dict(items)), vocab, 12, Direction.RIGHT), 3
            )
            second = knn_graph(
                build_context_matrix(BigramTable(dict(shuffled)), vocab, 12, Direction.RIGHT), 3
            )
            assert first.edge_words() == second.edge_words()
            assert first.removed == second.removed


class TestAdjacencyAndDegrees:
    """Tests for adjacency_and_degrees."""

    def test_path(self):
        """Path a-b."""
        M, D = adjacency_and_degrees(graph_from_edges(2, [(0, 1)]))
        assert M.toarray().tolist() == [[0, 1], [1, 0]]
        assert D.diagonal().tolist() == [1, 1]

    def test_triangle(self, triangle_graph):
        """K3 has degree 2 everywhere."""
        _, D = adjacency_and_degrees(triangle_graph)
        assert D.diagonal().tolist() == [2, 2, 2]

    def test_star(self, star_graph):
        """Star with three leaves."""
        M, D = adjacency_and_degrees(star_graph)
        assert D.diagonal().tolist() == [3, 1, 1, 1]
        dense = M.toarray()
        assert (dense == dense.T).all()
        assert (np.diag(dense) == 0).all()

    def test_empty_graph_rejected(self):
        """A graph needs vertices."""
        with pytest.raises(ArgumentError):
            adjacency_and_degrees(graph_from_edges(0, []))


class TestConnectedComponents:
    """Tests for connected_components."""

    def test_two_components(self):
        """Two disjoint edges form two components."""
        count, labels = connected_components(graph_from_edges(4, [(0, 1), (2, 3)]))
        assert count == 2
        assert labels[0] == labels[1] != labels[2] == labels[3]

    def test_connected(self, path_graph):
        """A path is one component."""
        assert connected_components(path_graph)[0] == 1
