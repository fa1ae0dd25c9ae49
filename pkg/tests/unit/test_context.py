"""Unit tests for context vectors and cosine similarity."""

import math

import numpy as np
import pytest
import scipy.sparse as sp

from wordmap_cli.context import Direction, build_context_matrix, cosine, cosine_matrix
from wordmap_cli.corpus import BigramTable, Vocabulary, build_vocabulary, count_bigrams, tokenize
from wordmap_cli.errors import ArgumentError


@pytest.fixture
def ab_vocab():
    return Vocabulary.from_entries([("a", 3), ("b", 2), ("c", 1)])


@pytest.fixture
def ab_bigrams():
    return BigramTable(counts={(0, 1): 2})


class TestBuildContextMatrix:
    """Tests for build_context_matrix."""

    def test_left_row_counts_preceding_word(self, ab_vocab, ab_bigrams):
        """The left vector of b has the a->b count in column a."""
        ctx = build_context_matrix(ab_bigrams, ab_vocab, 3, Direction.LEFT)
        assert ctx.rows.toarray()[1].tolist() == [2, 0, 0]

    def test_right_row_counts_following_word(self, ab_vocab, ab_bigrams):
        """The right vector of a has the a->b count in column b."""
        ctx = build_context_matrix(ab_bigrams, ab_vocab, 3, "right")
        assert ctx.rows.toarray()[0].tolist() == [0, 2, 0]

    def test_word_without_left_neighbor_has_zero_row(self, ab_vocab, ab_bigrams):
        """A word never preceded by anything gets an all-zero left vector."""
        ctx = build_context_matrix(ab_bigrams, ab_vocab, 3, Direction.LEFT)
        assert ctx.rows.toarray()[0].tolist() == [0, 0, 0]

    def test_columns_span_vocabulary(self, ab_vocab, ab_bigrams):
        """K rows but V columns."""
        ctx = build_context_matrix(ab_bigrams, ab_vocab, 1, Direction.RIGHT)
        assert ctx.rows.shape == (1, 3)
        assert ctx.words == ("a",)

    def test_zero_k_rejected(self, ab_vocab, ab_bigrams):
        """K must be positive."""
        with pytest.raises(ArgumentError):
            build_context_matrix(ab_bigrams, ab_vocab, 0, Direction.LEFT)

    def test_k_above_vocabulary_rejected(self, ab_vocab, ab_bigrams):
        """K cannot exceed the vocabulary."""
        with pytest.raises(ArgumentError):
            build_context_matrix(ab_bigrams, ab_vocab, 4, Direction.LEFT)

    def test_explicit_units(self, ab_vocab, ab_bigrams):
        """An explicit unit list picks the rows."""
        ctx = build_context_matrix(ab_bigrams, ab_vocab, 1, Direction.LEFT, units=["c", "b"])
        assert ctx.words == ("c", "b")
        assert ctx.word_ids == (2, 1)
        assert ctx.rows.toarray().tolist() == [[0, 0, 0], [2, 0, 0]]

    def test_unknown_unit_rejected(self, ab_vocab, ab_bigrams):
        """Units must come from the vocabulary."""
        with pytest.raises(ArgumentError):
            build_context_matrix(ab_bigrams, ab_vocab, 1, Direction.LEFT, units=["zzz"])

    def test_left_row_sums_match_bigrams_ending_in_word(self, corpus_text):
        """Row sums of a left matrix equal the bigram mass ending in the word."""
        tokens = tokenize(corpus_text)
        vocab = build_vocabulary(tokens)
        bigrams = count_bigrams(tokens, vocab)
        ctx = build_context_matrix(bigrams, vocab, len(vocab), Direction.LEFT)
        sums = np.asarray(ctx.rows.sum(axis=1)).ravel()
        for i in range(len(vocab)):
            expected = sum(n for (_, right), n in bigrams.counts.items() if right == i)
            assert sums[i] == expected

    def test_triplets_sorted(self, ab_vocab):
        """Triplets come out by row then column."""
        bigrams = BigramTable(counts={(0, 1): 2, (2, 1): 1, (1, 0): 4})
        ctx = build_context_matrix(bigrams, ab_vocab, 3, Direction.LEFT)
        assert list(ctx.triplets()) == [
            ("a", "left", "b", 4),
            ("b", "left", "a", 2),
            ("b", "left", "c", 1),
        ]


class TestCosine:
    """Tests for cosine and cosine_matrix."""

    def test_identity(self):
        """A vector has cosine 1 with itself."""
        assert cosine([1, 2], [1, 2]) == pytest.approx(1.0)

    def test_orthogonal(self):
        """Disjoint supports give 0."""
        assert cosine([1, 0], [0, 1]) == 0.0

    def test_hand_value(self):
        """(1,2,0) and (2,1,0) meet at 4/5."""
        assert cosine([1, 2, 0], [2, 1, 0]) == pytest.approx(0.8, abs=1e-12)

    def test_zero_vector(self):
        """An all-zero vector is maximally dissimilar."""
        assert cosine([0, 0], [1, 1]) == 0.0

    def test_dimension_mismatch(self):
        """Vectors must have equal length."""
        with pytest.raises(ArgumentError):
            cosine([1, 2], [1, 2, 3])

    def test_sparse_input(self):
        """Sparse rows are accepted."""
        u = sp.csr_matrix([[1, 2, 0]])
        v = sp.csr_matrix([[2, 1, 0]])
        assert cosine(u, v) == pytest.approx(0.8)

    def test_symmetric_and_scale_invariant(self):
        """cos(u, v) == cos(v, u) == cos(c u, v)."""
        rng = np.random.default_rng(11)
        for _ in range(50):
            u = rng.integers(0, 5, size=8)
            v = rng.integers(0, 5, size=8)
            c = float(rng.uniform(0.1, 10.0))
            assert cosine(u, v) == pytest.approx(cosine(v, u), abs=1e-12)
            assert cosine(c * u, v) == pytest.approx(cosine(u, v), abs=1e-12)

    def test_matrix_agrees_with_pairwise(self, ab_vocab):
        """cosine_matrix equals cosine on every row pair."""
        bigrams = BigramTable(counts={(0, 1): 2, (2, 1): 1, (1, 0): 4, (0, 2): 3, (1, 2): 1})
        ctx = build_context_matrix(bigrams, ab_vocab, 3, Direction.RIGHT)
        matrix = cosine_matrix(ctx)
        dense = ctx.rows.toarray()
        for i in range(3):
            for j in range(3):
                expected = cosine(dense[i], dense[j])
                assert math.isclose(matrix[i, j], expected, abs_tol=1e-12)
