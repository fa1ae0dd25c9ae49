"""Unit tests for map normalization and suffix coherence."""

import logging
import math

import numpy as np
import pytest

from wordmap_cli.coherence import (
    ABSENT,
    COHERENT,
    INCOHERENT,
    NormalizedCoords,
    coherence_report,
    normalize_coords,
    normalize_points,
    suffix_scatter,
)
from wordmap_cli.errors import ArgumentError
from wordmap_cli.morphology import load_signatures
from wordmap_cli.spectral import SpectralEmbedding

HALF_DIAGONAL = math.sqrt(2) / 2


@pytest.fixture
def analysis():
    return load_signatures(
        [
            "jump\tNULL.ed.ing",
            "walk\tNULL.ed.ing",
            "play\tNULL.ed.s",
            "push\tNULL.ed.s",
            "boy\tNULL.s",
            "dog\tNULL.s",
        ]
    )


@pytest.fixture
def maps():
    left = NormalizedCoords(
        points={
            "the": (0.5, 0.9),
            "NULL.ed.ing_ed": (0.1, 0.1),
            "NULL.ed.s_ed": (0.1, 0.2),
            "NULL.ed.s_s": (0.0, 0.0),
            "NULL.s_s": (1.0, 1.0),
            "NULL.ed.ing_ing": (0.7, 0.3),
        }
    )
    right = NormalizedCoords(
        points={
            "the": (0.2, 0.2),
            "NULL.ed.ing_ed": (0.5, 0.5),
            "NULL.ed.s_ed": (0.5, 0.6),
            "NULL.ed.s_s": (1.0, 0.0),
            "NULL.s_s": (0.0, 1.0),
        }
    )
    return left, right


class TestNormalizePoints:
    """Tests for normalize_points and normalize_coords."""

    def test_axes_rescaled_independently(self):
        """Each axis spans [0, 1]; a constant axis sits at 0.5."""
        coords = normalize_points(["a", "b", "c"], [0, 5, 10], [2, 2, 2])
        assert coords.points == {"a": (0.0, 0.5), "b": (0.5, 0.5), "c": (1.0, 0.5)}

    def test_single_point_centered(self):
        """A lone point lands in the middle of the square."""
        assert normalize_points(["was"], [3.0], [-1.0]).points == {"was": (0.5, 0.5)}

    def test_empty_rejected(self):
        """There is nothing to normalize without points."""
        with pytest.raises(ArgumentError):
            normalize_points([], [], [])

    def test_length_mismatch_rejected(self):
        """Labels and coordinates must line up."""
        with pytest.raises(ArgumentError):
            normalize_points(["a", "b"], [0, 1], [0])

    def test_embedding_columns(self):
        """Columns are picked from the embedding by index."""
        embedding = SpectralEmbedding(
            vertex_words=("a", "b"),
            coords=np.array([[1.0, 2.0, -4.0], [1.0, 6.0, 4.0]]),
        )
        coords = normalize_coords(embedding, 1, 2)
        assert coords.points == {"a": (0.0, 0.0), "b": (1.0, 1.0)}

    def test_embedding_column_out_of_range(self):
        """A missing column is an argument error."""
        embedding = SpectralEmbedding(vertex_words=("a",), coords=np.zeros((1, 2)))
        with pytest.raises(ArgumentError):
            normalize_coords(embedding, 1, 2)


class TestSuffixScatter:
    """Tests for suffix_scatter."""

    def test_single_point_has_zero_scatter(self):
        """One pseudo-word is its own centroid."""
        coords = NormalizedCoords(points={"NULL.s_s": (0.3, 0.8)})
        assert suffix_scatter(coords, "s", ["NULL.s_s"]) == 0.0

    def test_opposite_corners(self):
        """Two opposite corners sit half a diagonal from their centroid."""
        coords = NormalizedCoords(points={"NULL.s_s": (0.0, 0.0), "NULL.ed.s_s": (1.0, 1.0)})
        scatter = suffix_scatter(coords, "-s", ["NULL.ed.s_s", "NULL.s_s"])
        assert scatter == pytest.approx(HALF_DIAGONAL)

    def test_absent_suffix(self):
        """No pseudo-word in the map gives None."""
        coords = NormalizedCoords(points={"the": (0.0, 0.0)})
        assert suffix_scatter(coords, "s", ["NULL.s_s"]) is None

    def test_other_suffixes_ignored(self):
        """Only pseudo-words ending in the suffix are scored."""
        coords = NormalizedCoords(points={"NULL.s_s": (0.0, 0.0), "NULL.s_NULL": (1.0, 1.0)})
        assert suffix_scatter(coords, "s", ["NULL.s_NULL", "NULL.s_s"]) == 0.0

    def test_bounded_by_half_diagonal(self):
        """Scatter never exceeds half the unit-square diagonal."""
        rng = np.random.default_rng(17)
        for _ in range(200):
            n = int(rng.integers(1, 30))
            labels = [f"S{i}_s" for i in range(n)]
            coords = normalize_points(labels, rng.normal(size=n), rng.normal(size=n))
            scatter = suffix_scatter(coords, "s", labels)
            assert 0.0 <= scatter <= HALF_DIAGONAL + 1e-12

    def test_point_at_centroid_never_increases_scatter(self):
        """Adding a pseudo-word at the centroid cannot spread the suffix."""
        rng = np.random.default_rng(29)
        for _ in range(100):
            n = int(rng.integers(1, 20))
            labels = [f"S{i}_s" for i in range(n)]
            points = dict(zip(labels, map(tuple, rng.uniform(size=(n, 2))), strict=True))
            before = suffix_scatter(NormalizedCoords(points=points), "s", labels)

            centroid = tuple(np.mean(list(points.values()), axis=0))
            grown = {**points, "EXTRA_s": centroid}
            after = suffix_scatter(NormalizedCoords(points=grown), "s", [*labels, "EXTRA_s"])
            assert after <= before + 1e-12
            assert after == pytest.approx(before * n / (n + 1), abs=1e-12)

    def test_label_permutation_leaves_scatter_unchanged(self):
        """Only the set of positions matters, not which pseudo-word holds which."""
        rng = np.random.default_rng(31)
        for _ in range(100):
            n = int(rng.integers(2, 20))
            labels = [f"S{i}_s" for i in range(n)]
            positions = [tuple(p) for p in rng.uniform(size=(n, 2))]
            shuffled = [positions[i] for i in rng.permutation(n)]
            base = suffix_scatter(
                NormalizedCoords(points=dict(zip(labels, positions, strict=True))), "s", labels
            )
            permuted = suffix_scatter(
                NormalizedCoords(points=dict(zip(labels, shuffled, strict=True))), "s", labels
            )
            assert permuted == pytest.approx(base, abs=1e-12)

    def test_zero_exactly_when_points_coincide(self):
        """Scatter vanishes for coinciding points and only for them."""
        rng = np.random.default_rng(37)
        for _ in range(100):
            n = int(rng.integers(2, 20))
            labels = [f"S{i}_s" for i in range(n)]
            spot = tuple(rng.uniform(size=2))
            same = NormalizedCoords(points=dict.fromkeys(labels, spot))
            assert suffix_scatter(same, "s", labels) == pytest.approx(0.0, abs=1e-12)

            moved = dict.fromkeys(labels, spot)
            shift = rng.uniform(0.01, 0.5, size=2)
            moved[labels[int(rng.integers(n))]] = (spot[0] + shift[0], spot[1] + shift[1])
            assert suffix_scatter(NormalizedCoords(points=moved), "s", labels) > 1e-6

    def test_invariant_under_axis_scaling(self):
        """Rescaling or shifting the raw axes does not change the scatter."""
        rng = np.random.default_rng(23)
        for _ in range(50):
            n = int(rng.integers(2, 20))
            labels = [f"S{i}_s" for i in range(n)]
            x = rng.normal(size=n)
            y = rng.normal(size=n)
            a, c = rng.uniform(0.1, 10.0, size=2)
            b, d = rng.normal(size=2)
            base = suffix_scatter(normalize_points(labels, x, y), "s", labels)
            moved = suffix_scatter(normalize_points(labels, a * x + b, c * y + d), "s", labels)
            flipped = suffix_scatter(normalize_points(labels, -x, y), "s", labels)
            assert moved == pytest.approx(base, abs=1e-9)
            assert flipped == pytest.approx(base, abs=1e-9)


class TestCoherenceReport:
    """Tests for coherence_report."""

    def test_verdicts(self, maps, analysis):
        """Tight suffixes are coherent, spread ones are not."""
        left, right = maps
        report = coherence_report(left, right, ["-ed", "s"], analysis)
        ed = report["ed"]
        assert ed.left_scatter == pytest.approx(0.05)
        assert ed.right_scatter == pytest.approx(0.05)
        assert ed.mean_scatter == pytest.approx(0.05)
        assert ed.verdict == COHERENT
        assert ed.signature_count == 2

        s = report["-s"]
        assert s.mean_scatter == pytest.approx(HALF_DIAGONAL)
        assert s.verdict == INCOHERENT

    def test_cutoff_is_strict_upper_bound(self, maps, analysis):
        """A lower cut-off flips the verdict."""
        left, right = maps
        report = coherence_report(left, right, ["ed"], analysis, cutoff=0.01)
        assert report["ed"].verdict == INCOHERENT
        assert report.cutoff == 0.01

    def test_absent_in_one_map(self, maps, analysis, caplog):
        """A suffix missing from one side is reported as absent."""
        left, right = maps
        with caplog.at_level(logging.WARNING, logger="wordmap_cli"):
            report = coherence_report(left, right, ["ing"], analysis)
        row = report["ing"]
        assert row.left_scatter == 0.0
        assert row.right_scatter is None
        assert row.mean_scatter is None
        assert row.verdict == ABSENT
        assert row.signature_count == 1
        assert "absent from the right embedding" in caplog.text

    def test_default_suffixes_from_analysis(self, maps, analysis):
        """Without a suffix list every suffix of the analysis is scored."""
        left, right = maps
        report = coherence_report(left, right, [], analysis)
        assert [row.suffix for row in report.rows] == ["NULL", "ed", "ing", "s"]
        assert report["NULL"].verdict == ABSENT
        assert report["NULL"].signature_count == 0

    def test_duplicate_suffixes_collapse(self, maps, analysis):
        """`ed` and `-ed` name the same suffix."""
        left, right = maps
        report = coherence_report(left, right, ["ed", "-ed"], analysis)
        assert len(report.rows) == 1

    def test_unknown_suffix_raises_key_error(self, maps, analysis):
        """Looking up a suffix that was not scored fails."""
        left, right = maps
        with pytest.raises(KeyError):
            coherence_report(left, right, ["ed"], analysis)["s"]

    def test_row_shape(self, maps, analysis):
        """Rows export the report columns."""
        left, right = maps
        row = coherence_report(left, right, ["ed"], analysis).rows[0].as_row()
        assert list(row) == [
            "suffix",
            "n_signatures",
            "left_scatter",
            "right_scatter",
            "mean",
            "verdict",
        ]
