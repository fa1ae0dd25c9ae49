"""Suffix coherence: scatter of signature_suffix points in unit-square map coordinates."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import ArgumentError
from .morphology import SEPARATOR, MorphAnalysis, normalize_suffix
from .spectral import SpectralEmbedding

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 0.10
COHERENT = "coherent"
INCOHERENT = "incoherent"
ABSENT = "absent"


@dataclass(frozen=True, eq=False)
class NormalizedCoords:
    """Map points rescaled so each axis spans [0, 1]; a constant axis sits at 0.5."""

    points: dict[str, tuple[float, float]]

    def __len__(self) -> int:
        return len(self.points)


def _rescale(values: np.ndarray) -> np.ndarray:
    low = float(np.min(values))
    high = float(np.max(values))
    if high == low:
        return np.full(values.shape, 0.5)
    return (values - low) / (high - low)


def normalize_points(labels: Sequence[str], x: Any, y: Any) -> NormalizedCoords:
    """Rescale parallel x and y arrays independently onto [0, 1]."""
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if len(labels) == 0:
        raise ArgumentError("Cannot normalize an empty point set")
    if not len(labels) == xs.size == ys.size:
        raise ArgumentError("Labels and coordinate arrays differ in length")
    nx = _rescale(xs)
    ny = _rescale(ys)
    return NormalizedCoords(
        points={label: (float(nx[i]), float(ny[i])) for i, label in enumerate(labels)}
    )


def normalize_coords(embedding: SpectralEmbedding, x_col: int, y_col: int) -> NormalizedCoords:
    """Unit-square coordinates of every embedded unit on two embedding columns."""
    if len(embedding) == 0:
        raise ArgumentError("Embedding has no points")
    return normalize_points(
        embedding.vertex_words, embedding.column(x_col), embedding.column(y_col)
    )


def suffix_scatter(
    coords: NormalizedCoords, suffix: str, pseudo_words: Sequence[str]
) -> float | None:
    """Mean Euclidean distance of a suffix's pseudo-word points to their centroid.

    Returns:
        The scatter, or None when no pseudo-word of the suffix is present
    """
    ending = f"{SEPARATOR}{normalize_suffix(suffix)}"
    present = [coords.points[w] for w in pseudo_words if w.endswith(ending) and w in coords.points]
    if not present:
        return None
    points = np.array(present, dtype=np.float64)
    centroid = points.mean(axis=0)
    return float(np.mean(np.linalg.norm(points - centroid, axis=1)))


@dataclass(frozen=True)
class SuffixCoherence:
    suffix: str
    signature_count: int
    left_scatter: float | None
    right_scatter: float | None
    mean_scatter: float | None
    verdict: str

    def as_row(self) -> dict[str, Any]:
        return {
            "suffix": self.suffix,
            "n_signatures": self.signature_count,
            "left_scatter": self.left_scatter,
            "right_scatter": self.right_scatter,
            "mean": self.mean_scatter,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class CoherenceReport:
    rows: tuple[SuffixCoherence, ...]
    cutoff: float = DEFAULT_CUTOFF

    def __getitem__(self, suffix: str) -> SuffixCoherence:
        name = normalize_suffix(suffix)
        for row in self.rows:
            if row.suffix == name:
                return row
        raise KeyError(suffix)


def coherence_report(
    left: NormalizedCoords,
    right: NormalizedCoords,
    suffixes: Sequence[str],
    analysis: MorphAnalysis,
    cutoff: float = DEFAULT_CUTOFF,
) -> CoherenceReport:
    """Score each suffix in both maps and compare the mean scatter with the cut-off.

    Args:
        left: Normalized LeftGraph coordinates of the transformed corpus
        right: Normalized RightGraph coordinates of the transformed corpus
        suffixes: Suffixes to score; empty means every suffix of the analysis
        analysis: Analysis that produced the pseudo-words
        cutoff: Mean scatter below which a suffix counts as coherent

    Returns:
        CoherenceReport in the order of `suffixes`
    """
    names = [normalize_suffix(s) for s in suffixes] if suffixes else analysis.suffixes()

    rows: list[SuffixCoherence] = []
    for name in dict.fromkeys(names):
        pseudo_words = analysis.pseudo_words(name)
        left_scatter = suffix_scatter(left, name, pseudo_words)
        right_scatter = suffix_scatter(right, name, pseudo_words)
        present = {w for w in pseudo_words if w in left.points or w in right.points}

        if left_scatter is None or right_scatter is None:
            sides = [
                side
                for side, value in (("left", left_scatter), ("right", right_scatter))
                if value is None
            ]
            logger.warning("Suffix %s is absent from the %s embedding", name, " and ".join(sides))
            mean = None
            verdict = ABSENT
        else:
            mean = (left_scatter + right_scatter) / 2.0
            verdict = COHERENT if mean < cutoff else INCOHERENT

        rows.append(
            SuffixCoherence(
                suffix=name,
                signature_count=len(present),
                left_scatter=left_scatter,
                right_scatter=right_scatter,
                mean_scatter=mean,
                verdict=verdict,
            )
        )
    return CoherenceReport(rows=tuple(rows), cutoff=cutoff)
