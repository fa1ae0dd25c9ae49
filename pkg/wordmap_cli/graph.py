"""Symmetric N-nearest-neighbor graphs over context vectors."""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _connected_components

from .context import ContextMatrix, Direction, cosine_matrix
from .errors import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NeighborGraph:
    """Unweighted undirected graph whose vertices are words.

    Edges are pairs (i, j) with i < j of positions into `vertex_words`.
    Vertices that ended up with no edge are listed in `removed` instead.
    """

    vertex_words: tuple[str, ...]
    edges: frozenset[tuple[int, int]]
    removed: tuple[str, ...] = ()
    direction: Direction | None = None

    @property
    def size(self) -> int:
        return len(self.vertex_words)

    @property
    def degrees(self) -> np.ndarray:
        degree = np.zeros(self.size, dtype=np.int64)
        for i, j in self.edges:
            degree[i] += 1
            degree[j] += 1
        return degree

    def edge_words(self) -> list[tuple[str, str]]:
        """Edges as word pairs, lower vertex position first, sorted."""
        return [(self.vertex_words[i], self.vertex_words[j]) for i, j in sorted(self.edges)]


def nearest_neighbors(ctx: ContextMatrix, N: int) -> list[list[int]]:
    """Row positions of the N most similar other rows, nearest first.

    Ties are broken by lower row position, i.e. the more frequent word.
    Rows with an all-zero context vector select nothing.
    """
    if N <= 0:
        raise ArgumentError(f"N must be positive, got {N}")
    if N >= ctx.size:
        raise ArgumentError(f"N ({N}) must be smaller than K ({ctx.size})")

    similarities = cosine_matrix(ctx)
    np.fill_diagonal(similarities, -np.inf)
    order = np.argsort(-similarities, axis=1, kind="stable")[:, :N]

    nonzero = np.diff(ctx.rows.indptr) > 0
    return [order[i].tolist() if nonzero[i] else [] for i in range(ctx.size)]


def knn_graph(
    ctx: ContextMatrix, N: int, neighbors: list[list[int]] | None = None
) -> NeighborGraph:
    """Link each word to its N nearest neighbors; an edge exists if either side chose it.

    Args:
        ctx: Context vectors of the candidate vertices
        N: Neighbors selected per word
        neighbors: Precomputed nearest_neighbors(ctx, N), if already at hand

    Returns:
        NeighborGraph without isolated vertices
    """
    if neighbors is None:
        neighbors = nearest_neighbors(ctx, N)

    edge_set: set[tuple[int, int]] = set()
    for i, chosen in enumerate(neighbors):
        for j in chosen:
            edge_set.add((min(i, j), max(i, j)))

    degree = np.zeros(ctx.size, dtype=np.int64)
    for i, j in edge_set:
        degree[i] += 1
        degree[j] += 1

    kept = np.flatnonzero(degree > 0)
    removed = tuple(ctx.words[i] for i in np.flatnonzero(degree == 0))
    if removed:
        logger.warning(
            "Removed %d isolated vertices from %s graph: %s",
            len(removed),
            ctx.direction.value,
            ", ".join(removed[:10]) + (" ..." if len(removed) > 10 else ""),
        )

    position = {int(old): new for new, old in enumerate(kept)}
    edges = frozenset((position[i], position[j]) for i, j in edge_set)
    return NeighborGraph(
        vertex_words=tuple(ctx.words[i] for i in kept),
        edges=edges,
        removed=removed,
        direction=ctx.direction,
    )


def adjacency_and_degrees(g: NeighborGraph) -> tuple[sp.csr_matrix, sp.dia_matrix]:
    """0/1 adjacency matrix M with zero diagonal and the diagonal degree matrix D."""
    if g.size == 0:
        raise ArgumentError("Graph has no vertices")
    pairs = sorted(g.edges)
    rows = [i for i, _ in pairs] + [j for _, j in pairs]
    cols = [j for _, j in pairs] + [i for i, _ in pairs]
    M = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.float64), (rows, cols)), shape=(g.size, g.size)
    )
    D = sp.diags(np.asarray(M.sum(axis=1)).ravel(), format="dia")
    return M, D


def connected_components(g: NeighborGraph) -> tuple[int, np.ndarray]:
    """Number of connected components and the component label of every vertex."""
    M, _ = adjacency_and_degrees(g)
    count, labels = _connected_components(M, directed=False)
    return int(count), labels
