"""Normalized laplacian, symmetric eigensolver, and premultiplied eigenvector coordinates.

The default solver reduces the matrix to tridiagonal form with Householder
reflections and diagonalizes it with the implicitly shifted QL algorithm,
accumulating the rotations into the reflector product. `solver="lapack"`
runs the same contract on top of `scipy.linalg.eigh`.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Any

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .errors import ArgumentError, NumericError
from .graph import NeighborGraph, adjacency_and_degrees, connected_components

logger = logging.getLogger(__name__)

CONVERGENCE_TOL = 1e-12
ITERATIONS_PER_ORDER = 200
RESIDUAL_TOL = 1e-8
# Eigenvalues closer than this are treated as one degenerate group
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Dense real matrix with entries(i, j) == entries(j, i) exactly."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ArgumentError(f"Matrix must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ArgumentError("Matrix is not exactly symmetric")

    @property
    def order(self) -> int:
        return int(self.entries.shape[0])


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True, eq=False)
class SpectralEmbedding:
    """Per-word coordinates: rows of D^{1/2} times the leading eigenvector columns."""

    vertex_words: tuple[str, ...]
    coords: np.ndarray
    eigenvalues: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.coords.ndim != 2 or self.coords.shape[0] != len(self.vertex_words):
            raise ArgumentError(
                f"Coordinate array of shape {self.coords.shape} does not match "
                f"{len(self.vertex_words)} words"
            )

    def __len__(self) -> int:
        return len(self.vertex_words)

    @property
    def dimensions(self) -> int:
        return int(self.coords.shape[1])

    def column(self, index: int) -> np.ndarray:
        if not 0 <= index < self.dimensions:
            raise ArgumentError(
                f"Column {index} out of range for an embedding with {self.dimensions} columns"
            )
        return self.coords[:, index]

    def index(self) -> dict[str, int]:
        return {word: i for i, word in enumerate(self.vertex_words)}


def _degree_vector(D: Any) -> np.ndarray:
    if sp.issparse(D):
        return np.asarray(D.diagonal(), dtype=np.float64)
    D = np.asarray(D, dtype=np.float64)
    return D.diagonal().copy() if D.ndim == 2 else D


def normalized_laplacian(
    M: Any, D: Any, vertex_words: tuple[str, ...] | None = None
) -> SymmetricMatrix:
    """D^{-1/2} (D - M) D^{-1/2}: ones on the diagonal, -M(i,j)/sqrt(d_i d_j) elsewhere.

    Args:
        M: Symmetric 0/1 adjacency matrix (dense or sparse)
        D: Diagonal degree matrix, or the degree vector
        vertex_words: Optional names used in error messages

    Returns:
        SymmetricMatrix
    """
    adjacency = M.toarray() if sp.issparse(M) else np.asarray(M, dtype=np.float64)
    adjacency = adjacency.astype(np.float64)
    degrees = _degree_vector(D)

    zero = np.flatnonzero(degrees <= 0)
    if zero.size:
        vertex = vertex_words[zero[0]] if vertex_words else str(int(zero[0]))
        raise ArgumentError(f"Vertex {vertex} has zero degree; normalization is undefined")

    inverse_sqrt = 1.0 / np.sqrt(degrees)
    laplacian = -adjacency * np.outer(inverse_sqrt, inverse_sqrt)
    np.fill_diagonal(laplacian, 1.0)
    return SymmetricMatrix(entries=laplacian)


def householder_tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reduce a symmetric matrix to tridiagonal form.

    Returns:
        (diagonal, off-diagonal, Q) with Q.T @ a @ Q tridiagonal
    """
    work = np.array(a, dtype=np.float64)
    n = work.shape[0]
    Q = np.eye(n)

    for k in range(n - 2):
        x = work[k + 1 :, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        norm = math.hypot(x[0], tail)
        alpha = -math.copysign(norm, x[0])

        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)

        # H S H = S - v w^T - w v^T with H = I - 2 v v^T
        sub = work[k + 1 :, k + 1 :]
        p = sub @ v
        w = 2.0 * (p - (v @ p) * v)
        sub -= np.outer(v, w)
        sub -= np.outer(w, v)

        work[k + 1 :, k] = 0.0
        work[k, k + 1 :] = 0.0
        work[k + 1, k] = alpha
        work[k, k + 1] = alpha

        block = Q[:, k + 1 :]
        block -= 2.0 * np.outer(block @ v, v)

    return np.diagonal(work).copy(), np.diagonal(work, 1).copy(), Q


def tridiagonal_ql(
    diagonal: np.ndarray,
    off_diagonal: np.ndarray,
    Q: np.ndarray,
    tol: float = CONVERGENCE_TOL,
    max_iterations: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Implicitly shifted QL iteration on a symmetric tridiagonal matrix.

    Args:
        diagonal: Diagonal entries
        off_diagonal: Entries coupling i and i+1
        Q: Matrix the rotations are accumulated into (identity for a bare tridiagonal)
        tol: Relative off-diagonal size at which an entry counts as zero
        max_iterations: QL sweep budget, default 200 * n

    Returns:
        (eigenvalues, eigenvectors as columns), unsorted
    """
    d = np.array(diagonal, dtype=np.float64)
    n = d.size
    e = np.append(np.asarray(off_diagonal, dtype=np.float64), 0.0)
    # Rows of `z` are the eigenvector estimates, so each rotation touches two rows
    z = np.array(Q, dtype=np.float64).T.copy()
    budget = ITERATIONS_PER_ORDER * n if max_iterations is None else max_iterations
    scale_norm = float(np.max(np.abs(d), initial=0.0)) + float(np.max(np.abs(e), initial=0.0))
    floor = np.finfo(np.float64).eps * scale_norm

    iterations = 0
    for l in range(n):  # noqa: E741
        while True:
            m = l
            while m < n - 1:
                scale = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * scale or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break

            iterations += 1
            if iterations > budget:
                raise NumericError(
                    f"QL iteration did not converge within {budget} sweeps",
                    residual=float(np.max(np.abs(e))),
                )

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b

                upper = z[i + 1].copy()
                z[i + 1] = s * z[i] + c * upper
                z[i] = c * z[i] - s * upper
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    logger.debug("QL converged after %d sweeps for order %d", iterations, n)
    return d, z.T


def apply_sign_convention(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (lowest index on ties) is positive."""
    vectors = np.array(vectors, dtype=np.float64)
    if vectors.size == 0:
        return vectors
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _canonical_order(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Ascending eigenvalue order; a degenerate group is ordered by its vectors lexicographically."""
    order = list(np.argsort(values, kind="stable"))
    result: list[int] = []
    start = 0
    while start < len(order):
        end = start + 1
        while end < len(order) and values[order[end]] - values[order[start]] <= DEGENERACY_TOL:
            end += 1
        group = order[start:end]
        if len(group) > 1:
            group.sort(key=lambda k: tuple(np.round(vectors[:, k], 9)))
        result.extend(group)
        start = end
    return np.array(result, dtype=np.int64)


def smallest_eigenpairs(A: SymmetricMatrix, m: int, solver: str = "ql") -> EigenSystem:
    """The m algebraically smallest eigenpairs of a symmetric matrix.

    Args:
        A: Symmetric matrix
        m: Number of eigenpairs
        solver: "ql" (Householder + implicit QL) or "lapack"

    Returns:
        EigenSystem with sign-fixed, orthonormal eigenvectors
    """
    n = A.order
    if m <= 0 or m > n:
        raise ArgumentError(f"Requested {m} eigenpairs from a matrix of order {n}")

    if solver == "ql":
        diagonal, off_diagonal, Q = householder_tridiagonalize(A.entries)
        values, vectors = tridiagonal_ql(diagonal, off_diagonal, Q)
    elif solver == "lapack":
        values, vectors = scipy.linalg.eigh(A.entries)
    else:
        raise ArgumentError(f"Unknown solver: {solver}")

    vectors = apply_sign_convention(vectors)
    order = _canonical_order(values, vectors)[:m]
    values = values[order]
    vectors = vectors[:, order]

    residual = float(np.max(np.abs(A.entries @ vectors - vectors * values), initial=0.0))
    bound = RESIDUAL_TOL * max(1.0, float(np.max(np.sum(np.abs(A.entries), axis=1))))
    if residual > bound:
        raise NumericError(f"Eigenpair residual exceeds {bound:.1e}", residual=residual)

    return EigenSystem(eigenvalues=values, eigenvectors=vectors)


def embed(g: NeighborGraph, m: int, solver: str = "ql") -> SpectralEmbedding:
    """Premultiplied eigenvector coordinates of a neighbor graph.

    Column 0 is proportional to the degree vector on a connected graph and
    carries no information; 2-D maps use columns 1 and 2.

    Args:
        g: Neighbor graph without isolated vertices
        m: Number of coordinate columns
        solver: Eigensolver name

    Returns:
        SpectralEmbedding over the graph's vertices
    """
    M, D = adjacency_and_degrees(g)
    laplacian = normalized_laplacian(M, D, g.vertex_words)

    components, labels = connected_components(g)
    if components > 1:
        sizes = sorted(Counter(labels.tolist()).values(), reverse=True)
        logger.warning(
            "Graph has %d connected components (sizes %s); eigenvalue 0 is repeated",
            components,
            ", ".join(str(size) for size in sizes),
        )

    system = smallest_eigenpairs(laplacian, m, solver=solver)
    sqrt_degrees = np.sqrt(_degree_vector(D))
    coords = system.eigenvectors * sqrt_degrees[:, None]
    logger.info(
        "Smallest eigenvalues: %s",
        ", ".join(f"{value:.6f}" for value in system.eigenvalues),
    )
    return SpectralEmbedding(
        vertex_words=g.vertex_words, coords=coords, eigenvalues=system.eigenvalues
    )


def corner_words(
    embedding: SpectralEmbedding, x_col: int, y_col: int, n: int
) -> dict[str, list[str]]:
    """The n most extreme words toward each side of a 2-D map.

    Regions are left (smallest x), right (largest x), bottom (smallest y)
    and top (largest y); ties go to the lower row, i.e. the more frequent word.
    """
    if n <= 0:
        raise ArgumentError(f"n must be positive, got {n}")
    x = embedding.column(x_col)
    y = embedding.column(y_col)
    words = embedding.vertex_words
    regions = {
        "left": np.argsort(x, kind="stable"),
        "right": np.argsort(-x, kind="stable"),
        "bottom": np.argsort(y, kind="stable"),
        "top": np.argsort(-y, kind="stable"),
    }
    return {region: [words[i] for i in order[:n]] for region, order in regions.items()}
