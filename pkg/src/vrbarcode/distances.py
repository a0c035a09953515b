"""Finite (pseudo-)metric spaces: parsing, dense and sparse storage."""

from __future__ import annotations

import math
import re
from bisect import bisect_left
from typing import Iterable, Sequence

import numpy as np

from .combinatorial import BinomialTable, cns_decode

FORMATS = ("lower-distance", "upper-distance", "full-distance", "point-cloud")

# a number is an optional sign, digits with optional fraction, optional exponent;
# everything else separates numbers
_NUMBER = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")


class InputFormatError(ValueError):
    """Token count or layout does not match the declared input format."""


class AsymmetricMatrixError(InputFormatError):
    pass


class NegativeDistanceError(ValueError):
    pass


def _numbers(text: str) -> list[float]:
    return [float(tok) for tok in _NUMBER.findall(text)]


def _triangular_size(count: int) -> int:
    # smallest k >= 1 with k(k-1)/2 == count
    k = (1 + math.isqrt(1 + 8 * count)) // 2
    if k * (k - 1) // 2 != count:
        raise InputFormatError(
            f"{count} values do not form a strict triangle of a square matrix"
        )
    return max(k, 1)


class DenseDistanceMatrix:
    """Lower triangle of a symmetric distance matrix, stored row by row.

    Entry ``(i, j)`` with ``i > j`` lives at ``i * (i - 1) // 2 + j``.
    """

    def __init__(self, distances: Sequence[float], n: int | None = None):
        distances = np.asarray(distances, dtype=np.float64).ravel()
        if n is None:
            n = _triangular_size(distances.size)
        if distances.size != n * (n - 1) // 2:
            raise InputFormatError(
                f"expected {n * (n - 1) // 2} distances for {n} points, got {distances.size}"
            )
        if np.isnan(distances).any():
            raise InputFormatError("distances must not be NaN")
        if (distances < 0).any():
            raise NegativeDistanceError("distances must be nonnegative")
        self.n = n
        self.distances = distances
        # python-level rows make scalar lookups in the reduction loops cheap
        square = np.zeros((n, n))
        rows, cols = np.tril_indices(n, -1)
        square[rows, cols] = distances
        square[cols, rows] = distances
        self._square = square
        self.rows = square.tolist()

    @classmethod
    def from_square(cls, matrix) -> "DenseDistanceMatrix":
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InputFormatError("distance matrix must be square")
        if (np.diag(matrix) != 0).any():
            raise InputFormatError("distance matrix must have a zero diagonal")
        if not np.array_equal(matrix, matrix.T):
            raise AsymmetricMatrixError("distance matrix is not symmetric")
        n = matrix.shape[0]
        return cls(matrix[np.tril_indices(n, -1)], n)

    @classmethod
    def from_points(cls, points) -> "DenseDistanceMatrix":
        points = np.asarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points[:, None]
        n = points.shape[0]
        rows, cols = np.tril_indices(n, -1)
        diff = points[rows] - points[cols]
        return cls(np.sqrt((diff * diff).sum(axis=1)), n)

    def as_array(self) -> np.ndarray:
        return self._square.copy()

    def distance(self, i: int, j: int) -> float:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"vertex pair ({i}, {j}) out of range for n={self.n}")
        return self.rows[i][j]

    def vertex_diameter(self, vertices: Sequence[int]) -> float:
        rows = self.rows
        diam = 0.0
        for a in range(1, len(vertices)):
            row = rows[vertices[a]]
            for b in range(a):
                x = row[vertices[b]]
                if x > diam:
                    diam = x
        return diam

    def simplex_diameter(self, index: int, d: int, table: BinomialTable) -> float:
        return self.vertex_diameter(cns_decode(index, d, self.n, table))

    def enclosing_radius(self) -> float:
        if self.n <= 1:
            return 0.0
        return float(self._square.max(axis=1).min())

    def max_distance(self) -> float:
        return float(self.distances.max()) if self.distances.size else 0.0

    def __repr__(self) -> str:
        return f"DenseDistanceMatrix(n={self.n})"


class SparseDistanceMatrix:
    """Adjacency lists of all pairs within a threshold, sorted by neighbor."""

    def __init__(self, n: int, neighbors: Iterable[Iterable[tuple[int, float]]], threshold: float):
        self.n = n
        self.threshold = threshold
        self.neighbors = [sorted(lst) for lst in neighbors]
        if len(self.neighbors) != n:
            raise ValueError("need one neighbor list per vertex")
        self.neighbor_vertices = [[v for v, _ in lst] for lst in self.neighbors]
        self._lookup = [dict(lst) for lst in self.neighbors]
        for u, lst in enumerate(self.neighbors):
            for v, x in lst:
                if v == u or self._lookup[v].get(u) != x:
                    raise ValueError(f"adjacency is not symmetric at ({u}, {v})")

    def distance(self, i: int, j: int) -> float:
        """Distance between i and j, or ``inf`` if the pair is not stored."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"vertex pair ({i}, {j}) out of range for n={self.n}")
        if i == j:
            return 0.0
        return self._lookup[i].get(j, math.inf)

    def vertex_diameter(self, vertices: Sequence[int]) -> float:
        diam = 0.0
        lookup = self._lookup
        inf = math.inf
        for a in range(1, len(vertices)):
            row = lookup[vertices[a]]
            for b in range(a):
                x = row.get(vertices[b], inf)
                if x > diam:
                    diam = x
        return diam

    def simplex_diameter(self, index: int, d: int, table: BinomialTable) -> float:
        return self.vertex_diameter(cns_decode(index, d, self.n, table))

    def has_neighbor(self, u: int, v: int) -> bool:
        lst = self.neighbor_vertices[u]
        k = bisect_left(lst, v)
        return k < len(lst) and lst[k] == v

    def __repr__(self) -> str:
        return f"SparseDistanceMatrix(n={self.n}, threshold={self.threshold})"


def sparsify(m: DenseDistanceMatrix, threshold: float) -> SparseDistanceMatrix:
    """Keep the pairs ``u != v`` with ``d(u, v) <= threshold``.

    Zero distances between distinct points are kept, so pseudo-metrics work.
    """
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    square = m._square
    neighbors = []
    for u in range(m.n):
        row = square[u]
        (close,) = np.nonzero(row <= threshold)
        neighbors.append([(int(v), float(row[v])) for v in close if v != u])
    return SparseDistanceMatrix(m.n, neighbors, threshold)


def parse_input(text: str, fmt: str = "lower-distance") -> DenseDistanceMatrix:
    """Read a distance matrix or point cloud from text.

    Numbers may be separated by any run of non-numeric characters.
    """
    if fmt not in FORMATS:
        raise InputFormatError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")

    if fmt == "point-cloud":
        points = [row for row in (_numbers(line) for line in text.splitlines()) if row]
        if not points:
            raise InputFormatError("point cloud is empty")
        width = len(points[0])
        if any(len(row) != width for row in points):
            raise InputFormatError("all points must have the same number of coordinates")
        return DenseDistanceMatrix.from_points(points)

    values = _numbers(text)
    if any(x < 0 for x in values):
        raise NegativeDistanceError("distances must be nonnegative")

    if fmt == "lower-distance":
        return DenseDistanceMatrix(values)

    if fmt == "upper-distance":
        n = _triangular_size(len(values))
        square = np.zeros((n, n))
        square[np.triu_indices(n, 1)] = values
        square = square + square.T
        return DenseDistanceMatrix(square[np.tril_indices(n, -1)], n)

    n = math.isqrt(len(values))
    if n * n != len(values) or n == 0:
        raise InputFormatError(f"{len(values)} values do not form a square matrix")
    return DenseDistanceMatrix.from_square(np.array(values).reshape(n, n))


def read_input(path: str | None, fmt: str = "lower-distance") -> DenseDistanceMatrix:
    if path is None or path == "-":
        import sys

        return parse_input(sys.stdin.read(), fmt)
    with open(path, encoding="utf-8") as fh:
        return parse_input(fh.read(), fmt)
