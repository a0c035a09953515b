"""Seeded test spaces."""

from __future__ import annotations

import numpy as np

from .distances import DenseDistanceMatrix


def random_pseudometric(n: int, seed: int, integer_levels: int | None = None) -> DenseDistanceMatrix:
    """Symmetric nonnegative matrix with uniform random entries.

    With ``integer_levels`` the entries are drawn from ``0, ..., levels - 1``,
    which produces ties and zero distances between distinct points.
    """
    rng = np.random.default_rng(seed)
    size = n * (n - 1) // 2
    if integer_levels is None:
        values = rng.uniform(0.0, 1.0, size)
    else:
        values = rng.integers(0, integer_levels, size).astype(np.float64)
    return DenseDistanceMatrix(values, n)


def distinct_distance_metric(n: int, seed: int) -> DenseDistanceMatrix:
    """Euclidean distances of random planar points, ties broken by tiny offsets."""
    rng = np.random.default_rng(seed)
    m = DenseDistanceMatrix.from_points(rng.uniform(0.0, 1.0, (n, 2)))
    values = m.distances.copy()
    # deterministic tie-break that keeps ordering of already distinct values
    order = np.argsort(values, kind="stable")
    ranks = np.empty_like(order)
    ranks[order] = np.arange(values.size)
    values = values + ranks * 1e-9
    if np.unique(values).size != values.size:
        raise ArithmeticError("tie-break offsets did not separate all distances")
    return DenseDistanceMatrix(values, n)


def sphere_points(n: int, seed: int, dim: int = 3) -> np.ndarray:
    """``n`` uniform random points on the unit sphere in R^dim."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)
