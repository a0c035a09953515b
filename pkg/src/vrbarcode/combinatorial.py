"""Combinatorial number system indexing of simplices.

A d-simplex is written as its strictly decreasing vertex tuple
``(i_d, ..., i_0)`` and encoded as ``sum(C(i_l, l + 1))``.  The encoding is
an order-preserving bijection from colexicographically ordered tuples onto
``range(C(n, d + 1))``.
"""

from __future__ import annotations

from typing import Sequence

INDEX_LIMIT = 2**63 - 1


class InvalidSimplexError(ValueError):
    """Raised for vertex tuples that are not strictly decreasing."""


class BinomialTable:
    """Lookup table of C(n, k) for ``n <= n_max`` and ``k <= k_max``.

    Construction refuses tables with an entry above ``2**63 - 1`` instead of
    silently wrapping.
    """

    def __init__(self, n_max: int, k_max: int):
        if n_max < 0 or k_max < 0:
            raise ValueError("table bounds must be nonnegative")
        self.n_max = n_max
        self.k_max = k_max
        # rows indexed by k so that lookups in hot loops are table[k][n]
        rows = [[1] * (n_max + 1)]
        for k in range(1, k_max + 1):
            prev = rows[-1]
            row = [0] * (n_max + 1)
            for n in range(1, n_max + 1):
                value = prev[n - 1] + row[n - 1]
                if value > INDEX_LIMIT:
                    raise OverflowError(
                        f"C({n}, {k}) exceeds 64-bit simplex index range"
                    )
                row[n] = value
            rows.append(row)
        self.rows = rows

    def __call__(self, n: int, k: int) -> int:
        if not (0 <= n <= self.n_max) or not (0 <= k <= self.k_max):
            raise IndexError(f"binomial({n}, {k}) outside table bounds")
        return self.rows[k][n]

    # spelled out for readers coming from the C++ naming
    binomial = __call__


def cns_encode(vertices: Sequence[int], table: BinomialTable) -> int:
    """Index of the simplex with the given decreasing vertex tuple."""
    d = len(vertices) - 1
    if d < 0:
        raise InvalidSimplexError("a simplex needs at least one vertex")
    index = 0
    prev = None
    for pos, v in enumerate(vertices):
        if prev is not None and v >= prev:
            raise InvalidSimplexError(
                f"vertices must be strictly decreasing, got {tuple(vertices)}"
            )
        if v < 0:
            raise InvalidSimplexError("vertex indices must be nonnegative")
        index += table(v, d - pos + 1)
        prev = v
    return index


def max_vertex(index: int, k: int, upper: int, table: BinomialTable) -> int:
    """Largest ``i < upper`` with ``C(i, k) <= index``, by binary search."""
    row = table.rows[k]
    lo = k - 1
    hi = upper
    # invariant: C(lo, k) <= index, C(hi, k) > index (or hi == upper)
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if row[mid] <= index:
            lo = mid
        else:
            hi = mid
    return lo


def cns_decode(index: int, d: int, n: int, table: BinomialTable) -> tuple[int, ...]:
    """Decreasing vertex tuple of the d-simplex with the given index."""
    if index < 0 or index >= table(n, d + 1):
        raise IndexError(f"simplex index {index} out of range for d={d}, n={n}")
    vertices = []
    upper = n
    for k in range(d + 1, 0, -1):
        v = max_vertex(index, k, upper, table)
        vertices.append(v)
        index -= table.rows[k][v]
        upper = v
    return tuple(vertices)
