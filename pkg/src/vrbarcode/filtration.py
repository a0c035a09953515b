"""The lexicographically refined Vietoris-Rips filtration order.

Simplices are ordered by diameter, then dimension, then reverse
colexicographic vertex order, i.e. a larger combinatorial index comes first.
"""

from __future__ import annotations

from functools import cmp_to_key
from typing import Iterable, NamedTuple


class FiltrationKey(NamedTuple):
    diameter: float
    dimension: int
    index: int


def filtration_compare(a: FiltrationKey, b: FiltrationKey) -> int:
    """Negative if ``a`` enters the filtration before ``b``, zero if equal."""
    if a.diameter != b.diameter:
        return -1 if a.diameter < b.diameter else 1
    if a.dimension != b.dimension:
        return -1 if a.dimension < b.dimension else 1
    if a.index != b.index:
        return -1 if a.index > b.index else 1
    return 0


def filtration_sort_key(key: FiltrationKey) -> tuple[float, int, int]:
    """Sort key realizing ``filtration_compare`` (oldest first)."""
    return key.diameter, key.dimension, -key.index


def filtration_sorted(keys: Iterable[FiltrationKey]) -> list[FiltrationKey]:
    return sorted(keys, key=filtration_sort_key)


def sort_columns(keys: Iterable[FiltrationKey]) -> list[FiltrationKey]:
    """Columns of one dimension, youngest simplex first."""
    return sorted(keys, key=lambda k: (-k.diameter, k.index))


def heap_key(diameter: float, index: int) -> tuple[float, int]:
    """Min-heap key whose top is the oldest simplex of a fixed dimension."""
    return diameter, -index


compare_key = cmp_to_key(filtration_compare)
