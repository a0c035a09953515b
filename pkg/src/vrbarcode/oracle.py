"""Brute-force persistence and discrete Morse checks.

Everything here works on explicitly stored complexes and is kept independent
of the optimized engine: simplices are vertex tuples found with
``itertools.combinations``, the order is built from tuple comparisons, and
reduction is plain column reduction of the boundary matrix (homology side)
without clearing or shortcuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .engine import Barcode, PairCounts

INDEX_LIMIT = 2**63 - 1


class NotAVectorField(ValueError):
    """Pairs overlap or are not facet pairs."""


@dataclass
class ExplicitComplex:
    """Simplices in filtration order with explicit boundary columns.

    ``simplices[i]`` is an increasing vertex tuple, ``values[i]`` its
    filtration value.  ``boundary[j]`` lists ``(row, sign)`` for the facets of
    simplex ``j`` with ``sign = (-1)**k`` for the removed position ``k``.
    """

    simplices: list[tuple[int, ...]]
    values: list[float]
    boundary: list[list[tuple[int, int]]]
    report_dim: int

    def __post_init__(self):
        self.position = {s: i for i, s in enumerate(self.simplices)}
        self.coboundary: list[list[int]] = [[] for _ in self.simplices]
        for j, col in enumerate(self.boundary):
            for i, _ in col:
                if i >= j:
                    raise ValueError("a facet must precede its cofacet")
                self.coboundary[i].append(j)

    @classmethod
    def from_ordered(cls, simplices: Sequence[Sequence[int]], values=None, report_dim=None) -> "ExplicitComplex":
        simplices = [tuple(sorted(s)) for s in simplices]
        position = {s: i for i, s in enumerate(simplices)}
        boundary = []
        for s in simplices:
            col = []
            if len(s) > 1:
                for k in range(len(s)):
                    facet = s[:k] + s[k + 1:]
                    if facet not in position:
                        raise ValueError(f"facet {facet} of {s} missing from the complex")
                    col.append((position[facet], -1 if k & 1 else 1))
            boundary.append(col)
        if values is None:
            values = [float(i) for i in range(len(simplices))]
        if report_dim is None:
            report_dim = max((len(s) - 1 for s in simplices), default=0)
        return cls(simplices, list(values), boundary, report_dim)

    def dim(self, i: int) -> int:
        return len(self.simplices[i]) - 1

    def __len__(self) -> int:
        return len(self.simplices)


def rips_complex(dist, max_dim: int, threshold: float = math.inf) -> ExplicitComplex:
    """All simplices up to dimension ``max_dim + 1`` with diameter <= threshold.

    ``dist`` is anything indexable as ``dist[i][j]`` (a square matrix).
    Order: diameter, then dimension, then reverse colexicographic vertex order.
    """
    n = len(dist)
    entries = []
    for size in range(1, max_dim + 3):
        for s in combinations(range(n), size):
            diam = max((dist[a][b] for a, b in combinations(s, 2)), default=0.0)
            if diam <= threshold:
                # colex order compares decreasing tuples; negate to reverse it
                entries.append((diam, size - 1, tuple(-v for v in reversed(s)), s))
    entries.sort()
    return ExplicitComplex.from_ordered(
        [e[3] for e in entries], [e[0] for e in entries], report_dim=max_dim
    )


def lexicographic_complex(simplices: Iterable[Sequence[int]]) -> ExplicitComplex:
    """Order a complex by dimension, then lexicographically."""
    ordered = sorted({tuple(sorted(s)) for s in simplices}, key=lambda s: (len(s), s))
    return ExplicitComplex.from_ordered(ordered)


def _axpy(target: dict[int, int], lam: int, source: dict[int, int], p: int) -> None:
    # target -= lam * source over F_p, dropping zeros
    for i, x in source.items():
        y = (target.get(i, 0) - lam * x) % p
        if y:
            target[i] = y
        else:
            target.pop(i, None)


def naive_reduce(c: ExplicitComplex, p: int = 2, return_matrices: bool = False):
    """Column reduction of the full boundary matrix over F_p.

    Returns ``(pairs, essential, barcode)`` where pairs are position pairs
    ``(i, j)`` and the barcode keeps the nonzero intervals up to
    ``c.report_dim``.  With ``return_matrices`` the reduced matrix R and the
    reduction matrix V (columns as ``{row: coefficient}``) are appended.
    """
    inverse = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    low_to_col: dict[int, int] = {}
    reduced: list[dict[int, int]] = []
    reduction: list[dict[int, int]] = []
    pairs = []
    for j, col in enumerate(c.boundary):
        r = {i: s % p for i, s in col}
        v = {j: 1}
        while r:
            low = max(r)
            k = low_to_col.get(low)
            if k is None:
                break
            lam = r[low] * inverse[reduced[k][low]] % p
            _axpy(r, lam, reduced[k], p)
            _axpy(v, lam, reduction[k], p)
        reduced.append(r)
        reduction.append(v)
        if r:
            low = max(r)
            low_to_col[low] = j
            pairs.append((low, j))
    births = {i for i, _ in pairs}
    essential = [j for j, r in enumerate(reduced) if not r and j not in births]

    barcode = Barcode()
    for d in range(c.report_dim + 1):
        barcode.intervals[d] = []
    for i, j in pairs:
        d = c.dim(i)
        if d <= c.report_dim and c.values[j] > c.values[i]:
            barcode.add(d, c.values[i], c.values[j])
    for i in essential:
        d = c.dim(i)
        if d <= c.report_dim:
            barcode.add(d, c.values[i], math.inf)
    if return_matrices:
        return pairs, essential, barcode, reduced, reduction
    return pairs, essential, barcode


def all_apparent_pairs(c: ExplicitComplex) -> set[tuple[int, int]]:
    """Pairs where sigma is the youngest facet of tau and tau the oldest cofacet of sigma."""
    out = set()
    for i in range(len(c)):
        cof = c.coboundary[i]
        if not cof:
            continue
        j = min(cof)
        if max(r for r, _ in c.boundary[j]) == i:
            out.add((i, j))
    return out


def check_discrete_gradient(pairs: Iterable[tuple[int, int]], c: ExplicitComplex) -> tuple[bool, list[int]]:
    """Build ``f(sigma_j) = i`` for pairs ``(i, j)`` and ``j`` otherwise.

    Returns whether ``f`` is a discrete Morse function whose gradient is
    exactly the given pairs, together with the values of ``f``.
    """
    pairs = list(pairs)
    seen = set()
    for i, j in pairs:
        if i in seen or j in seen:
            raise NotAVectorField(f"simplex occurs in more than one pair: {(i, j)}")
        seen.update((i, j))
        if i not in {r for r, _ in c.boundary[j]}:
            raise NotAVectorField(f"{c.simplices[i]} is not a facet of {c.simplices[j]}")
    f = list(range(len(c)))
    for i, j in pairs:
        f[j] = i
    return morse_gradient(f, c) == set(pairs), f


def morse_gradient(f: Sequence[float], c: ExplicitComplex) -> set[tuple[int, int]] | None:
    """The gradient pairs of ``f``, or None if ``f`` is not a discrete Morse function."""
    equal = []
    for j, col in enumerate(c.boundary):
        for i, _ in col:
            if f[i] > f[j]:
                return None
            if f[i] == f[j]:
                equal.append((i, j))
    used = [x for pair in equal for x in pair]
    if len(used) != len(set(used)):
        return None
    return set(equal)


def lexicographic_gradient(simplices: Iterable[Sequence[int]]) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pair each simplex with its cone over the smallest vertex below it, when one exists."""
    present = {tuple(sorted(s)) for s in simplices}
    vertices = sorted({v for s in present for v in s})
    pairs = set()
    for s in present:
        for v in vertices:
            if v >= s[0]:
                break
            t = (v,) + s
            if t in present:
                pairs.add((s, t))
                break
    return pairs


def pair_statistics(c: ExplicitComplex, pairs: Iterable[tuple[int, int]]) -> dict[int, PairCounts]:
    """Pair counts per birth dimension, classified by definition."""
    stats: dict[int, PairCounts] = {}
    for i, j in pairs:
        counts = stats.setdefault(c.dim(i), PairCounts())
        emergent = min(c.coboundary[i]) == j
        emergent_facet = max(r for r, _ in c.boundary[j]) == i
        counts.add(c.values[i] == c.values[j], emergent, emergent_facet)
    return stats


def predicted_column_counts(n: int, p: int) -> dict[str, int]:
    """Column counts for reducing the (p+1)-skeleton of the full simplex on n vertices."""
    comb = math.comb
    counts = {
        "standard": sum(comb(n, d + 1) for d in range(1, p + 2)),
        "clearing": sum(comb(n - 1, d) for d in range(1, p + 3)),
        "cohomology": sum(comb(n, d + 1) for d in range(0, p + 1)),
        "cohomology_clearing": sum(comb(n - 1, d) for d in range(0, p + 2)),
        "deaths": sum(comb(n - 1, d) for d in range(1, p + 2)),
    }
    for name, value in counts.items():
        if value > INDEX_LIMIT:
            raise OverflowError(f"{name} column count exceeds 64 bits")
    return counts


def oracle_barcode(dist, max_dim: int, threshold: float = math.inf, p: int = 2) -> Barcode:
    return naive_reduce(rips_complex(dist, max_dim, threshold), p)[2]
