"""Cofacet and facet enumeration in the combinatorial number system.

Cofacets come out in reverse colexicographic order (decreasing index),
facets in forward colexicographic order (increasing index).  Coefficients
follow the standard orientation: inserting or removing the vertex that sits
at position ``k`` (counted from the smallest vertex) carries sign ``(-1)**k``,
so the coboundary is exactly the transpose of the boundary.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator, NamedTuple

from .combinatorial import BinomialTable, cns_decode
from .distances import DenseDistanceMatrix, SparseDistanceMatrix
from .filtration import FiltrationKey, sort_columns


class CofacetItem(NamedTuple):
    index: int
    diameter: float
    sign: int
    inserted_vertex: int


class FacetItem(NamedTuple):
    index: int
    diameter: float
    sign: int
    removed_vertex: int


def cofacets_dense(
    s: int,
    d: int,
    m: DenseDistanceMatrix,
    table: BinomialTable,
    all_cofacets: bool = True,
    diameter: float | None = None,
) -> Iterator[CofacetItem]:
    n = m.n
    vertices = cns_decode(s, d, n, table)
    if diameter is None:
        diameter = m.vertex_diameter(vertices)
    rows = m.rows
    binom = table.rows
    idx_below = s
    idx_above = 0
    k = d + 1
    v = n - 1
    while v >= 0:
        # step over vertices of s, moving them from the lower to the upper sum
        while k > 0 and binom[k][v] <= idx_below:
            idx_below -= binom[k][v]
            idx_above += binom[k + 1][v]
            v -= 1
            k -= 1
            if v < 0:
                return
        if not all_cofacets and k != d + 1:
            return
        row = rows[v]
        diam = diameter
        for w in vertices:
            x = row[w]
            if x > diam:
                diam = x
        yield CofacetItem(idx_above + binom[k + 1][v] + idx_below, diam, -1 if k & 1 else 1, v)
        v -= 1


def cofacets_sparse(
    s: int,
    d: int,
    m: SparseDistanceMatrix,
    table: BinomialTable,
    all_cofacets: bool = True,
    diameter: float | None = None,
) -> Iterator[CofacetItem]:
    """Cofacets whose new vertex is a common neighbor of every vertex of s."""
    vertices = cns_decode(s, d, m.n, table)
    if diameter is None:
        diameter = m.vertex_diameter(vertices)
    lists = [m.neighbors[w] for w in vertices]
    ptrs = [len(lst) - 1 for lst in lists]
    binom = table.rows
    top = vertices[0]
    idx_below = s
    idx_above = 0
    k = d + 1  # number of vertices of s below the current candidate
    count = len(lists)
    while True:
        # merged descending walk: find the largest common neighbor
        if ptrs[0] < 0:
            return
        cand = lists[0][ptrs[0]][0]
        i = 1
        while i < count:
            lst = lists[i]
            p = ptrs[i]
            while p >= 0 and lst[p][0] > cand:
                p -= 1
            ptrs[i] = p
            if p < 0:
                return
            other = lst[p][0]
            if other < cand:
                # restart with a smaller candidate from the first list
                p0 = ptrs[0]
                first = lists[0]
                while p0 >= 0 and first[p0][0] > other:
                    p0 -= 1
                ptrs[0] = p0
                if p0 < 0:
                    return
                cand = first[p0][0]
                i = 1
                continue
            i += 1
        j = cand
        if not all_cofacets and j < top:
            return
        while k > 0 and vertices[d + 1 - k] > j:
            w = vertices[d + 1 - k]
            idx_below -= binom[k][w]
            idx_above += binom[k + 1][w]
            k -= 1
        diam = diameter
        for i in range(count):
            x = lists[i][ptrs[i]][1]
            if x > diam:
                diam = x
        yield CofacetItem(idx_above + binom[k + 1][j] + idx_below, diam, -1 if k & 1 else 1, j)
        for i in range(count):
            ptrs[i] -= 1


def cofacets(s, d, m, table, all_cofacets=True, diameter=None) -> Iterator[CofacetItem]:
    if isinstance(m, SparseDistanceMatrix):
        return cofacets_sparse(s, d, m, table, all_cofacets, diameter)
    return cofacets_dense(s, d, m, table, all_cofacets, diameter)


def facets(s: int, d: int, m, table: BinomialTable) -> Iterator[FacetItem]:
    """The d + 1 facets of a d-simplex in increasing index order."""
    if d == 0:
        return
    vertices = cns_decode(s, d, m.n, table)
    binom = table.rows
    distance = m.distance
    # pairwise distances once; each facet diameter is a max over a sub-block
    pair = [[0.0] * (d + 1) for _ in range(d + 1)]
    for a in range(d + 1):
        for b in range(a):
            pair[a][b] = pair[b][a] = distance(vertices[a], vertices[b])
    idx_below = s
    idx_above = 0
    for k in range(d, -1, -1):
        pos = d - k  # position of the removed vertex in the decreasing tuple
        v = vertices[pos]
        idx_below -= binom[k + 1][v]
        diam = 0.0
        for a in range(d + 1):
            if a == pos:
                continue
            row = pair[a]
            for b in range(a):
                if b != pos and row[b] > diam:
                    diam = row[b]
        yield FacetItem(idx_above + idx_below, diam, -1 if k & 1 else 1, v)
        idx_above += binom[k][v]


def simplices_of_dimension(d: int, m, table: BinomialTable, threshold: float = math.inf) -> list[FiltrationKey]:
    """All d-simplices with diameter <= threshold, unsorted."""
    if d == 0:
        return [FiltrationKey(0.0, 0, v) for v in range(m.n)]
    out = []
    for key in simplices_of_dimension(d - 1, m, table, threshold):
        for c in cofacets(key.index, d - 1, m, table, False, key.diameter):
            if c.diameter <= threshold:
                out.append(FiltrationKey(c.diameter, d, c.index))
    return out


def assemble_columns(
    d: int,
    prev_simplices: list[FiltrationKey],
    m,
    table: BinomialTable,
    threshold: float = math.inf,
    skip: Callable[[FiltrationKey, tuple[int, ...]], bool] | None = None,
    cleared: set[int] | frozenset[int] = frozenset(),
) -> tuple[list[FiltrationKey], list[FiltrationKey]]:
    """Enumerate the d-simplices within threshold and pick the columns to reduce.

    ``prev_simplices`` must hold every (d-1)-simplex within threshold; each
    d-simplex is produced once, as a cofacet of its facet without the top
    vertex.  Returns ``(simplices, columns)``: ``simplices`` lists all
    d-simplices, ``columns`` drops the ``cleared`` indices and those for
    which ``skip(key, vertices)`` is true, sorted youngest first.
    """
    simplices = []
    columns = []
    for key in prev_simplices:
        below = cns_decode(key.index, d - 1, m.n, table)
        for c in cofacets(key.index, d - 1, m, table, False, key.diameter):
            if c.diameter > threshold:
                continue
            cofacet = FiltrationKey(c.diameter, d, c.index)
            simplices.append(cofacet)
            if c.index in cleared or (skip is not None and skip(cofacet, (c.inserted_vertex,) + below)):
                continue
            columns.append(cofacet)
    return simplices, sort_columns(columns)
