"""Vietoris-Rips barcodes by implicit coboundary reduction.

Dimension 0 is handled by Kruskal's algorithm with union-find.  Higher
dimensions reduce the filtration coboundary matrix in increasing dimension,
youngest column first, with

* clearing: pivots found in dimension d - 1 are not columns in dimension d,
* implicit columns: R_j is rebuilt as D * V_j on demand and only the death
  columns of V are kept,
* the emergent pair shortcut while a column is first enumerated,
* zero persistence apparent pairs dropped before reduction and looked up
  on the fly instead of being stored in the pivot table.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Iterator, Literal, NamedTuple

from .combinatorial import BinomialTable, cns_decode
from .distances import DenseDistanceMatrix, SparseDistanceMatrix, sparsify
from .enumeration import (
    CofacetItem,
    FacetItem,
    assemble_columns,
    cofacets,
    facets,
    simplices_of_dimension,
)
from .field import MAX_PACKED_INDEX, PackedEntry, PrimeField, pack, unpack
from .filtration import FiltrationKey, filtration_sort_key

PairKind = Literal["shortcut-apparent", "emergent", "reduced", "dim0"]


class PersistencePairRecord(NamedTuple):
    birth: FiltrationKey
    death: FiltrationKey | None
    kind: PairKind

    @property
    def persistence(self) -> float:
        if self.death is None:
            return math.inf
        return self.death.diameter - self.birth.diameter


class LazyColumn:
    """A column as a heap of entries that may repeat an index.

    The top of the heap is the oldest simplex, i.e. smallest diameter and
    then largest index.  Repeated indices stand for the sum of their
    coefficients and are only combined when the pivot is extracted.
    """

    __slots__ = ("heap",)

    def __init__(self):
        self.heap: list[tuple[float, int, int]] = []

    def push(self, diameter: float, index: int, coefficient: int) -> None:
        heappush(self.heap, (diameter, -index, coefficient))

    def pop_pivot(self, field: PrimeField) -> PackedEntry | None:
        heap = self.heap
        p = field.p
        while heap:
            diameter, neg_index, c = heappop(heap)
            while heap and heap[0][1] == neg_index:
                c += heappop(heap)[2]
            c %= p
            if c:
                return PackedEntry(-neg_index, c, diameter)
        return None

    def get_pivot(self, field: PrimeField) -> PackedEntry | None:
        pivot = self.pop_pivot(field)
        if pivot is not None:
            heappush(self.heap, (pivot.diameter, -pivot.index, pivot.coefficient))
        return pivot

    def __len__(self) -> int:
        return len(self.heap)


def pop_pivot(column: LazyColumn, field: PrimeField) -> PackedEntry | None:
    return column.pop_pivot(field)


class CompressedColumns:
    """Append-only sparse columns with packed index/coefficient words."""

    def __init__(self):
        self.words = array("Q")
        self.diameters = array("d")
        self.bounds: dict[int, tuple[int, int]] = {}

    def append(self, key: int, entries: list[PackedEntry]) -> None:
        start = len(self.words)
        for e in entries:
            self.words.append(pack(e.index, e.coefficient))
            self.diameters.append(e.diameter)
        self.bounds[key] = (start, len(self.words))

    def column(self, key: int) -> Iterator[PackedEntry]:
        bounds = self.bounds.get(key)
        if bounds is None:
            return
        for pos in range(*bounds):
            index, c = unpack(self.words[pos])
            yield PackedEntry(index, c, self.diameters[pos])

    def __contains__(self, key: int) -> bool:
        return key in self.bounds

    def __len__(self) -> int:
        return len(self.words)


@dataclass
class PairCounts:
    total: int = 0
    zero: int = 0
    shortcut: int = 0
    apparent: int = 0
    emergent: int = 0
    emergent_facet: int = 0

    @property
    def non_zero(self) -> int:
        return self.total - self.zero

    def add(self, zero: bool, emergent: bool, emergent_facet: bool) -> None:
        self.total += 1
        self.zero += zero
        self.emergent += emergent
        self.emergent_facet += emergent_facet
        self.apparent += emergent and emergent_facet
        self.shortcut += zero and emergent


@dataclass
class Barcode:
    """Intervals ``(birth, death)`` per dimension; essential ones die at ``inf``."""

    intervals: dict[int, list[tuple[float, float]]] = field(default_factory=dict)

    def add(self, dim: int, birth: float, death: float) -> None:
        self.intervals.setdefault(dim, []).append((birth, death))

    def __getitem__(self, dim: int) -> list[tuple[float, float]]:
        return sorted(self.intervals.get(dim, []))

    def dimensions(self) -> list[int]:
        return sorted(self.intervals)

    def essential(self) -> list[tuple[int, float]]:
        return [(d, b) for d in self.dimensions() for b, x in self[d] if x == math.inf]

    def as_dict(self, max_dim: int | None = None) -> dict[int, list[tuple[float, float]]]:
        top = max_dim if max_dim is not None else max(self.intervals, default=-1)
        return {d: self[d] for d in range(top + 1)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        dims = set(self.intervals) | set(other.intervals)
        return all(self[d] == other[d] for d in dims)


@dataclass
class DimensionResult:
    pairs: list[PersistencePairRecord]
    essential: list[FiltrationKey]
    pivot_table: dict[int, tuple[int, int]]
    columns: list[FiltrationKey]
    reduction: CompressedColumns | None = None


@dataclass
class PersistenceResult:
    barcode: Barcode
    threshold: float
    n: int
    stats: dict[int, PairCounts]
    pairs: list[PersistencePairRecord] | None = None
    columns_reduced: dict[int, int] = field(default_factory=dict)


class RipsReducer:
    """State for one barcode computation on a fixed distance matrix."""

    def __init__(
        self,
        m: DenseDistanceMatrix | SparseDistanceMatrix,
        max_dim: int = 1,
        threshold: float = math.inf,
        modulus: int = 2,
        keep_pairs: bool = False,
    ):
        if max_dim < 0:
            raise ValueError("max_dim must be nonnegative")
        if threshold < 0:
            raise ValueError("threshold must be nonnegative")
        self.m = m
        self.n = m.n
        self.max_dim = max_dim
        self.threshold = threshold
        self.field = PrimeField(modulus)
        self.table = BinomialTable(m.n, max_dim + 2)
        if self.table(m.n, max_dim + 2) - 1 > MAX_PACKED_INDEX:
            raise OverflowError(
                f"{m.n} points up to dimension {max_dim + 1} exceed the packed index range"
            )
        self.dense = isinstance(m, DenseDistanceMatrix)
        self.keep_pairs = keep_pairs
        self.pairs: list[PersistencePairRecord] = []
        self.stats: dict[int, PairCounts] = {}

    # -- simplex helpers ---------------------------------------------------

    def _encode(self, vertices) -> int:
        # unchecked encoding for decreasing tuples built here
        rows = self.table.rows
        k = len(vertices)
        index = 0
        for v in vertices:
            index += rows[k][v]
            k -= 1
        return index

    def vertices(self, key: FiltrationKey) -> tuple[int, ...]:
        return cns_decode(key.index, key.dimension, self.n, self.table)

    def diameter(self, index: int, d: int) -> float:
        return self.m.simplex_diameter(index, d, self.table)

    def key(self, index: int, d: int) -> FiltrationKey:
        return FiltrationKey(self.diameter(index, d), d, index)

    def cofacets(self, key: FiltrationKey, all_cofacets: bool = True) -> Iterator[CofacetItem]:
        return cofacets(key.index, key.dimension, self.m, self.table, all_cofacets, key.diameter)

    def facets(self, key: FiltrationKey) -> Iterator[FacetItem]:
        return facets(key.index, key.dimension, self.m, self.table)

    # -- apparent pairs ----------------------------------------------------

    def zero_pivot_cofacet(self, key: FiltrationKey) -> CofacetItem | None:
        """First cofacet in decreasing index order with the same diameter."""
        diameter = key.diameter
        for c in self.cofacets(key):
            if c.diameter == diameter:
                return c
        return None

    def zero_pivot_facet(self, key: FiltrationKey) -> FacetItem | None:
        """First facet in increasing index order with the same diameter."""
        diameter = key.diameter
        for f in self.facets(key):
            if f.diameter == diameter:
                return f
        return None

    def _zero_apparent_cofacet(self, key: FiltrationKey) -> CofacetItem | None:
        if not self.dense:
            return self._enumerated_apparent_cofacet(key)
        vertices = self.vertices(key)
        j = self._dense_apparent_cofacet(vertices, key.diameter)
        if j is None:
            return None
        k = sum(1 for w in vertices if w < j)
        tau = tuple(sorted(vertices + (j,), reverse=True))
        return CofacetItem(self._encode(tau), key.diameter, -1 if k & 1 else 1, j)

    def _zero_apparent_facet(self, key: FiltrationKey) -> FacetItem | None:
        if not self.dense:
            return self._enumerated_apparent_facet(key)
        vertices = self.vertices(key)
        u = self._dense_apparent_facet(vertices, key.diameter)
        if u is None:
            return None
        k = sum(1 for w in vertices if w < u)
        rho = tuple(w for w in vertices if w != u)
        return FacetItem(self._encode(rho), key.diameter, -1 if k & 1 else 1, u)

    def _enumerated_apparent_cofacet(self, key: FiltrationKey) -> CofacetItem | None:
        """Reference test: walk the cofacets, then the facets of the first hit."""
        c = self.zero_pivot_cofacet(key)
        if c is None:
            return None
        f = self.zero_pivot_facet(FiltrationKey(c.diameter, key.dimension + 1, c.index))
        return c if f is not None and f.index == key.index else None

    def _enumerated_apparent_facet(self, key: FiltrationKey) -> FacetItem | None:
        f = self.zero_pivot_facet(key)
        if f is None:
            return None
        c = self.zero_pivot_cofacet(FiltrationKey(f.diameter, key.dimension - 1, f.index))
        return f if c is not None and c.index == key.index else None

    def zero_apparent_cofacet(self, key: FiltrationKey) -> FiltrationKey | None:
        c = self._zero_apparent_cofacet(key)
        return None if c is None else FiltrationKey(c.diameter, key.dimension + 1, c.index)

    def zero_apparent_facet(self, key: FiltrationKey) -> FiltrationKey | None:
        f = self._zero_apparent_facet(key)
        return None if f is None else FiltrationKey(f.diameter, key.dimension - 1, f.index)

    def _skip_apparent(self, key: FiltrationKey, vertices: tuple[int, ...] | None = None) -> bool:
        """Column filter; pairs found through the cofacet test are recorded."""
        if self.dense:
            if vertices is None:
                vertices = self.vertices(key)
            j = self._dense_apparent_cofacet(vertices, key.diameter)
            if j is not None:
                tau = tuple(sorted(vertices + (j,), reverse=True))
                death = FiltrationKey(key.diameter, key.dimension + 1, self._encode(tau))
                self._record(key, death, "shortcut-apparent", True, True)
                return True
            return self._dense_apparent_facet(vertices, key.diameter) is not None
        tau = self.zero_apparent_cofacet(key)
        if tau is not None:
            self._record(key, tau, "shortcut-apparent", True, True)
            return True
        return self._zero_apparent_facet(key) is not None

    # -- dense fast path ---------------------------------------------------
    # The same tests on vertex tuples, without decoding indices.  A cofacet
    # keeps the diameter of sigma exactly when its new vertex lies within
    # that diameter of every vertex of sigma.

    def _dense_apparent_cofacet(self, vertices: tuple[int, ...], diameter: float) -> int | None:
        """New vertex of the zero apparent cofacet, or None."""
        rows = self.m.rows
        for j in range(self.n - 1, -1, -1):
            if j in vertices:
                continue
            if max(map(rows[j].__getitem__, vertices)) <= diameter:
                break
        else:
            return None
        # the facets ahead of sigma drop a vertex u > j; each must lose the diameter
        for u in vertices:
            if u < j:
                break
            rest = [w for w in vertices if w != u]
            rest.append(j)
            if self.m.vertex_diameter(rest) == diameter:
                return None
        return j

    def _dense_apparent_facet(self, vertices: tuple[int, ...], diameter: float) -> int | None:
        """Removed vertex of the zero apparent facet, or None."""
        if len(vertices) < 2:
            return None
        vertex_diameter = self.m.vertex_diameter
        for u in vertices:
            rest = [w for w in vertices if w != u]
            if vertex_diameter(rest) == diameter:
                break
        else:
            return None
        # no vertex above u may extend the facet without raising its diameter
        rows = self.m.rows
        for j in range(self.n - 1, u, -1):
            if j in vertices:
                continue
            if max(map(rows[j].__getitem__, rest)) <= diameter:
                return None
        return u

    # -- bookkeeping -------------------------------------------------------

    def _record(self, birth, death, kind, emergent=None, emergent_facet=None) -> None:
        counts = self.stats.setdefault(birth.dimension, PairCounts())
        if emergent is None:
            emergent = self.oldest_cofacet(birth) == death.index
        if emergent_facet is None:
            emergent_facet = self.youngest_facet(death) == birth.index
        counts.add(birth.diameter == death.diameter, emergent, emergent_facet)
        if self.keep_pairs:
            self.pairs.append(PersistencePairRecord(birth, death, kind))

    def oldest_cofacet(self, key: FiltrationKey) -> int | None:
        best = None
        for c in self.cofacets(key):
            if c.diameter <= self.threshold and (best is None or (c.diameter, -c.index) < best):
                best = (c.diameter, -c.index)
        return None if best is None else -best[1]

    def youngest_facet(self, key: FiltrationKey) -> int | None:
        best = None
        for f in self.facets(key):
            if best is None or (f.diameter, -f.index) > best:
                best = (f.diameter, -f.index)
        return None if best is None else -best[1]

    # -- dimension 0 -------------------------------------------------------

    def compute_dim0(self) -> tuple[list[tuple[FiltrationKey, FiltrationKey]], list[FiltrationKey], list[FiltrationKey], list[FiltrationKey]]:
        """Kruskal on the edges within threshold.

        Returns ``(pairs, essential, columns, edges)`` where ``columns`` are
        the dimension 1 columns (non-tree edges outside zero apparent pairs,
        youngest first) and ``edges`` lists every edge.
        """
        edges = sorted(simplices_of_dimension(1, self.m, self.table, self.threshold), key=filtration_sort_key)
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pairs = []
        columns = []
        for e in edges:
            a, b = cns_decode(e.index, 1, self.n, self.table)
            ra, rb = find(a), find(b)
            if ra != rb:
                # roots are the oldest vertex, i.e. the largest index, of
                # their component; the younger component dies
                young, old = min(ra, rb), max(ra, rb)
                parent[young] = old
                birth = FiltrationKey(0.0, 0, young)
                pairs.append((birth, e))
                self._record(birth, e, "dim0")
            elif self.max_dim > 0 and not self._skip_apparent(e, (a, b)):
                columns.append(e)
        columns.reverse()
        essential = [FiltrationKey(0.0, 0, v) for v in range(self.n - 1, -1, -1) if find(v) == v]
        return pairs, essential, columns, edges

    # -- reduction ---------------------------------------------------------

    def init_coboundary_and_get_pivot(
        self, key: FiltrationKey, pivot_table: dict, working: LazyColumn
    ) -> PackedEntry | None:
        """Fill ``working`` with the coboundary of ``key`` and return its pivot.

        If the oldest cofacet has the same diameter and is not paired yet, the
        pair is emergent: the pivot is returned at once and ``working`` stays
        empty.
        """
        p = self.field.p
        threshold = self.threshold
        diameter = key.diameter
        d1 = key.dimension + 1
        check = True
        entries = []
        for c in self.cofacets(key):
            if c.diameter > threshold:
                continue
            coeff = 1 if c.sign > 0 else p - 1
            if check and c.diameter == diameter:
                if c.index not in pivot_table:
                    facet = self.zero_apparent_facet(FiltrationKey(c.diameter, d1, c.index))
                    if facet is None or facet.index == key.index:
                        return PackedEntry(c.index, coeff, c.diameter)
                check = False
            entries.append((c.diameter, -c.index, coeff))
        heap = working.heap
        for e in entries:
            heappush(heap, e)
        return working.get_pivot(self.field)

    def add_simplex_coboundary(
        self, key: FiltrationKey, coefficient: int, working_v: LazyColumn, working_r: LazyColumn
    ) -> None:
        p = self.field.p
        threshold = self.threshold
        working_v.push(key.diameter, key.index, coefficient)
        heap = working_r.heap
        neg = p - coefficient
        for c in self.cofacets(key):
            if c.diameter <= threshold:
                heappush(heap, (c.diameter, -c.index, coefficient if c.sign > 0 else neg))

    def add_coboundary(
        self,
        reduction: CompressedColumns,
        columns: list[FiltrationKey],
        k: int,
        factor: int,
        working_v: LazyColumn,
        working_r: LazyColumn,
    ) -> None:
        """``R_j -= factor * D V_k`` and ``V_j -= factor * V_k``, lazily."""
        if factor % self.field.p == 0:
            return
        p = self.field.p
        d = columns[k].dimension
        self.add_simplex_coboundary(columns[k], factor, working_v, working_r)
        for e in reduction.column(k):
            self.add_simplex_coboundary(FiltrationKey(e.diameter, d, e.index), e.coefficient * factor % p, working_v, working_r)

    def reduce_dimension(self, d: int, columns: list[FiltrationKey]) -> DimensionResult:
        """Reduce the d-coboundary columns (youngest first) with clearing applied."""
        fld = self.field
        p = fld.p
        inv = fld.inverse
        pivot_table: dict[int, tuple[int, int]] = {}
        reduction = CompressedColumns()
        pairs = []
        essential = []
        for j, key in enumerate(columns):
            working_v = LazyColumn()
            working_r = LazyColumn()
            pivot = self.init_coboundary_and_get_pivot(key, pivot_table, working_r)
            kind = "emergent" if pivot is not None and not working_r else "reduced"
            while pivot is not None and kind == "reduced":
                hit = pivot_table.get(pivot.index)
                if hit is not None:
                    k, c_k = hit
                    factor = -pivot.coefficient * inv[c_k] % p
                    self.add_coboundary(reduction, columns, k, factor, working_v, working_r)
                else:
                    facet = self._zero_apparent_facet(FiltrationKey(pivot.diameter, d + 1, pivot.index))
                    if facet is None:
                        break
                    # the pivot's coefficient in the facet's coboundary is the facet sign
                    factor = -pivot.coefficient * (1 if facet.sign > 0 else p - 1) % p
                    self.add_simplex_coboundary(
                        FiltrationKey(facet.diameter, d, facet.index), factor, working_v, working_r
                    )
                pivot = working_r.get_pivot(fld)
            if pivot is None:
                essential.append(key)
                continue
            death = FiltrationKey(pivot.diameter, d + 1, pivot.index)
            pivot_table[pivot.index] = (j, pivot.coefficient)
            entries = []
            while (e := working_v.pop_pivot(fld)) is not None:
                entries.append(e)
            reduction.append(j, entries)
            pairs.append(PersistencePairRecord(key, death, kind))
            self._record(key, death, kind, emergent=True if kind == "emergent" else None)
        return DimensionResult(pairs, essential, pivot_table, columns, reduction)

    def compute(self) -> PersistenceResult:
        barcode = Barcode()
        barcode.intervals[0] = []
        dim0_pairs, dim0_essential, columns, simplices = self.compute_dim0()
        for birth, death in dim0_pairs:
            if death.diameter > birth.diameter:
                barcode.add(0, birth.diameter, death.diameter)
        for key in dim0_essential:
            barcode.add(0, key.diameter, math.inf)
            if self.keep_pairs:
                self.pairs.append(PersistencePairRecord(key, None, "dim0"))
        reduced = {}
        for d in range(1, self.max_dim + 1):
            result = self.reduce_dimension(d, columns)
            reduced[d] = len(columns)
            barcode.intervals.setdefault(d, [])
            for pair in result.pairs:
                if pair.death.diameter > pair.birth.diameter:
                    barcode.add(d, pair.birth.diameter, pair.death.diameter)
            for key in result.essential:
                barcode.add(d, key.diameter, math.inf)
                if self.keep_pairs:
                    self.pairs.append(PersistencePairRecord(key, None, "reduced"))
            if d < self.max_dim:
                simplices, columns = assemble_columns(
                    d + 1,
                    simplices,
                    self.m,
                    self.table,
                    self.threshold,
                    skip=self._skip_apparent,
                    cleared=result.pivot_table.keys(),
                )
        return PersistenceResult(
            barcode=barcode,
            threshold=self.threshold,
            n=self.n,
            stats=self.stats,
            pairs=self.pairs if self.keep_pairs else None,
            columns_reduced=reduced,
        )


def compute_barcodes(
    m: DenseDistanceMatrix | SparseDistanceMatrix,
    max_dim: int = 1,
    threshold: float = math.inf,
    modulus: int = 2,
    keep_pairs: bool = False,
) -> PersistenceResult:
    """Barcodes of the Rips filtration of ``m`` up to ``max_dim`` and ``threshold``."""
    if isinstance(m, SparseDistanceMatrix):
        threshold = min(threshold, m.threshold)
    return RipsReducer(m, max_dim, threshold, modulus, keep_pairs).compute()


def rips_barcodes(
    m: DenseDistanceMatrix,
    max_dim: int = 1,
    threshold: float | None = None,
    modulus: int = 2,
    keep_pairs: bool = False,
) -> PersistenceResult:
    """Front door: choose threshold and storage, then compute.

    Without a threshold the enclosing radius is used; beyond it the complex
    is a cone and nothing changes.  Thresholds that keep at most half of the
    edges use the sparse neighbor-list representation.
    """
    if threshold is None:
        threshold = m.enclosing_radius()
    if m.n > 1:
        kept = int((m.distances <= threshold).sum())
        if kept <= m.distances.size // 2:
            return compute_barcodes(sparsify(m, threshold), max_dim, threshold, modulus, keep_pairs)
    return compute_barcodes(m, max_dim, threshold, modulus, keep_pairs)
