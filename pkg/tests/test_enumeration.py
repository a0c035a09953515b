from collections import Counter, defaultdict

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vrbarcode import BinomialTable, DenseDistanceMatrix, RipsReducer, sparsify
from vrbarcode.combinatorial import cns_decode
from vrbarcode.datasets import random_pseudometric
from vrbarcode.enumeration import (
    assemble_columns,
    cofacets,
    cofacets_dense,
    cofacets_sparse,
    facets,
    simplices_of_dimension,
)
from vrbarcode.filtration import FiltrationKey

from conftest import key_of


@pytest.fixture
def seven():
    return random_pseudometric(7, 0)


def test_cofacets_of_worked_example(seven):
    table = BinomialTable(7, 5)
    items = list(cofacets_dense(13, 2, seven, table))
    assert [c.index for c in items] == [28, 12, 7, 6]
    assert [c.inserted_vertex for c in items] == [6, 4, 2, 1]
    # sign (-1)**k with k = number of vertices of (5,3,0) below the new vertex
    assert [c.sign for c in items] == [-1, 1, -1, -1]


def test_cofacets_of_top_simplex(rectangle, table4):
    assert list(cofacets_dense(0, 3, rectangle, table4)) == []


def test_cofacet_diameters(seven):
    table = BinomialTable(7, 5)
    for c in cofacets_dense(13, 2, seven, table):
        assert c.diameter == seven.vertex_diameter(cns_decode(c.index, 3, 7, table))


def test_sparse_cofacet_examples(rectangle, table4):
    s3 = sparsify(rectangle, 3)
    assert [c.index for c in cofacets_sparse(2, 0, s3, table4)] == [key_of((3, 2), rectangle, table4).index]
    s5 = sparsify(rectangle, 5)
    e30 = key_of((3, 0), rectangle, table4)
    got = [c.index for c in cofacets_sparse(e30.index, 1, s5, table4)]
    assert got == [key_of(t, rectangle, table4).index for t in [(3, 2, 0), (3, 1, 0)]]
    s0 = sparsify(rectangle, 0)
    assert list(cofacets_sparse(1, 0, s0, table4)) == []


def test_facet_examples(rectangle, table4):
    table = BinomialTable(7, 5)
    assert [f.index for f in facets(13, 2, random_pseudometric(7, 0), table)] == [3, 10, 13]
    t = key_of((3, 2, 0), rectangle, table4)
    got = [(f.index, f.diameter) for f in facets(t.index, 2, rectangle, table4)]
    assert got == [(1, 4.0), (3, 5.0), (5, 3.0)]
    e = key_of((3, 1), rectangle, table4)
    assert [f.index for f in facets(e.index, 1, rectangle, table4)] == [1, 3]
    assert list(facets(2, 0, rectangle, table4)) == []


@pytest.mark.parametrize("n", [4, 6, 9])
def test_boundary_of_boundary_vanishes(n):
    m = random_pseudometric(n, n)
    table = BinomialTable(n, n + 1)
    for d in range(2, n):
        for s in range(table(n, d + 1)):
            total = defaultdict(int)
            for f in facets(s, d, m, table):
                for g in facets(f.index, d - 1, m, table):
                    total[g.index] += f.sign * g.sign
            # zero over the integers, hence over every F_p
            assert not any(total.values())


@pytest.mark.parametrize("n", [5, 8])
def test_coboundary_is_transpose_of_boundary(n):
    m = random_pseudometric(n, 1)
    table = BinomialTable(n, n + 1)
    for d in range(n - 1):
        for s in range(table(n, d + 1)):
            for c in cofacets(s, d, m, table):
                signs = {f.index: f.sign for f in facets(c.index, d + 1, m, table)}
                assert signs[s] == c.sign
            cob = defaultdict(int)
            for c in cofacets(s, d, m, table):
                for c2 in cofacets(c.index, d + 1, m, table):
                    cob[c2.index] += c.sign * c2.sign
            assert not any(cob.values())


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 10), st.integers(0, 10**6), st.floats(0, 1), st.sampled_from([None, 3]))
def test_dense_and_sparse_agree(n, seed, quantile, levels):
    m = random_pseudometric(n, seed, levels)
    t = float(np.quantile(m.distances, quantile))
    s = sparsify(m, t)
    table = BinomialTable(n, 4)
    for d in range(3):
        for key in simplices_of_dimension(d, m, table, t):
            for every in (True, False):
                dense = [c for c in cofacets_dense(key.index, d, m, table, every) if c.diameter <= t]
                sparse = list(cofacets_sparse(key.index, d, s, table, every))
                assert dense == sparse


@pytest.mark.parametrize("n", [5, 7])
def test_each_simplex_generated_once(n):
    m = random_pseudometric(n, 3)
    table = BinomialTable(n, n + 1)
    for d in range(1, n):
        seen = Counter()
        for s in range(table(n, d)):
            produced = [c.index for c in cofacets(s, d - 1, m, table, False)]
            assert produced == sorted(produced, reverse=True)
            assert len(set(produced)) == len(produced)
            seen.update(produced)
        assert sorted(seen) == list(range(table(n, d + 1)))
        assert set(seen.values()) == {1}


def test_assemble_columns_examples(rectangle, table4):
    reducer = RipsReducer(rectangle, 2)
    edges = simplices_of_dimension(1, rectangle, table4, 5)
    _, columns = assemble_columns(2, edges, rectangle, table4, 5, skip=reducer._skip_apparent)
    assert columns == [key_of((3, 1, 0), rectangle, table4)]

    vertices = simplices_of_dimension(0, rectangle, table4)
    simplices, columns = assemble_columns(1, vertices, rectangle, table4, 5)
    order = [(2, 1), (3, 0), (2, 0), (3, 1), (1, 0), (3, 2)]
    assert columns == [key_of(e, rectangle, table4) for e in order]
    assert len(simplices) == 6

    assert assemble_columns(1, vertices, rectangle, table4, 0) == ([], [])


def test_assemble_columns_honors_cleared(rectangle, table4):
    edges = simplices_of_dimension(1, rectangle, table4, 5)
    cleared = {key_of((3, 2, 1), rectangle, table4).index}
    simplices, columns = assemble_columns(2, edges, rectangle, table4, 5, cleared=cleared)
    assert len(simplices) == 4 and len(columns) == 3
    assert all(c.index not in cleared for c in columns)


def test_zero_distance_cofacets():
    # duplicate points: every simplex on them has diameter 0
    m = DenseDistanceMatrix([0.0, 0.0, 0.0])
    table = BinomialTable(3, 3)
    assert [c.diameter for c in cofacets(0, 0, m, table)] == [0.0, 0.0]
    assert simplices_of_dimension(2, m, table, 0) == [FiltrationKey(0.0, 2, 0)]
