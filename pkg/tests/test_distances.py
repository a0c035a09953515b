import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vrbarcode import BinomialTable, DenseDistanceMatrix, parse_input, sparsify
from vrbarcode.combinatorial import cns_decode, cns_encode
from vrbarcode.datasets import random_pseudometric
from vrbarcode.distances import (
    AsymmetricMatrixError,
    InputFormatError,
    NegativeDistanceError,
    read_input,
)
from vrbarcode.enumeration import cofacets, simplices_of_dimension

RECTANGLE_SQUARE = [
    [0, 3, 4, 5],
    [3, 0, 5, 4],
    [4, 5, 0, 3],
    [5, 4, 3, 0],
]


def test_lower_distance_rectangle(rectangle):
    assert rectangle.n == 4
    assert rectangle.as_array().tolist() == RECTANGLE_SQUARE


def test_separators_are_any_non_numeric_run():
    m = parse_input("3\n4;5\t5 ,, 4|3")
    assert m.as_array().tolist() == RECTANGLE_SQUARE


def test_point_cloud_rectangle():
    m = parse_input("0 0\n3 0\n0 4\n3 4\n", "point-cloud")
    assert m.as_array().tolist() == RECTANGLE_SQUARE


def test_upper_and_full_formats():
    upper = parse_input("3 4 5 5 4 3", "upper-distance")
    # upper rows: d01 d02 d03 / d12 d13 / d23
    assert upper.distance(0, 3) == 5 and upper.distance(1, 2) == 5 and upper.distance(2, 3) == 3
    text = "\n".join(" ".join(str(x) for x in row) for row in RECTANGLE_SQUARE)
    assert parse_input(text, "full-distance").as_array().tolist() == RECTANGLE_SQUARE


def test_empty_lower_is_one_point():
    m = parse_input("")
    assert m.n == 1
    assert m.enclosing_radius() == 0


def test_bad_token_count():
    with pytest.raises(InputFormatError):
        parse_input("1 2")
    with pytest.raises(InputFormatError):
        parse_input("0 1 1", "full-distance")
    with pytest.raises(InputFormatError):
        parse_input("0 0\n1\n", "point-cloud")
    with pytest.raises(InputFormatError):
        parse_input("1 2 3", "bogus")


def test_asymmetric_full_matrix_rejected_exactly():
    with pytest.raises(AsymmetricMatrixError):
        parse_input("0 1\n1.0000000001 0", "full-distance")
    with pytest.raises(InputFormatError):
        parse_input("1 1\n1 0", "full-distance")  # nonzero diagonal


def test_negative_distance():
    with pytest.raises(NegativeDistanceError):
        parse_input("3 -4 5 5 4 3")


def test_read_input_file(tmp_path):
    path = tmp_path / "rect.txt"
    path.write_text("3,4,5,5,4,3\n")
    assert read_input(str(path)).as_array().tolist() == RECTANGLE_SQUARE


def test_distance_examples(rectangle):
    assert rectangle.distance(3, 0) == 5
    assert rectangle.distance(2, 2) == 0
    assert rectangle.distance(1, 2) == 5
    with pytest.raises(IndexError):
        rectangle.distance(4, 0)


def test_simplex_diameter_examples(rectangle):
    table = BinomialTable(4, 4)
    assert rectangle.simplex_diameter(cns_encode((3, 2, 1, 0), table), 3, table) == 5
    assert rectangle.simplex_diameter(cns_encode((1, 0), table), 1, table) == 3
    assert all(rectangle.simplex_diameter(v, 0, table) == 0 for v in range(4))


def test_enclosing_radius():
    assert parse_input("3,4,5,5,4,3").enclosing_radius() == 5
    assert DenseDistanceMatrix([], 1).enclosing_radius() == 0
    assert DenseDistanceMatrix([2.0]).enclosing_radius() == 2


def test_sparsify_examples(rectangle):
    s3 = sparsify(rectangle, 3)
    assert s3.neighbors == [[(1, 3.0)], [(0, 3.0)], [(3, 3.0)], [(2, 3.0)]]
    s5 = sparsify(rectangle, 5)
    assert all(len(lst) == 3 for lst in s5.neighbors)
    assert all(lst == [] for lst in sparsify(rectangle, 0).neighbors)


def test_sparsify_keeps_zero_distances():
    m = DenseDistanceMatrix([0.0, 1.0, 1.0])
    s = sparsify(m, 0.5)
    assert s.neighbors[0] == [(1, 0.0)] and s.neighbors[1] == [(0, 0.0)]
    assert s.distance(0, 2) == math.inf


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.integers(0, 10**6), st.sampled_from([None, 3]), st.floats(0, 1))
def test_sparse_invariants_and_simplex_sets(n, seed, levels, quantile):
    m = random_pseudometric(n, seed, levels)
    t = float(np.quantile(m.distances, quantile))
    s = sparsify(m, t)
    for u, lst in enumerate(s.neighbors):
        vs = [v for v, _ in lst]
        assert vs == sorted(set(vs)) and u not in vs
        for v, x in lst:
            assert x == m.distance(u, v) <= t
            assert s.has_neighbor(v, u)
    table = BinomialTable(n, 4)
    for d in range(3):
        dense = set(simplices_of_dimension(d, m, table, t))
        sparse = set(simplices_of_dimension(d, s, table, t))
        assert dense == sparse


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8), st.integers(0, 10**6))
def test_diameter_monotone_under_faces(n, seed):
    m = random_pseudometric(n, seed)
    table = BinomialTable(n, 4)
    for d in range(2):
        for key in simplices_of_dimension(d, m, table):
            for c in cofacets(key.index, d, m, table):
                assert c.diameter >= key.diameter
                assert c.diameter == m.vertex_diameter(cns_decode(c.index, d + 1, n, table))
