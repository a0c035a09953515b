"""Vietoris-Rips persistence barcodes by implicit coboundary reduction."""

from .combinatorial import BinomialTable, cns_decode, cns_encode, max_vertex
from .distances import DenseDistanceMatrix, SparseDistanceMatrix, parse_input, sparsify
from .engine import Barcode, PersistenceResult, RipsReducer, compute_barcodes, rips_barcodes
from .field import PrimeField, make_field
from .filtration import FiltrationKey, filtration_compare, sort_columns

__all__ = [
    "Barcode",
    "BinomialTable",
    "DenseDistanceMatrix",
    "FiltrationKey",
    "PersistenceResult",
    "PrimeField",
    "RipsReducer",
    "SparseDistanceMatrix",
    "cns_decode",
    "cns_encode",
    "compute_barcodes",
    "filtration_compare",
    "make_field",
    "max_vertex",
    "parse_input",
    "rips_barcodes",
    "sort_columns",
    "sparsify",
]
