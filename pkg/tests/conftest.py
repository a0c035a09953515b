import sys

import pytest

from vrbarcode import BinomialTable, FiltrationKey, parse_input
from vrbarcode.combinatorial import cns_encode

RECTANGLE_TEXT = "3,4,5,5,4,3"


@pytest.fixture
def rectangle():
    return parse_input(RECTANGLE_TEXT)


@pytest.fixture
def table4():
    return BinomialTable(4, 5)


def key_of(vertices, m, table):
    """FiltrationKey of a simplex given by its vertices in any order."""
    vertices = tuple(sorted(vertices, reverse=True))
    return FiltrationKey(m.vertex_diameter(vertices), len(vertices) - 1, cns_encode(vertices, table))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
