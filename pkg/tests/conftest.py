import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gcsa2.graph import from_edges, load_graph  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "data")

ACCEPTANCE_LINES: list[str] = []


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


@pytest.fixture
def g2():
    # 0:A -> {1:C, 2:G} -> 3:T
    return from_edges("ACGT", [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def g2_file():
    return data_path("g2.tsv")


@pytest.fixture
def fixture_graphs():
    return {
        "g2": from_edges("ACGT", [(0, 1), (0, 2), (1, 3), (2, 3)]),
        "chain": from_edges("GCATCATA", [(i, i + 1) for i in range(7)]),
        "single": from_edges("A", []),
        "cycle": from_edges("AC", [(0, 1), (1, 0)]),
        "empty": from_edges("", []),
        "bubble": load_graph(data_path("bubble.gfa")),
    }


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
