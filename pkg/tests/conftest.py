import pytest

from knotproj import harness
from knotproj.cmap import realize_all
from knotproj.word import parse

TREFOIL = "1 2 3 1 2 3"

# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def emb(text: str, index: int = 0):
    """The ``index``-th embedding (by certificate) of a word given as text."""
    return realize_all(parse(text))[index]


@pytest.fixture(scope="session")
def catalog5():
    return harness.build_catalog(5)


@pytest.fixture(scope="session")
def curves5(catalog5):
    return [r.embedding for r in catalog5.records]


@pytest.fixture
def trefoil():
    return emb(TREFOIL)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
