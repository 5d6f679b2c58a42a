import pytest

from hopfgal.builders import paper_example
from hopfgal.cli import example_circle


@pytest.fixture(scope="session")
def example():
    return paper_example()


@pytest.fixture(scope="session")
def example_run(example):
    return example_circle(ex=example)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 12):
        terminalreporter.write_line(RESULTS.get(n, f"criterion {n}: NOT RUN"))
