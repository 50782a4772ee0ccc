import pytest

from purplepack.graph import Graph
from purplepack.model import PackingInstance

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def make_instance(n, blue_edges, red_edges):
    return PackingInstance(Graph(n, blue_edges), Graph(n, red_edges))


@pytest.fixture
def inst_of():
    return make_instance
