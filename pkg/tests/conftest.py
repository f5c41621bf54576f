import random

import pytest

from pfkit.census import matchable_census
from pfkit.graph import Graph, Orientation

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def census8():
    return matchable_census(8)


@pytest.fixture(scope="session")
def census6():
    return matchable_census(6)


@pytest.fixture
def record():
    """Store a one-line verdict for the acceptance summary."""

    def _record(key: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[key] = (ok, detail)

    return _record


def random_orientation(g: Graph, rng: random.Random) -> Orientation:
    return Orientation.from_arcs([(u, v) if rng.random() < 0.5 else (v, u) for u, v in g.sorted_edges])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
