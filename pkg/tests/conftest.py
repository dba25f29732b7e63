import json
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hyperspan.hypercore import Hypergraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def frozen():
    return json.loads((DATA / "frozen.json").read_text())


@st.composite
def raw_instances(draw, n_min=2, n_max=8, m_max=10, r_max=3, w_max=5):
    """``(n, edges)`` with distinct vertex sets and integer weights."""
    n = draw(st.integers(n_min, n_max))
    r = min(r_max, n)
    vsets = draw(st.lists(
        st.sets(st.integers(0, n - 1), min_size=2, max_size=r).map(lambda s: tuple(sorted(s))),
        max_size=m_max, unique=True,
    ))
    weights = draw(st.lists(st.integers(1, w_max), min_size=len(vsets), max_size=len(vsets)))
    return n, list(zip(weights, vsets))


def to_hypergraph(n, edges):
    return Hypergraph.from_edges(n, [(float(w), tuple(v)) for w, v in edges])


def record_acceptance(number, passed, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
