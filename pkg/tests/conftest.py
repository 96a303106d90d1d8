import random

import pytest

# One line per acceptance criterion, printed after the run regardless of
# output capture.  tests/test_acceptance.py appends to this.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)

from sap_forest import OnlineForest
from sap_forest.forest import CycleError


def random_arrivals(n: int, rng: random.Random, min_deg: int = 1,
                    degrees=(1, 1, 2, 2, 3)) -> list[tuple[int, ...]]:
    """A random valid arrival sequence on ``n`` white vertices."""
    forest = OnlineForest(n)
    arrivals: list[tuple[int, ...]] = []
    for _ in range(n):
        placed = False
        for _attempt in range(60):
            deg = max(min_deg, rng.choice(degrees))
            nbrs = tuple(sorted(rng.sample(range(1, n + 1), min(deg, n))))
            try:
                forest.add_black(nbrs)
            except CycleError:
                continue
            arrivals.append(nbrs)
            placed = True
            break
        if not placed:
            break
    return arrivals


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def chain3():
    """Three-white chain closed by a pendant; the smallest scenario where
    the final worst-case distance sweeps the whole component."""
    f = OnlineForest(3)
    f.add_black((1, 2))
    f.add_black((2, 3))
    f.add_black((3,))
    return f
