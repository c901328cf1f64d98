import random

import pytest

from arnoldring.graph import Multigraph


def complete(n):
    return Multigraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Multigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


TRIANGLE = cycle(3)
K4 = complete(4)
BOWTIE = Multigraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
DIAMOND = Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)])
PARALLEL_TRIANGLE = Multigraph.from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 0)])


def random_multigraph(rng, n, m, loops=False):
    pairs = []
    for _ in range(m):
        a, b = rng.randrange(n), rng.randrange(n)
        if not loops:
            while a == b:
                a, b = rng.randrange(n), rng.randrange(n)
        pairs.append((a, b))
    return Multigraph.from_edges(n, pairs)


@pytest.fixture
def rng():
    return random.Random(20261016)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
