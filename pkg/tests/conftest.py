import itertools

import numpy as np
import pytest

from regspec.graph import RegularGraph


def brute_cycle_counts(g, r):
    """Count simple cycles by trying every ordered vertex tuple (tiny graphs only)."""
    counts = {k: 0 for k in range(3, r + 1)}
    for k in range(3, r + 1):
        for tup in itertools.permutations(range(g.n), k):
            if tup[0] != min(tup) or tup[1] > tup[-1]:
                continue
            if all(g.has_edge(tup[i], tup[(i + 1) % k]) for i in range(k)):
                counts[k] += 1
    return counts


def brute_cnbw(g, k):
    """Closed walks of length k, non-backtracking including the wrap-around step."""
    total = 0
    for start in range(g.n):
        stack = [(start,)]
        while stack:
            path = stack.pop()
            if len(path) == k + 1:
                # wrap-around step v_{k-1} -> v_0 -> v_1 must not backtrack
                total += path[-1] == start and path[1] != path[-2]
                continue
            for y in g.neighbors[path[-1]]:
                if len(path) >= 2 and y == path[-2]:
                    continue
                stack.append(path + (int(y),))
    return total


def triangle_fixture():
    """An 8-vertex cubic graph: triangle 0-1-2 plus a 5-vertex part with far edges."""
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (3, 7), (4, 6), (4, 7), (5, 6), (5, 7)]
    return RegularGraph.from_edges(8, 3, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the test report
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
