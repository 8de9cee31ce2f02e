from __future__ import annotations

from itertools import combinations

from outer1color.graph import Graph, build_graph


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return build_graph(n, list(combinations(range(n), 2)))


def k4_minus_e() -> Graph:
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def triangle() -> Graph:
    return cycle(3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
