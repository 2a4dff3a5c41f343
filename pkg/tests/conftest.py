from itertools import combinations

import pytest

from cliquenorm.graphs import Graph


def naive_clique_count(G: Graph, t: int) -> int:
    """Scan every t-subset; independent of the bitset recursion."""
    edges = set(G.edges())
    return sum(
        1 for T in combinations(range(G.n), t)
        if all((a, b) in edges for a, b in combinations(T, 2))
    )


def naive_hyperclique_count(n, r, edges, t):
    edges = set(edges)
    return sum(1 for T in combinations(range(n), t) if all(e in edges for e in combinations(T, r)))


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    def record(label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}  {detail}".rstrip())
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
