import itertools

import pytest

from cubictsp.gen import fixture
from cubictsp.graph import Graph


@pytest.fixture(scope="session")
def appendix():
    return fixture("appendix48")


@pytest.fixture
def k33():
    return fixture("k33").graph


@pytest.fixture
def q3():
    return fixture("q3").graph


@pytest.fixture
def heawood():
    return fixture("heawood").graph


def floyd_warshall(g: Graph):
    """All-pairs hop distances, independent of the BFS code under test."""
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(g.n)] for i in range(g.n)]
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for k, i, j in itertools.product(range(g.n), repeat=3):
        if d[i][k] + d[k][j] < d[i][j]:
            d[i][j] = d[i][k] + d[k][j]
    return d


def brute_two_factors(g: Graph):
    """Every 2-regular spanning edge subset, by trying all subsets of size n.

    Only usable for very small graphs; independent of the backtracking
    enumerator in the oracle module.
    """
    edges = g.edge_list()
    out = []
    for subset in itertools.combinations(edges, g.n):
        deg = [0] * g.n
        for u, v in subset:
            deg[u] += 1
            deg[v] += 1
        if all(d == 2 for d in deg):
            out.append(frozenset(subset))
    return out


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
