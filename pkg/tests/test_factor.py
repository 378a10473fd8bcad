import pytest

from cubictsp.errors import InvalidFactor, NotTwoRegular, OddCycle
from cubictsp.factor import (
    Cycle,
    TwoFactor,
    cycle_decomposition,
    cycle_half_matching,
    initial_two_factor,
    perfect_matching,
    seed_second_factor,
)
from cubictsp.gen import random_cubic_bipartite
from cubictsp.graph import canon, validate_cubic_bipartite

from .conftest import brute_two_factors


def _is_perfect_matching(n, m):
    covered = [0] * n
    for u, v in m:
        covered[u] += 1
        covered[v] += 1
    return all(c == 1 for c in covered)


@pytest.mark.parametrize("name, size", [("k33", 3), ("q3", 4)])
def test_perfect_matching_small(name, size, request):
    g = request.getfixturevalue(name)
    m = perfect_matching(g, validate_cubic_bipartite(g))
    assert len(m) == size
    assert m <= g.edges
    assert _is_perfect_matching(g.n, m)


def test_perfect_matching_appendix(appendix):
    g = appendix.graph
    m = perfect_matching(g, validate_cubic_bipartite(g))
    assert len(m) == 24 and _is_perfect_matching(48, m)


def test_initial_factor_k33_is_hamiltonian(k33):
    f = initial_two_factor(k33)
    assert f.edges in brute_two_factors(k33)
    assert f.components == 1 and len(f.cycles[0]) == 6


def test_initial_factor_q3(q3):
    f = initial_two_factor(q3)
    assert f.edges in brute_two_factors(q3)
    assert sorted(f.sizes()) in ([8], [4, 4])


def test_injected_matching_replays_appendix(appendix):
    f = initial_two_factor(appendix.graph, matching=appendix.known["matching"])
    assert [list(c.nodes) for c in f.cycles] == appendix.known["f1_cycles"]
    assert f.sizes() == [6, 6, 6, 6, 10, 14]


def test_injected_matching_rejected_when_not_perfect(appendix):
    with pytest.raises(InvalidFactor):
        initial_two_factor(appendix.graph, matching=appendix.known["matching"][:-1])


def test_cycle_decomposition_canonical():
    f = [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert [c.nodes for c in cycle_decomposition(f, 4)] == [(0, 1, 2, 3)]
    f = [(0, 3), (3, 2), (2, 1), (1, 0)]
    assert [c.nodes for c in cycle_decomposition(f, 4)] == [(0, 1, 2, 3)]


def test_cycle_decomposition_two_hexagons():
    f = [(i, (i + 1) % 6) for i in range(6)] + [(6 + i, 6 + (i + 1) % 6) for i in range(6)]
    cycles = cycle_decomposition(f, 12)
    assert [len(c) for c in cycles] == [6, 6]
    assert cycles[1].nodes[0] == 6


def test_cycle_decomposition_rejects_bad_degree():
    with pytest.raises(NotTwoRegular):
        cycle_decomposition([(0, 1), (1, 2)], 3)


def test_half_matching_hexagon():
    c = Cycle((1, 2, 3, 4, 5, 6))
    assert cycle_half_matching(c) == {(1, 2), (3, 4), (5, 6)}
    assert len(cycle_half_matching(Cycle((0, 1, 2, 3)))) == 2


def test_half_matching_appendix_c5(appendix):
    c = Cycle(tuple(appendix.known["f1_cycles"][4]))
    m = cycle_half_matching(c)
    assert len(m) == 5
    assert sorted(v for e in m for v in e) == sorted(c.nodes)


def test_half_matching_odd():
    with pytest.raises(OddCycle):
        cycle_half_matching(Cycle((0, 1, 2)))


def test_complement_is_matching_for_every_factor(q3):
    for f in brute_two_factors(q3):
        assert _is_perfect_matching(8, q3.edges - f)


@pytest.mark.parametrize("seed", range(20))
def test_seed_factor_alternates(seed):
    g = random_cubic_bipartite(5 + seed % 10, seed)
    f1 = initial_two_factor(g)
    f2 = seed_second_factor(g, f1)
    assert f2.edges <= g.edges
    assert (g.edges - f1.edges) <= f2.edges
    both = f1.edges & f2.edges
    for f in (f1, f2):
        for c in f.cycles:
            flags = [e in both for e in c.edges]
            assert all(flags[i] != flags[(i + 1) % len(c)] for i in range(len(c)))


def test_from_cycles_and_json(appendix):
    f = TwoFactor.from_cycles(appendix.known["f2_cycles"], 48)
    assert sorted(f.sizes()) == [6, 6, 6, 10, 10, 10]
    js = f.to_json(appendix.graph.labels)
    assert sorted(len(c) for c in js["cycles"]) == [6, 6, 6, 10, 10, 10]
    assert min(min(c) for c in js["cycles"]) == 1
    assert canon(5, 0) in f.edges


def test_matching_agrees_with_networkx():
    import networkx as nx

    for seed in range(30):
        g = random_cubic_bipartite(6 + seed % 10, seed)
        bp = validate_cubic_bipartite(g)
        ours = perfect_matching(g, bp)
        h = nx.Graph(g.edge_list())
        top = [v for v in range(g.n) if bp[v] == 0]
        theirs = nx.bipartite.hopcroft_karp_matching(h, top_nodes=top)
        assert len(ours) == len(theirs) // 2 == g.n // 2
        assert all(g.has_edge(u, v) for u, v in ours)
