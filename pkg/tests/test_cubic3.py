from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubictsp.cubic3 import (
    TourMultigraph,
    bound_cls,
    bound_ms,
    combined_bound,
    contract_chorded,
    default_tour_multigraph,
    find_chorded_4cycles,
    solve_cubic,
    uncontract_tour_multigraph,
)
from cubictsp.errors import IsK4, NoTwoFactor, OddDegreeAtGadget
from cubictsp.gen import fixture, random_cubic_with_diamonds
from cubictsp.graph import Multigraph, connected_components


@pytest.fixture
def diamonds():
    return fixture("diamond-pair").graph


@pytest.fixture
def petersen():
    return fixture("petersen").graph


def _check_lifted(g, lifted):
    mg = lifted.as_multigraph()
    assert all(d > 0 and d % 2 == 0 for d in mg.degrees())
    assert len(connected_components(g.n, mg.edges)) == 1
    assert max(lifted.mult) <= 2


def test_detect_diamond_pair(diamonds):
    family, b = find_chorded_4cycles(diamonds)
    assert len(family) == 2 and len(b) == 8
    for q in family:
        assert diamonds.has_edge(q.v2, q.v4)
        assert not diamonds.has_edge(q.v1, q.v3)
        for v in (q.v2, q.v4):
            assert set(diamonds.adj[v]) <= set(q.nodes)


def test_petersen_has_none(petersen):
    family, b = find_chorded_4cycles(petersen)
    assert family == [] and b == frozenset()
    cc = contract_chorded(petersen, family)
    assert cc.multigraph.n == 10 and sorted(cc.multigraph.edges) == petersen.edge_list()


def test_k4():
    with pytest.raises(IsK4):
        find_chorded_4cycles(fixture("k4").graph)
    assert solve_cubic(fixture("k4").graph).tour.length == 4


def test_contract_diamond_pair(diamonds):
    family, _ = find_chorded_4cycles(diamonds)
    cc = contract_chorded(diamonds, family)
    assert cc.multigraph.n == 8 - 3 * 2 == 2
    assert cc.multigraph.edges == ((0, 1), (0, 1))
    assert cc.multigraph.degrees() == [2, 2]


def test_lift_odd_case(diamonds):
    cc = contract_chorded(diamonds, find_chorded_4cycles(diamonds)[0])
    lifted, deltas = uncontract_tour_multigraph(cc, TourMultigraph(cc.multigraph, (1, 1)))
    assert deltas == [3, 3] and lifted.size == 8
    _check_lifted(diamonds, lifted)


def test_lift_even_case(diamonds):
    cc = contract_chorded(diamonds, find_chorded_4cycles(diamonds)[0])
    lifted, deltas = uncontract_tour_multigraph(cc, TourMultigraph(cc.multigraph, (2, 0)))
    assert deltas == [4, 4] and lifted.size == 10
    _check_lifted(diamonds, lifted)


def test_lift_rejects_odd_degree(diamonds):
    cc = contract_chorded(diamonds, find_chorded_4cycles(diamonds)[0])
    with pytest.raises(OddDegreeAtGadget):
        uncontract_tour_multigraph(cc, TourMultigraph(cc.multigraph, (1, 0)))


def test_providers_on_double_edge():
    mg = Multigraph(2, ((0, 1), (0, 1)))
    assert sorted(default_tour_multigraph(mg, "tree").mult) == [0, 2]
    assert default_tour_multigraph(mg, "factor").mult == (1, 1)


def test_tree_provider_petersen(petersen):
    t = default_tour_multigraph(Multigraph(10, tuple(petersen.edge_list())), "tree")
    assert t.size == 18


def test_factor_provider_may_not_apply():
    # K4 with the three edges at node 0 subdivided: node 0 has no edge to
    # another degree-3 node, so no 2-factor keeps every subdividing node
    mg = Multigraph(7, ((0, 4), (1, 4), (0, 5), (2, 5), (0, 6), (3, 6), (1, 2), (1, 3), (2, 3)))
    with pytest.raises(NoTwoFactor):
        default_tour_multigraph(mg, "factor")
    assert default_tour_multigraph(mg, "tree").size == 12


@pytest.mark.parametrize("provider", ["tree", "factor"])
@pytest.mark.parametrize("seed", range(20))
def test_planted_gadgets(provider, seed):
    g = random_cubic_with_diamonds(8 + 2 * (seed % 4), 1 + seed % 3, seed, within_factor=True)
    family, b = find_chorded_4cycles(g)
    assert len(family) >= 1 + seed % 3
    cc = contract_chorded(g, family)
    assert cc.multigraph.n == g.n - 3 * len(family)
    assert max(cc.multigraph.degrees()) <= 3
    t = default_tour_multigraph(cc.multigraph, provider)
    lifted, deltas = uncontract_tour_multigraph(cc, t)
    _check_lifted(g, lifted)
    assert set(deltas) <= {3, 4}
    assert lifted.size == t.size + sum(deltas)


@pytest.mark.parametrize("seed", range(20))
def test_tree_provider_uniform_planting(seed):
    g = random_cubic_with_diamonds(10, 2, seed)
    res = solve_cubic(g, "tree")
    assert res.deltas and set(res.deltas) == {4}
    assert sorted(res.tour.order) == list(range(g.n))


def test_bound_cls_examples():
    assert bound_cls(8748, 0) == 11665
    n = Fraction(300)
    assert bound_cls(n, n) == Fraction(4, 3) * n + 2
    assert bound_cls(600, 10) <= bound_cls(600, 11)


def test_bound_ms_examples():
    assert bound_ms(6, 0) == Fraction(22, 3)
    assert bound_ms(60, 60) == Fraction(7, 6) * 60 - Fraction(2, 3)
    assert bound_ms(600, 11) < bound_ms(600, 10)


def test_bounds_reject_bad_b():
    with pytest.raises(ValueError):
        bound_cls(10, 11)
    with pytest.raises(ValueError):
        bound_ms(10, -1)


def test_combined_bound():
    for n in (1, 1459, 8754, 10**6 + 3):
        cb = combined_bound(n)
        assert cb.coefficient == Fraction(11671, 8754) == Fraction(4, 3) - Fraction(1, 8754)
        assert cb.b_star == Fraction(n, 1459)
        assert bound_ms(n, cb.b_star) == cb.coefficient * n - Fraction(2, 3)
        assert bound_cls(n, cb.b_star) - 2 == bound_ms(n, cb.b_star) + Fraction(2, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**7), st.fractions(0, 1))
def test_envelope(n, frac):
    b = frac * n
    cb = combined_bound(n)
    assert min(bound_cls(n, b), bound_ms(n, b)) <= cb.coefficient * n + 2
