"""From a 2-factor to a tour, and the end-to-end bipartite pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .certify import AlphaCertificate, build_alpha_certificate, check_certificate
from .errors import InvariantBreach
from .factor import TwoFactor, check_in_graph, initial_two_factor
from .graph import Graph, Multigraph, bfs_distance, eulerian_circuit, spanning_tree, validate_cubic_bipartite
from .improve import Move, run_local_improvement
from .oracle import min_cycle_cover_components
from .reduce4 import reduce_all, uncontract_all

# Reduced graphs below this size are solved exactly.  There the n/8 bound
# asks for a Hamilton cycle, which local improvement can miss when a chord
# pivot is blocked, while the exhaustive search is instant.
EXACT_BELOW = 16


@dataclass(frozen=True)
class Tour:
    order: tuple
    length: int

    def to_json(self, labels=None) -> list:
        return [v if labels is None else labels[v] for v in self.order]


def tour_length(g: Graph, order) -> int:
    k = len(order)
    if k <= 1:
        return 0
    return sum(bfs_distance(g, order[i], order[(i + 1) % k]) for i in range(k))


def shortcut(g: Graph, walk) -> Tour:
    """Keep first visits along a closed walk; measure in the graph metric."""
    seen = set()
    order = []
    for v in walk:
        if v not in seen:
            seen.add(v)
            order.append(v)
    if len(order) != g.n:
        raise InvariantBreach("walk does not visit every node")
    return Tour(tuple(order), tour_length(g, order))


def doubling_multigraph(g: Graph, f: TwoFactor) -> Multigraph:
    """``f`` plus two copies of a spanning tree of the cycle-contracted graph.

    The tree is grown by BFS from the cycle containing node 0.  Each tree
    edge is realised by the first graph edge found between the two cycles,
    scanning cycle nodes in order and their neighbours by id.
    """
    where = f.cycle_index()
    k = f.components
    link: dict = {}
    for c in f.cycles:
        for v in c.nodes:
            for w in g.adj[v]:
                a, b = where[v], where[w]
                if a != b and (min(a, b), max(a, b)) not in link:
                    link[(min(a, b), max(a, b))] = (v, w)
    root = where[0]
    tree = spanning_tree(Multigraph(k, tuple(link)), root=root)
    edges = list(f.edges)
    for a, b in tree:
        e = link[(min(a, b), max(a, b))]
        edges += [e, e]
    return Multigraph(g.n, tuple(edges))


def build_tour_from_factor(g: Graph, f: TwoFactor) -> Tour:
    check_in_graph(g, f)
    k = f.components
    mg = doubling_multigraph(g, f)
    if len(mg.edges) != g.n + 2 * (k - 1):
        raise InvariantBreach("Eulerian multigraph has the wrong number of edges")
    walk = eulerian_circuit(mg, start=0)
    if len(walk) != len(mg.edges) + 1:
        raise InvariantBreach("Eulerian circuit misses edges")
    tour = shortcut(g, walk)
    if tour.length > g.n + 2 * k - 2:
        raise InvariantBreach(f"tour length {tour.length} exceeds n + 2k - 2 = {g.n + 2 * k - 2}")
    return tour


@dataclass
class SolveResult:
    n: int
    reduced_n: int
    factor: TwoFactor
    tour: Tour
    chosen: str  # "f1", "f2" or "oracle"
    components_f1: Optional[int] = None
    components_f2: Optional[int] = None
    certificate: Optional[AlphaCertificate] = None
    moves: tuple = ()
    blocked: tuple = ()

    @property
    def components(self) -> int:
        return self.factor.components

    def bound_5n4(self) -> Fraction:
        return Fraction(5 * self.n, 4) - 2


def solve_bipartite(
    g: Graph,
    debug: bool = False,
    trace: Optional[Callable[[Move], None]] = None,
) -> SolveResult:
    """Tour of length at most ``5n/4 - 2`` on a cubic bipartite graph.

    Contract 4-cycles, improve a pair of 2-factors on what is left (or solve
    it exactly when fewer than ``EXACT_BELOW`` nodes remain), lift the better
    factor back and turn it into a tour.  The averaging certificate is
    attached whenever no cycle ended up blocked.
    """
    validate_cubic_bipartite(g)
    h, stack = reduce_all(g)
    cert = None
    k1 = k2 = None
    moves: tuple = ()
    blocked: tuple = ()
    if h.n >= EXACT_BELOW:
        f1 = initial_two_factor(h)
        res = run_local_improvement(h, f1, debug=debug, trace=trace)
        k1, k2 = res.k1, res.k2
        reduced = res.best
        chosen = "f2" if k2 < k1 else "f1"
        if not res.blocked:
            cert = build_alpha_certificate(res.f1, res.f2, h.n)
            check_certificate(cert)
        moves = tuple(res.moves)
        blocked = res.blocked
    else:
        _, reduced = min_cycle_cover_components(h)
        chosen = "oracle"
    f = uncontract_all(stack, reduced)
    if f.components > reduced.components:
        raise InvariantBreach("uncontraction added cycles")
    tour = build_tour_from_factor(g, f)
    out = SolveResult(g.n, h.n, f, tour, chosen, k1, k2, cert, moves, blocked)
    if g.n >= 16:
        if f.components > g.n // 8:
            raise InvariantBreach(f"{f.components} cycles exceed n/8 for n = {g.n}")
        if tour.length > out.bound_5n4():
            raise InvariantBreach(f"tour length {tour.length} exceeds 5n/4 - 2")
    return out
