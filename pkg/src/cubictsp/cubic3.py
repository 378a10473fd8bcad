"""Chorded 4-cycles in general cubic graphs.

A chorded 4-cycle ``(v1, v2, v3, v4)`` has cycle edges ``v1v2, v2v3, v3v4,
v4v1`` and the chord ``v2v4``; in a cubic graph other than K4 the chord ends
are saturated and ``v1``, ``v3`` each have one outside edge.  Contracting
each such gadget to a single degree-2 node gives a subcubic multigraph.  A
tour multigraph on the contracted graph is lifted back by splicing either
the path ``v1 v2 v4 v3`` (both outside edges used an odd number of times)
or the whole 4-cycle (both used an even number of times).

The module also carries the exact bound arithmetic for combining the two
tour guarantees that pull in opposite directions as the number of gadget
nodes grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import networkx as nx

from .errors import IsK4, NoTwoFactor, NotConnected, OddDegreeAtGadget
from .graph import Graph, Multigraph, canon, connected_components, eulerian_circuit, spanning_tree, validate_cubic
from .tour import Tour, shortcut

FOUR_THIRDS = Fraction(4, 3)
CLS_GAIN = Fraction(1, 8748)
MS_GAIN = Fraction(1, 6)
MS_CONST = Fraction(2, 3)
CLS_CONST = Fraction(2)


@dataclass(frozen=True)
class ChordedFourCycle:
    v1: int
    v2: int
    v3: int
    v4: int
    ext1: int  # outside neighbour of v1
    ext3: int  # outside neighbour of v3

    @property
    def nodes(self) -> tuple:
        return (self.v1, self.v2, self.v3, self.v4)

    def path_edges(self) -> list:
        return [canon(self.v1, self.v2), canon(self.v2, self.v4), canon(self.v4, self.v3)]

    def cycle_edges(self) -> list:
        return [canon(self.v1, self.v2), canon(self.v2, self.v3),
                canon(self.v3, self.v4), canon(self.v4, self.v1)]


@dataclass(frozen=True)
class ContractionRecordC4:
    gadget: ChordedFourCycle
    w: int  # contracted node
    edge_at_v1: int  # index into the contracted multigraph's edge list
    edge_at_v3: int


@dataclass(frozen=True)
class ChordedContraction:
    """Result of contracting a disjoint family of gadgets.

    ``origin[i]`` is the original graph edge behind contracted edge ``i``.
    """

    graph: Graph
    multigraph: Multigraph
    records: tuple
    origin: tuple
    old_of_new: tuple


@dataclass(frozen=True)
class TourMultigraph:
    """Edge multiplicities (0, 1 or 2) over the edges of a base multigraph."""

    base: Multigraph
    mult: tuple

    def as_multigraph(self) -> Multigraph:
        edges = []
        for e, m in zip(self.base.edges, self.mult):
            edges += [e] * m
        return Multigraph(self.base.n, tuple(edges))

    @property
    def size(self) -> int:
        return sum(self.mult)

    def degrees(self) -> list[int]:
        return self.as_multigraph().degrees()


def find_chorded_4cycles(g: Graph) -> tuple[list[ChordedFourCycle], frozenset]:
    """Greedy maximal node-disjoint family of chorded 4-cycles and the node
    set they cover."""
    validate_cubic(g)
    if g.n == 4:
        raise IsK4("K4 has no outside edges to contract; its tour is any 4-cycle")
    found = []
    for v2, v4 in g.edge_list():
        common = sorted(set(g.adj[v2]) & set(g.adj[v4]))
        if len(common) != 2:
            continue
        v1, v3 = common
        if g.has_edge(v1, v3):
            continue
        (e1,) = [w for w in g.adj[v1] if w not in (v2, v4)]
        (e3,) = [w for w in g.adj[v3] if w not in (v2, v4)]
        found.append(ChordedFourCycle(v1, v2, v3, v4, e1, e3))
    found.sort(key=lambda q: sorted(q.nodes))
    family = []
    used: set[int] = set()
    for q in found:
        if used.isdisjoint(q.nodes):
            family.append(q)
            used.update(q.nodes)
    return family, frozenset(used)


def contract_chorded(g: Graph, family) -> ChordedContraction:
    """Replace each gadget by one node ``w`` joined to ``ext1`` and ``ext3``.

    Parallel edges survive (two gadgets joined twice, or a gadget whose two
    outside neighbours coincide).
    """
    gadget_of = {}
    for q in family:
        for v in q.nodes:
            if v in gadget_of:
                raise ValueError("gadgets overlap")
            gadget_of[v] = q
    reps = sorted(v for v in range(g.n) if v not in gadget_of or gadget_of[v].v1 == v)
    new_of_old = {v: i for i, v in enumerate(reps)}
    for q in family:
        for v in q.nodes:
            new_of_old[v] = new_of_old[q.v1]

    edges = []
    origin = []
    ends: dict = {}
    for u, v in g.edge_list():
        qu, qv = gadget_of.get(u), gadget_of.get(v)
        if qu is not None and qu is qv:
            continue
        idx = len(edges)
        edges.append(canon(new_of_old[u], new_of_old[v]))
        origin.append((u, v))
        for x, q in ((u, qu), (v, qv)):
            if q is not None:
                ends[(id(q), x)] = idx
    records = tuple(
        ContractionRecordC4(q, new_of_old[q.v1], ends[(id(q), q.v1)], ends[(id(q), q.v3)])
        for q in family
    )
    mg = Multigraph(len(reps), tuple(edges))
    return ChordedContraction(g, mg, records, tuple(origin), tuple(reps))


def tree_provider(mg: Multigraph) -> TourMultigraph:
    """Every spanning-tree edge twice."""
    tree = set(canon(a, b) for a, b in spanning_tree(mg))
    mult = [0] * len(mg.edges)
    for i, e in enumerate(mg.edges):
        if e in tree:
            mult[i] = 2
            tree.discard(e)
    return TourMultigraph(mg, tuple(mult))


def two_factor_of_multigraph(mg: Multigraph) -> Optional[list[int]]:
    """Edge indices of a 2-factor of a multigraph with degrees 2 and 3.

    Removing a perfect matching of the degree-3 nodes, using only edges
    between degree-3 nodes, leaves every degree at exactly 2.
    """
    deg = mg.degrees()
    if any(d not in (2, 3) for d in deg):
        return None
    h = nx.Graph()
    cubic = [v for v in range(mg.n) if deg[v] == 3]
    h.add_nodes_from(cubic)
    first_copy = {}
    for i, (u, v) in enumerate(mg.edges):
        if deg[u] == 3 and deg[v] == 3 and u != v:
            h.add_edge(u, v)
            first_copy.setdefault(canon(u, v), i)
    matching = nx.max_weight_matching(h, maxcardinality=True)
    if 2 * len(matching) != len(cubic):
        return None
    drop = {first_copy[canon(u, v)] for u, v in matching}
    return [i for i in range(len(mg.edges)) if i not in drop]


def factor_provider(mg: Multigraph) -> TourMultigraph:
    """A 2-factor (each edge once) plus a doubled tree joining its cycles."""
    keep = two_factor_of_multigraph(mg)
    if keep is None:
        raise NoTwoFactor("contracted multigraph has no 2-factor")
    mult = [0] * len(mg.edges)
    for i in keep:
        mult[i] = 1
    comps = connected_components(mg.n, [mg.edges[i] for i in keep])
    where = {v: j for j, c in enumerate(comps) for v in c}
    link = {}
    for i, (u, v) in enumerate(mg.edges):
        a, b = where[u], where[v]
        if a != b and canon(a, b) not in link:
            link[canon(a, b)] = i
    tree = spanning_tree(Multigraph(len(comps), tuple(link)), root=where[0])
    for a, b in tree:
        mult[link[canon(a, b)]] = 2
    return TourMultigraph(mg, tuple(mult))


PROVIDERS = {"tree": tree_provider, "factor": factor_provider}


def default_tour_multigraph(mg: Multigraph, provider: str = "tree") -> TourMultigraph:
    if mg.n > 1 and len(connected_components(mg.n, mg.edges)) != 1:
        raise NotConnected("contracted multigraph is not connected")
    return PROVIDERS[provider](mg)


def uncontract_tour_multigraph(cc: ChordedContraction, t: TourMultigraph) -> tuple[TourMultigraph, list[int]]:
    """Lift a tour multigraph on the contracted graph back to the original.

    Returns the lifted multiplicities over the original edge list and the
    number of edges each gadget added (3 or 4).
    """
    g = cc.graph
    orig_edges = g.edge_list()
    index = {e: i for i, e in enumerate(orig_edges)}
    mult = [0] * len(orig_edges)
    for i, m in enumerate(t.mult):
        if m:
            mult[index[canon(*cc.origin[i])]] += m
    deltas = []
    for rec in cc.records:
        a, b = t.mult[rec.edge_at_v1], t.mult[rec.edge_at_v3]
        if (a + b) % 2:
            raise OddDegreeAtGadget(f"contracted node {rec.w} has odd degree {a + b}")
        if a + b == 0:
            raise OddDegreeAtGadget(f"contracted node {rec.w} is not visited")
        splice = rec.gadget.path_edges() if a % 2 else rec.gadget.cycle_edges()
        for e in splice:
            mult[index[e]] += 1
        deltas.append(len(splice))
    return TourMultigraph(Multigraph(g.n, tuple(orig_edges)), tuple(mult)), deltas


@dataclass
class Cubic3Result:
    n: int
    family: list
    b: int
    contracted_n: int
    provider: str
    contracted_edges: int
    lifted_edges: int
    deltas: list
    tour: Tour


def solve_cubic(g: Graph, provider: str = "tree") -> Cubic3Result:
    """Detect, contract, build a tour multigraph, lift it and shortcut."""
    try:
        family, b_nodes = find_chorded_4cycles(g)
    except IsK4:
        order = (0, 1, 2, 3)
        return Cubic3Result(4, [], 4, 4, provider, 0, 4, [], Tour(order, 4))
    cc = contract_chorded(g, family)
    t = default_tour_multigraph(cc.multigraph, provider)
    lifted, deltas = uncontract_tour_multigraph(cc, t)
    walk = eulerian_circuit(lifted.as_multigraph(), start=0)
    tour = shortcut(g, walk)
    return Cubic3Result(
        g.n, family, len(b_nodes), cc.multigraph.n, provider, t.size, lifted.size, deltas, tour
    )


# bound arithmetic --------------------------------------------------------

def _check(n, b) -> tuple[Fraction, Fraction]:
    n, b = Fraction(n), Fraction(b)
    if not 0 <= b <= n:
        raise ValueError("need 0 <= b <= n")
    return n, b


def bound_cls(n, b) -> Fraction:
    """``4/3 b + (4/3 - 1/8748)(n - b) + 2``; grows with ``b``."""
    n, b = _check(n, b)
    return FOUR_THIRDS * b + (FOUR_THIRDS - CLS_GAIN) * (n - b) + CLS_CONST


def bound_ms(n, b) -> Fraction:
    """``4n/3 - b/6 - 2/3``; shrinks with ``b``."""
    n, b = _check(n, b)
    return FOUR_THIRDS * n - MS_GAIN * b - MS_CONST


@dataclass(frozen=True)
class CombinedBound:
    n: Fraction
    b_star: Fraction
    coefficient: Fraction


def combined_bound(n) -> CombinedBound:
    """Crossing point of the two bounds with additive constants dropped.

    ``(n - b)/8748 = b/6`` gives ``b* = 6n/8754 = n/1459`` and per-node
    coefficient ``4/3 - 1/8754``.
    """
    n = Fraction(n)
    if n <= 0:
        raise ValueError("n must be positive")
    b_star = CLS_GAIN * n / (CLS_GAIN + MS_GAIN)
    coefficient = FOUR_THIRDS - MS_GAIN * b_star / n
    return CombinedBound(n, b_star, coefficient)
