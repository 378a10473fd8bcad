"""Contraction of 4-cycles that some 2-factor could use as a whole cycle.

A 4-cycle ``S = (v1, v2, v3, v4)`` is contracted by merging ``v1, v3`` into
one node and ``v2, v4`` into another, keeping a single edge between them.
The graph stays simple, cubic and bipartite, loses two nodes, and any
2-factor of the smaller graph can be lifted back without adding cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import InvalidFactor, ParallelEdgeWouldForm
from .factor import TwoFactor, check_in_graph
from .graph import Edge, Graph, canon, connected_components


@dataclass(frozen=True)
class ContractionRecord4:
    s: tuple  # (v1, v2, v3, v4) in cycle order, ids of the parent graph
    ext: tuple  # ext[i] = the neighbour of s[i] outside S
    v_odd: int  # ids in the contracted graph
    v_even: int
    old_of_new: tuple  # parent id of every contracted-graph node (v1 for v_odd, v2 for v_even)
    parent_n: int

    def to_json(self) -> dict:
        return {
            "s": list(self.s),
            "ext": list(self.ext),
            "v_odd": self.v_odd,
            "v_even": self.v_even,
            "old_of_new": list(self.old_of_new),
            "parent_n": self.parent_n,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ContractionRecord4":
        return cls(
            tuple(d["s"]),
            tuple(d["ext"]),
            d["v_odd"],
            d["v_even"],
            tuple(d["old_of_new"]),
            d["parent_n"],
        )


def four_cycles(g: Graph) -> list[tuple]:
    """Node sets of all 4-cycles, as sorted tuples in ascending order."""
    found = set()
    for a in range(g.n):
        for b, d in combinations(g.adj[a], 2):
            for c in set(g.adj[b]) & set(g.adj[d]):
                if c != a:
                    found.add(tuple(sorted((a, b, c, d))))
    return sorted(found)


def label_cycle(g: Graph, nodes) -> tuple:
    """Order a 4-node set as a cycle: smallest node, its smaller cycle
    neighbour, the opposite node, the last one."""
    v1 = min(nodes)
    inside = [w for w in g.adj[v1] if w in nodes]
    v2, v4 = sorted(inside)[:2]
    (v3,) = [w for w in nodes if w not in (v1, v2, v4)]
    return (v1, v2, v3, v4)


def is_contractible(g: Graph, nodes) -> bool:
    """True iff ``nodes`` span a 4-cycle and no outside node has two
    neighbours among them."""
    s = set(nodes)
    if len(s) != 4:
        return False
    inner = sum(1 for u, v in combinations(sorted(s), 2) if g.has_edge(u, v))
    if inner != 4 or any(sum(w in s for w in g.adj[v]) != 2 for v in s):
        return False
    hits: dict[int, int] = {}
    for v in s:
        for w in g.adj[v]:
            if w not in s:
                hits[w] = hits.get(w, 0) + 1
                if hits[w] > 1:
                    return False
    return True


def find_contractible_4cycle(g: Graph) -> Optional[tuple]:
    for nodes in four_cycles(g):
        if is_contractible(g, nodes):
            return label_cycle(g, set(nodes))
    return None


def contract_4cycle(g: Graph, s: tuple) -> tuple[Graph, ContractionRecord4]:
    v1, v2, v3, v4 = s
    ring = set(s)
    if not is_contractible(g, ring):
        raise ParallelEdgeWouldForm(f"{s} is not a contractible 4-cycle")
    ext = []
    for v in s:
        (w,) = [w for w in g.adj[v] if w not in ring]
        ext.append(w)
    if ext[0] == ext[2] or ext[1] == ext[3]:
        raise ParallelEdgeWouldForm(f"contracting {s} would duplicate an edge")

    old_of_new = [v for v in range(g.n) if v not in (v3, v4)]
    new_of_old = {v: i for i, v in enumerate(old_of_new)}
    new_of_old[v3] = new_of_old[v1]
    new_of_old[v4] = new_of_old[v2]
    v_odd, v_even = new_of_old[v1], new_of_old[v2]

    edges: set[Edge] = set()
    for u, v in g.edges:
        if u in ring and v in ring:
            continue
        e = canon(new_of_old[u], new_of_old[v])
        if e in edges:
            raise ParallelEdgeWouldForm(f"contracting {s} would duplicate {e}")
        edges.add(e)
    edges.add(canon(v_odd, v_even))
    h = Graph.from_edges(len(old_of_new), edges)
    rec = ContractionRecord4(tuple(s), tuple(ext), v_odd, v_even, tuple(old_of_new), g.n)
    return h, rec


def reduce_all(g: Graph) -> tuple[Graph, list[ContractionRecord4]]:
    """Contract the smallest contractible 4-cycle until none is left."""
    stack: list[ContractionRecord4] = []
    cur = g
    while True:
        s = find_contractible_4cycle(cur)
        if s is None:
            return cur, stack
        cur, rec = contract_4cycle(cur, s)
        stack.append(rec)


def _component_count(n: int, edges) -> int:
    return len(connected_components(n, edges))


def uncontract_two_factor(rec: ContractionRecord4, f: TwoFactor, h: Optional[Graph] = None) -> TwoFactor:
    """Lift a 2-factor of the contracted graph back to the parent graph.

    The result never has more cycles than ``f``.  Passing the contracted
    graph ``h`` additionally checks that ``f`` only uses its edges.
    """
    if h is not None:
        check_in_graph(h, f)
    if f.n != len(rec.old_of_new):
        raise InvalidFactor("factor does not live on the contracted graph")
    v1, v2, v3, v4 = rec.s
    pos = {v: i for i, v in enumerate(rec.s)}
    # which s-node owns the edge towards each external neighbour
    owner = {}
    for i, w in enumerate(rec.ext):
        owner[(i % 2, w)] = rec.s[i]

    base: list[Edge] = []
    ends: list[int] = []
    hub = canon(rec.v_odd, rec.v_even)
    for u, v in f.edges:
        if (u, v) == hub:
            continue
        ou, ov = rec.old_of_new[u], rec.old_of_new[v]
        if u in (rec.v_odd, rec.v_even):
            u, v, ou, ov = v, u, ov, ou
        if v == rec.v_odd:
            key = (0, ou)
        elif v == rec.v_even:
            key = (1, ou)
        else:
            base.append(canon(ou, ov))
            continue
        if key not in owner:
            raise InvalidFactor(f"edge to contracted node from non-neighbour {ou}")
        ends.append(owner[key])
        base.append(canon(ou, owner[key]))

    n = rec.parent_n
    if hub in f.edges:
        if len(ends) != 2:
            raise InvalidFactor("contracted nodes lack their second factor edge")
        a = next(x for x in ends if pos[x] % 2 == 0)
        b = next(x for x in ends if pos[x] % 2 == 1)
        ia, ib = pos[a], pos[b]
        mid1 = rec.s[(ib + 2) % 4]  # S-neighbour of a other than b
        mid2 = rec.s[(ia + 2) % 4]  # opposite of a, adjacent to b
        path = [canon(a, mid1), canon(mid1, mid2), canon(mid2, b)]
        return TwoFactor.from_edges(base + path, n)

    if len(ends) != 4:
        raise InvalidFactor("contracted nodes must keep all four outer edges")
    options = (
        [canon(v1, v2), canon(v3, v4)],
        [canon(v2, v3), canon(v1, v4)],
    )
    best = min(options, key=lambda extra: _component_count(n, base + extra))
    return TwoFactor.from_edges(base + best, n)


def uncontract_all(stack: list[ContractionRecord4], f: TwoFactor) -> TwoFactor:
    for rec in reversed(stack):
        f = uncontract_two_factor(rec, f)
    return f
