"""2-factors: construction from a perfect matching, cycle decomposition and
the alternate-edge matchings used to seed the second factor."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvariantBreach, InvalidFactor, NotTwoRegular, OddCycle
from .graph import Bipartition, Edge, Graph, canon, validate_cubic_bipartite


@dataclass(frozen=True)
class Cycle:
    nodes: tuple

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def edges(self) -> list[Edge]:
        k = len(self.nodes)
        return [canon(self.nodes[i], self.nodes[(i + 1) % k]) for i in range(k)]

    @property
    def node_set(self) -> frozenset:
        return frozenset(self.nodes)


@dataclass(frozen=True)
class TwoFactor:
    n: int
    edges: frozenset
    cycles: tuple

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: int) -> "TwoFactor":
        es = frozenset(canon(u, v) for u, v in edges)
        return cls(n, es, tuple(cycle_decomposition(es, n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "TwoFactor":
        es = []
        for c in cycles:
            es.extend(Cycle(tuple(c)).edges)
        if len(set(es)) != len(es):
            raise InvalidFactor("cycles share an edge")
        return cls.from_edges(es, n)

    @property
    def components(self) -> int:
        return len(self.cycles)

    def cycle_index(self) -> list[int]:
        """Index of the cycle containing each node."""
        idx = [0] * self.n
        for i, c in enumerate(self.cycles):
            for v in c.nodes:
                idx[v] = i
        return idx

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def to_json(self, labels=None) -> dict:
        lab = (lambda v: v) if labels is None else (lambda v: labels[v])
        return {"cycles": [[lab(v) for v in c.nodes] for c in self.cycles]}


def check_in_graph(g: Graph, f: TwoFactor) -> None:
    if f.n != g.n:
        raise InvalidFactor(f"factor is on {f.n} nodes, graph has {g.n}")
    missing = [e for e in f.edges if e not in g.edges]
    if missing:
        raise InvalidFactor(f"factor uses non-edges {sorted(missing)[:3]}")


def cycle_decomposition(f: Iterable[Sequence[int]], n: int) -> list[Cycle]:
    """Split a 2-regular edge set into cycles.

    Cycles come sorted by their smallest node; each starts at that node and
    continues towards its smaller-id neighbour.
    """
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in f:
        nbrs[u].append(v)
        nbrs[v].append(u)
    for v in range(n):
        if len(nbrs[v]) != 2:
            raise NotTwoRegular(f"node {v} has degree {len(nbrs[v])} in the edge set")
        if nbrs[v][0] == nbrs[v][1]:
            raise NotTwoRegular(f"node {v} has a doubled edge")
    seen = [False] * n
    cycles = []
    for s in range(n):
        if seen[s]:
            continue
        order = [s]
        seen[s] = True
        prev, cur = s, min(nbrs[s])
        while cur != s:
            order.append(cur)
            seen[cur] = True
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(Cycle(tuple(order)))
    return cycles


def cycle_half_matching(c: Cycle) -> set[Edge]:
    """Every second edge of ``c``, starting with the edge from its first node."""
    k = len(c)
    if k % 2:
        raise OddCycle(f"cycle of length {k} has no perfect matching")
    return {canon(c.nodes[i], c.nodes[i + 1]) for i in range(0, k, 2)}


def perfect_matching(g: Graph, bp: Bipartition) -> set[Edge]:
    """Maximum bipartite matching by augmenting paths (Kuhn's algorithm).

    Regular bipartite graphs always have a perfect one, so coming up short
    means the input was never validated.
    """
    left = [v for v in range(g.n) if bp[v] == 0]
    match_of = [-1] * g.n

    def augment(u: int, visited: list[bool]) -> bool:
        # iterative DFS over alternating paths
        stack = [(u, iter(g.adj[u]))]
        path: list[tuple[int, int]] = []
        while stack:
            x, it = stack[-1]
            advanced = False
            for w in it:
                if visited[w]:
                    continue
                visited[w] = True
                path.append((x, w))
                if match_of[w] == -1:
                    # flip the alternating path
                    for a, b in path:
                        match_of[a] = b
                        match_of[b] = a
                    return True
                nxt = match_of[w]
                stack.append((nxt, iter(g.adj[nxt])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if path:
                    path.pop()
        return False

    for u in left:
        if not augment(u, [False] * g.n):
            raise InvariantBreach("cubic bipartite graph without a perfect matching")
    return {canon(u, match_of[u]) for u in left}


def initial_two_factor(g: Graph, matching: Optional[Iterable[Sequence[int]]] = None) -> TwoFactor:
    """Return ``E \\ M`` for a perfect matching ``M``.

    ``matching`` lets callers force a particular ``M`` (used to replay the
    published instance); otherwise one is computed.
    """
    bp = validate_cubic_bipartite(g)
    if matching is None:
        m = perfect_matching(g, bp)
    else:
        m = {canon(u, v) for u, v in matching}
        if not m <= g.edges:
            raise InvalidFactor("injected matching uses non-edges")
        covered = [0] * g.n
        for u, v in m:
            covered[u] += 1
            covered[v] += 1
        if any(c != 1 for c in covered):
            raise InvalidFactor("injected matching is not perfect")
    return TwoFactor.from_edges(g.edges - m, g.n)


def seed_second_factor(g: Graph, f1: TwoFactor) -> TwoFactor:
    """``(E \\ F1)`` plus the canonical half of every cycle of ``f1``."""
    edges = set(g.edges - f1.edges)
    for c in f1.cycles:
        edges |= cycle_half_matching(c)
    return TwoFactor.from_edges(edges, g.n)
