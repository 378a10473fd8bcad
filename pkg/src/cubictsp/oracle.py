"""Exhaustive ground truth for small instances.

Nothing here is clever on purpose: the solver is checked against plain
enumeration and a textbook Held-Karp dynamic program.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterator

import numpy as np

from .errors import NoTwoFactor, NotConnected, TooLarge
from .factor import TwoFactor
from .graph import Graph, bfs_distances, canon

MAX_FACTOR_NODES = 20
MAX_TSP_NODES = 16


@dataclass
class OracleReport:
    instance: str
    what: str
    value: Any
    witness: Any = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"instance": self.instance, "what": self.what, "value": self.value, "witness": self.witness}
        out.update(self.extra)
        return out


def enumerate_two_factors(g: Graph) -> Iterator[TwoFactor]:
    """Yield every 2-factor of ``g`` exactly once.

    Nodes are settled in id order; at each node we pick which of its
    edges to higher-numbered nodes complete its degree to 2.
    """
    if g.n > MAX_FACTOR_NODES:
        raise TooLarge(f"enumeration capped at {MAX_FACTOR_NODES} nodes, got {g.n}")
    n = g.n
    fwd = [[w for w in g.adj[v] if w > v] for v in range(n)]
    deg = [0] * n
    chosen: list = []

    def rec(v: int) -> Iterator[TwoFactor]:
        if v == n:
            yield TwoFactor.from_edges(chosen, n)
            return
        need = 2 - deg[v]
        if need < 0:
            return
        options = [w for w in fwd[v] if deg[w] < 2]
        for pick in combinations(options, need):
            for w in pick:
                deg[w] += 1
                chosen.append(canon(v, w))
            deg[v] += need
            yield from rec(v + 1)
            deg[v] -= need
            for w in pick:
                deg[w] -= 1
                chosen.pop()

    yield from rec(0)


def min_cycle_cover_components(g: Graph) -> tuple[int, TwoFactor]:
    best = None
    for f in enumerate_two_factors(g):
        if best is None or f.components < best.components:
            best = f
            if best.components == 1:
                break
    if best is None:
        raise NoTwoFactor("graph has no 2-factor")
    return best.components, best


def metric_closure(g: Graph) -> np.ndarray:
    d = np.array([bfs_distances(g, s) for s in range(g.n)], dtype=np.int64)
    if (d < 0).any():
        raise NotConnected("graph is not connected")
    return d


def exact_tsp(g: Graph) -> int:
    """Optimal closed-tour length in the shortest-path metric (Held-Karp)."""
    n = g.n
    if n > MAX_TSP_NODES:
        raise TooLarge(f"Held-Karp capped at {MAX_TSP_NODES} nodes, got {n}")
    if n == 1:
        return 0
    if n == 2:
        return 2 * int(metric_closure(g)[0, 1])
    d = metric_closure(g)
    # tours start at node 0; subsets range over nodes 1..n-1 (bit j-1 for node j)
    m = n - 1
    inf = np.iinfo(np.int64).max // 4
    dp = np.full((1 << m, m), inf, dtype=np.int64)
    for j in range(m):
        dp[1 << j, j] = d[0, j + 1]
    sub = d[1:, 1:]
    masks = np.arange(1 << m)
    popcount = np.array([bin(x).count("1") for x in range(1 << m)])
    for size in range(2, m + 1):
        layer = masks[popcount == size]
        for j in range(m):
            bit = 1 << j
            cur = layer[(layer & bit) != 0]
            prev = cur ^ bit
            # dp[prev, i] + d(i, j), minimised over i
            dp[cur, j] = (dp[prev] + sub[:, j][None, :]).min(axis=1)
    full = (1 << m) - 1
    return int((dp[full] + d[1:, 0]).min())


def is_potential_4cycle_exact(g: Graph, nodes) -> bool:
    """True iff some 2-factor of ``g`` has a cycle with node set exactly ``nodes``."""
    s = frozenset(nodes)
    if len(s) != 4:
        return False
    inner = [e for e in combinations(sorted(s), 2) if g.has_edge(*e)]
    if len(inner) < 4:
        return False
    for f in enumerate_two_factors(g):
        if any(c.node_set == s for c in f.cycles):
            return True
    return False
