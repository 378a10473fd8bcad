"""Core graph types and the classic subroutines everything else leans on."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    NotBipartite,
    NotConnected,
    NotCubic,
    NotSimple,
    OddDegree,
    ParseError,
    Unreachable,
)

Edge = tuple[int, int]


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    ``labels`` optionally maps internal ids to the names used by an external
    format (the appendix instance numbers its nodes from 1).
    """

    n: int
    edges: frozenset
    adj: tuple
    labels: Optional[tuple] = None
    _dist: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        seen: set[Edge] = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise NotSimple(f"self-loop at {u}")
            e = canon(u, v)
            if e in seen:
                raise NotSimple(f"parallel edge {e}")
            seen.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        if labels is not None and len(labels) != n:
            raise ParseError("labels must name every node")
        return cls(
            n,
            frozenset(seen),
            tuple(tuple(sorted(x)) for x in nbrs),
            tuple(labels) if labels is not None else None,
        )

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return canon(u, v) in self.edges

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def label(self, v: int):
        return v if self.labels is None else self.labels[v]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; ``edges`` lists one entry per edge copy."""

    n: int
    edges: tuple

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def multiplicity(self) -> dict:
        out: dict = {}
        for u, v in self.edges:
            e = canon(u, v)
            out[e] = out.get(e, 0) + 1
        return out

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Bipartition:
    side: tuple

    def __getitem__(self, v: int) -> int:
        return self.side[v]


def two_coloring(g: Graph) -> Bipartition:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    raise NotBipartite(f"odd cycle through edge ({u}, {w})")
    return Bipartition(tuple(side))


def validate_cubic(g: Graph) -> None:
    for v in range(g.n):
        if g.degree(v) != 3:
            raise NotCubic(f"node {g.label(v)} has degree {g.degree(v)}")


def validate_cubic_bipartite(g: Graph) -> Bipartition:
    """Check that ``g`` is connected, cubic and bipartite; return its 2-coloring.

    Simplicity is enforced when a :class:`Graph` is built.
    """
    validate_cubic(g)
    bp = two_coloring(g)
    if not is_connected(g.n, g.edges):
        raise NotConnected("graph is not connected")
    return bp


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source`` (-1 where unreachable), cached per source."""
    cached = g._dist.get(source)
    if cached is not None:
        return cached
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    g._dist[source] = dist
    return dist


def bfs_distance(g: Graph, u: int, v: int) -> int:
    d = bfs_distances(g, u)[v]
    if d < 0:
        raise Unreachable(f"no path between {u} and {v}")
    return d


def connected_components(n: int, edges: Iterable[Sequence[int]]) -> list[list[int]]:
    """Components as sorted node lists, ordered by smallest member."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(n: int, edges: Iterable[Sequence[int]]) -> bool:
    return n <= 1 or len(connected_components(n, edges)) == 1


def spanning_tree(mg: Multigraph, root: int = 0) -> list[Edge]:
    """BFS spanning tree of ``mg`` from ``root``; edges as (parent, child)."""
    if mg.n == 0:
        return []
    nbrs: list[set[int]] = [set() for _ in range(mg.n)]
    for u, v in mg.edges:
        if u != v:
            nbrs[u].add(v)
            nbrs[v].add(u)
    seen = [False] * mg.n
    seen[root] = True
    tree: list[Edge] = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(nbrs[u]):
            if not seen[w]:
                seen[w] = True
                tree.append((u, w))
                queue.append(w)
    if len(tree) != mg.n - 1:
        raise NotConnected("multigraph is not connected")
    return tree


def eulerian_circuit(mg: Multigraph, start: int = 0) -> list[int]:
    """Hierholzer's algorithm.

    Returns the closed walk as a node sequence beginning and ending at
    ``start``; it has ``len(mg.edges) + 1`` entries.
    """
    if any(d % 2 for d in mg.degrees()):
        raise OddDegree("multigraph has a node of odd degree")
    if not is_connected(mg.n, mg.edges):
        raise NotConnected("multigraph is not connected")
    incident: list[list[tuple[int, int]]] = [[] for _ in range(mg.n)]
    for idx, (u, v) in enumerate(mg.edges):
        incident[u].append((v, idx))
        incident[v].append((u, idx))
    for lst in incident:
        # popped from the end, so reverse order gives smallest-neighbor-first walks
        lst.sort(reverse=True)
    used = [False] * len(mg.edges)
    stack = [start]
    walk: list[int] = []
    while stack:
        u = stack[-1]
        lst = incident[u]
        while lst and used[lst[-1][1]]:
            lst.pop()
        if lst:
            w, idx = lst.pop()
            used[idx] = True
            stack.append(w)
        else:
            walk.append(stack.pop())
    walk.reverse()
    return walk


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty edge list")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header line {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"bad edge line {ln!r}") from exc
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    rows = [f"{g.n} {len(g.edges)}"] + [f"{u} {v}" for u, v in g.edge_list()]
    return "\n".join(rows) + "\n"
