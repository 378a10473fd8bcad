"""Named fixtures and seeded random instances.

Randomness comes from numpy's PCG64 bit generator seeded with a 64-bit
integer, so a seed names the same instance on every platform.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import RetriesExhausted, UnknownFixture
from .graph import Graph, canon, is_connected

RNG_NAME = "numpy.PCG64/v1"
MAX_RETRIES = 10_000


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFF_FFFF_FFFF_FFFF))


@dataclass
class Fixture:
    name: str
    graph: Graph
    known: dict = field(default_factory=dict)
    bipartite: bool = True


# The 48-node instance on which the n/8 analysis is tight.  Nodes are
# numbered 1..48.  In the second factor a comma joins nodes by an edge that
# is also in the first factor and a semicolon by one that is not; in the
# Hamilton cycle a comma marks a first-factor edge and a semicolon any
# other graph edge.
APPENDIX_F1 = [
    list(range(1, 7)),
    list(range(7, 13)),
    list(range(13, 19)),
    list(range(19, 25)),
    list(range(25, 35)),
    list(range(35, 49)),
]
APPENDIX_F2 = [
    "6,1;30,31;42,43;28,29;40,41;",
    "48,35;10,11;4,5;8,9;2,3;",
    "34,25;16,17;22,23;14,15;20,21;",
    "18,13;38,39;44,45;",
    "24,19;26,27;32,33;",
    "12,7;36,37;46,47;",
]
APPENDIX_HAMILTON = (
    "1;30,29;40,39,38;13,14,15,16;25,26;19,20,21;34,33;24,23,22;17,18;45,"
    "44,43;28,27;32,31;42,41;6,5;8,7,12,11;4,3;48,47,46;37,36,35;10,9;2,1"
)


def parse_marked_cycle(text: str) -> list[tuple[int, str]]:
    """``"a,b;c,"`` -> ``[(a, ","), (b, ";"), (c, ",")]``; the mark after a
    node describes the edge to the next node (cyclically)."""
    return [(int(a), s) for a, s in re.findall(r"(\d+)\s*([,;])", text)]


def parse_marked_walk(text: str) -> tuple[list[int], list[str]]:
    """Open listing ``"a;b,c"`` -> nodes and the marks between them."""
    tokens = re.findall(r"\d+|[,;]", text)
    nodes = [int(t) for t in tokens if t.isdigit()]
    marks = [t for t in tokens if not t.isdigit()]
    return nodes, marks


def _appendix() -> Fixture:
    f1_edges = set()
    for c in APPENDIX_F1:
        for i in range(len(c)):
            f1_edges.add(canon(c[i], c[(i + 1) % len(c)]))
    outside = set()
    f2_cycles = []
    for text in APPENDIX_F2:
        marked = parse_marked_cycle(text)
        nodes = [v for v, _ in marked]
        for i, (v, mark) in enumerate(marked):
            e = canon(v, nodes[(i + 1) % len(nodes)])
            if (mark == ",") != (e in f1_edges):
                raise ValueError(f"appendix mark disagrees with F1 at {e}")
            if mark == ";":
                outside.add(e)
        f2_cycles.append(nodes)
    edges = [(u - 1, v - 1) for u, v in sorted(f1_edges | outside)]
    g = Graph.from_edges(48, edges, labels=range(1, 49))
    ham_nodes, ham_marks = parse_marked_walk(APPENDIX_HAMILTON)
    known = {
        "f1_cycles": [[v - 1 for v in c] for c in APPENDIX_F1],
        "f2_cycles": [[v - 1 for v in c] for c in f2_cycles],
        "matching": [(u - 1, v - 1) for u, v in sorted(outside)],
        "hamilton": [v - 1 for v in ham_nodes],
        "hamilton_marks": ham_marks,
        "f1_sizes": [len(c) for c in APPENDIX_F1],
        "f2_sizes": [len(c) for c in f2_cycles],
    }
    return Fixture("appendix48", g, known)


def _k33() -> Fixture:
    g = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
    return Fixture("k33", g)


def _q3() -> Fixture:
    edges = [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)]
    return Fixture("q3", Graph.from_edges(8, edges))


def _heawood() -> Fixture:
    edges = {canon(i, (i + 1) % 14) for i in range(14)}
    edges |= {canon(i, (i + 5) % 14) for i in range(0, 14, 2)}
    return Fixture("heawood", Graph.from_edges(14, sorted(edges)))


def _diamond_pair() -> Fixture:
    # diamond a = 0..3, diamond b = 4..7; chords 1-3 and 5-7
    edges = []
    for base in (0, 4):
        a1, a2, a3, a4 = range(base, base + 4)
        edges += [(a1, a2), (a2, a3), (a3, a4), (a4, a1), (a2, a4)]
    edges += [(0, 4), (2, 6)]
    return Fixture("diamond-pair", Graph.from_edges(8, edges), bipartite=False)


def _petersen() -> Fixture:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Fixture("petersen", Graph.from_edges(10, edges), bipartite=False)


def _k4() -> Fixture:
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    return Fixture("k4", Graph.from_edges(4, edges), bipartite=False)


FIXTURES = {
    "appendix48": _appendix,
    "k33": _k33,
    "q3": _q3,
    "heawood": _heawood,
    "diamond-pair": _diamond_pair,
    "petersen": _petersen,
    "k4": _k4,
}


def fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


def random_cubic_bipartite(half_n: int, seed: int) -> Graph:
    """Union of three uniform perfect matchings between two sides of size
    ``half_n``, resampled until simple and connected."""
    if half_n < 3:
        raise ValueError("half_n must be at least 3")
    rng = make_rng(seed)
    for _ in range(MAX_RETRIES):
        perms = [rng.permutation(half_n) for _ in range(3)]
        edges = {canon(i, half_n + int(p[i])) for p in perms for i in range(half_n)}
        if len(edges) == 3 * half_n and is_connected(2 * half_n, edges):
            return Graph.from_edges(2 * half_n, sorted(edges))
    raise RetriesExhausted(f"no simple connected sample after {MAX_RETRIES} tries")


def random_cubic(n: int, seed: int, rng=None) -> Graph:
    """Simple, 2-connected cubic graph from the configuration model."""
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    rng = make_rng(seed) if rng is None else rng
    for _ in range(MAX_RETRIES):
        stubs = rng.permutation(np.repeat(np.arange(n), 3))
        pairs = stubs.reshape(-1, 2)
        edges = {canon(int(a), int(b)) for a, b in pairs}
        if len(edges) != len(pairs) or any(a == b for a, b in edges):
            continue
        h = nx.Graph(list(edges))
        if nx.is_connected(h) and not nx.has_bridges(h):
            return Graph.from_edges(n, sorted(edges))
    raise RetriesExhausted(f"no simple bridgeless sample after {MAX_RETRIES} tries")


def random_cubic_with_diamonds(base_n: int, k: int, seed: int, within_factor: bool = False) -> Graph:
    """Random bridgeless cubic graph with ``k`` of its edges each replaced by
    a path through a chorded 4-cycle; node ids are shuffled afterwards.

    With ``within_factor`` the replaced edges are drawn from one 2-factor of
    the base graph (the complement of a maximum matching), so the graph
    obtained by contracting the gadgets again has a 2-factor.
    """
    rng = make_rng(seed)
    base = random_cubic(base_n, seed, rng=rng)
    base_edges = base.edge_list()
    pool = list(range(len(base_edges)))
    if within_factor:
        matching = nx.max_weight_matching(nx.Graph(base_edges), maxcardinality=True)
        matched = {canon(u, v) for u, v in matching}
        pool = [i for i, e in enumerate(base_edges) if e not in matched]
    if k > len(pool):
        raise ValueError("more diamonds than eligible edges")
    picked = set(pool[int(i)] for i in rng.choice(len(pool), size=k, replace=False))
    edges = []
    nxt = base_n
    for idx, (a, c) in enumerate(base_edges):
        if idx not in picked:
            edges.append((a, c))
            continue
        v1, v2, v3, v4 = range(nxt, nxt + 4)
        nxt += 4
        edges += [(a, v1), (v3, c), (v1, v2), (v2, v3), (v3, v4), (v4, v1), (v2, v4)]
    perm = rng.permutation(nxt)
    return Graph.from_edges(nxt, sorted(canon(int(perm[u]), int(perm[v])) for u, v in edges))
