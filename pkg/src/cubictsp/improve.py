"""Local improvement of a second 2-factor against a fixed first one.

Given a 2-factor ``F1`` of a cubic bipartite graph without contractible
4-cycles, ``F2`` starts as ``(E \\ F1)`` plus half of every ``F1``-cycle.
An ``F1``-cycle is *violated* when no ``F2``-cycle of size at least 10
shares four or more of its nodes.  Violated cycles are repaired one at a
time, lowest index first:

* a chordless cycle ``C`` is flipped, ``F2 <- F2 ^ E(C)``;
* a chorded cycle is pivoted around a chord ``{x, y}``:
  ``F2 <- (F2 ^ E(P1)) - {x, y}``, where ``P1`` is the ``x``-``y`` path along
  ``C`` that starts (and ends) with an edge of ``F1 - F2``.  Chords are tried
  smallest first and the first one that puts ``x`` and ``y`` on a cycle of
  size at least 10 is used.

A repaired cycle never becomes violated again, so at most ``K1`` moves are
made.  Rarely, no chord of a cycle works.  Such a cycle is recorded as
blocked and left alone.  On exit either factor has at most ``n/8`` cycles;
without blocked cycles this follows from ``K1/4 + 3 K2/4 <= n/8``, which is
checked, and with them the bound itself is checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import (
    ChordMissingFromF2,
    GraphTooSmall,
    InvariantBreach,
    IterationCapExceeded,
    PivotBlocked,
    PreconditionFailed,
)
from .factor import Cycle, TwoFactor, check_in_graph, cycle_decomposition, seed_second_factor
from .graph import Edge, Graph, canon, connected_components
from .reduce4 import find_contractible_4cycle

LONG = 10
MIN_NODES = 10


@dataclass
class Move:
    cycle_index: int
    kind: str
    chord: Optional[Edge]
    components_before: int
    components_after: int

    def to_json(self, labels=None) -> dict:
        chord = None
        if self.chord is not None:
            chord = [v if labels is None else labels[v] for v in self.chord]
        return {
            "cycle_index": self.cycle_index,
            "kind": self.kind,
            "chord": chord,
            "components_before": self.components_before,
            "components_after": self.components_after,
        }


@dataclass
class ImproveResult:
    f1: TwoFactor
    f2: TwoFactor
    moves: list = field(default_factory=list)
    blocked: tuple = ()

    @property
    def k1(self) -> int:
        return self.f1.components

    @property
    def k2(self) -> int:
        return self.f2.components

    @property
    def best(self) -> TwoFactor:
        return best_factor(self.f1, self.f2)


def is_violated(c: Cycle, f2: TwoFactor) -> bool:
    inside = c.node_set
    for d in f2.cycles:
        if len(d) >= LONG and sum(v in inside for v in d.nodes) >= 4:
            return False
    return True


def violation_status(f1_cycles, f2: TwoFactor) -> list[bool]:
    """``is_violated`` for every cycle at once, in O(n)."""
    where = f2.cycle_index()
    sizes = f2.sizes()
    out = []
    for c in f1_cycles:
        hits: dict[int, int] = {}
        for v in c.nodes:
            j = where[v]
            if sizes[j] >= LONG:
                hits[j] = hits.get(j, 0) + 1
        out.append(not any(h >= 4 for h in hits.values()))
    return out


def best_factor(f1: TwoFactor, f2: TwoFactor) -> TwoFactor:
    return f2 if f2.components < f1.components else f1


def chords(g: Graph, f1_edges, c: Cycle) -> list[Edge]:
    inside = c.node_set
    found = set()
    for v in c.nodes:
        for w in g.adj[v]:
            if w in inside and canon(v, w) not in f1_edges:
                found.add(canon(v, w))
    return sorted(found)


def _alternates(flags: list[bool], closed: bool) -> bool:
    k = len(flags)
    pairs = k if closed else k - 1
    return all(flags[i] != flags[(i + 1) % k] for i in range(pairs))


class ImproveState:
    """Mutable working state of one run: the frozen ``F1`` and the evolving ``F2``."""

    def __init__(self, g: Graph, f1: TwoFactor, f2: Optional[TwoFactor] = None):
        check_in_graph(g, f1)
        self.g = g
        self.f1 = f1
        self.f1_cycles = list(f1.cycles)
        if f2 is None:
            f2 = seed_second_factor(g, f1)
        # An injected F2 need not contain all of E - F1: a factor returned by
        # an earlier run has lost the chords it pivoted on.
        check_in_graph(g, f2)
        self.f2 = set(f2.edges)
        self.processed: set[int] = set()
        self._snapshot: Optional[TwoFactor] = f2

    def factor2(self) -> TwoFactor:
        if self._snapshot is None:
            self._snapshot = TwoFactor(self.g.n, frozenset(self.f2),
                                       tuple(cycle_decomposition(self.f2, self.g.n)))
        return self._snapshot

    def _set_f2(self, edges: set) -> None:
        self.f2 = edges
        self._snapshot = None
        self.factor2()  # raises if the update broke 2-regularity

    # alternation tests -------------------------------------------------

    def f1_cycle_alternating(self, c: Cycle) -> bool:
        return _alternates([e in self.f2 for e in c.edges], closed=True)

    def f2_cycle_alternating(self, d: Cycle) -> bool:
        return _alternates([e in self.f1.edges for e in d.edges], closed=True)

    # runtime invariants ------------------------------------------------

    def check_properties(self) -> None:
        """Both structural properties that every step must preserve:
        violated ``F1``-cycles alternate, and non-alternating ``F2``-cycles
        are long."""
        f2 = self.factor2()
        status = violation_status(self.f1_cycles, f2)
        for i, c in enumerate(self.f1_cycles):
            if status[i] and not self.f1_cycle_alternating(c):
                raise InvariantBreach(f"violated cycle {i} is not alternating")
        for d in f2.cycles:
            if len(d) < LONG and not self.f2_cycle_alternating(d):
                raise InvariantBreach(f"short non-alternating cycle of size {len(d)} in F2")

    def check_residual(self, c: Cycle) -> None:
        """``F2 - E(C)`` must split into even cycles and odd paths, and a
        path that does not alternate must have length at least 9."""
        n = self.g.n
        rest = self.f2 - set(c.edges)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in rest:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for comp in connected_components(n, rest):
            ends = [v for v in comp if len(nbrs[v]) < 2]
            if not ends:
                if len(comp) % 2:
                    raise InvariantBreach("odd cycle left after removing E(C)")
                continue
            if len(ends) != 2:
                raise InvariantBreach("residual component is not a path")
            walk = [ends[0]]
            prev = -1
            while len(walk) == 1 or len(nbrs[walk[-1]]) == 2:
                cur = walk[-1]
                nxt = [w for w in nbrs[cur] if w != prev][0]
                prev = cur
                walk.append(nxt)
            length = len(walk) - 1
            if length % 2 == 0:
                raise InvariantBreach(f"residual path of even length {length}")
            flags = [canon(walk[i], walk[i + 1]) in self.f1.edges for i in range(length)]
            if not _alternates(flags, closed=False) and length < 9:
                raise InvariantBreach(f"short non-alternating residual path ({length})")

    # moves -------------------------------------------------------------

    def chordless_flip(self, i: int) -> Move:
        c = self.f1_cycles[i]
        before = self.factor2()
        if not is_violated(c, before):
            raise PreconditionFailed(f"cycle {i} is not violated")
        if chords(self.g, self.f1.edges, c):
            raise PreconditionFailed(f"cycle {i} has a chord")
        self._set_f2(self.f2 ^ set(c.edges))
        after = self.factor2()
        if after.components >= before.components:
            raise InvariantBreach(
                f"flip of cycle {i} did not reduce components "
                f"({before.components} -> {after.components})"
            )
        self.processed.add(i)
        return Move(i, "flip", None, before.components, after.components)

    def chord_pivot(self, i: int) -> Move:
        """Pivot around the smallest chord that leaves ``x`` and ``y`` on a
        common cycle of size at least 10.

        A chord whose pivot closes a short cycle is skipped.  That happens
        when the ``x``-``y`` path of length 3 plus the chord is a 4-cycle that
        some outside node touches twice, so it was never contracted.  If every
        chord fails, ``F2`` is left untouched and :class:`PivotBlocked` is
        raised.
        """
        c = self.f1_cycles[i]
        before = self.factor2()
        if not is_violated(c, before):
            raise PreconditionFailed(f"cycle {i} is not violated")
        cs = chords(self.g, self.f1.edges, c)
        if not cs:
            raise PreconditionFailed(f"cycle {i} is chordless")
        saved = self.f2
        for x, y in cs:
            self.f2, self._snapshot = saved, before
            if (x, y) not in saved:
                raise ChordMissingFromF2(f"chord {(x, y)} of cycle {i} is not in F2")
            p1 = self._pivot_path(c, x, y)
            self._set_f2((saved ^ set(p1)) - {(x, y)})
            after = self.factor2()
            d = after.cycles[after.cycle_index()[x]]
            if y in d.node_set and len(d) >= LONG:
                self.processed.add(i)
                return Move(i, "pivot", (x, y), before.components, after.components)
        self.f2 = saved
        self._snapshot = before
        raise PivotBlocked(f"no chord of cycle {i} pivots onto a long cycle", cycle_index=i)

    def _pivot_path(self, c: Cycle, x: int, y: int) -> list[Edge]:
        k = len(c)
        ix = c.nodes.index(x)
        for step in (1, -1):
            first = canon(x, c.nodes[(ix + step) % k])
            if first in self.f2:
                continue
            path = []
            j = ix
            while c.nodes[j] != y:
                nxt = (j + step) % k
                path.append(canon(c.nodes[j], c.nodes[nxt]))
                j = nxt
            if path[-1] in self.f2:
                raise InvariantBreach("pivot path does not end with an edge of F1 - F2")
            return path
        raise InvariantBreach(f"both cycle edges at {x} are in F2; cycle not alternating")


def run_local_improvement(
    g: Graph,
    f1: TwoFactor,
    f2: Optional[TwoFactor] = None,
    debug: bool = False,
    trace: Optional[Callable[[Move], None]] = None,
) -> ImproveResult:
    """Repair violated cycles of ``f1`` until none is left.

    Parameters
    ----------
    g : Graph
        Cubic bipartite host with at least 10 nodes and no contractible
        4-cycle.
    f1 : TwoFactor
        The fixed first factor.
    f2 : TwoFactor, optional
        Starting second factor; must contain ``E - F1``.  Defaults to the
        canonical seed.
    debug : bool
        Check the alternation properties after every step and the residual
        structure before every move.
    trace : callable, optional
        Called with each :class:`Move` as it is made.
    """
    if g.n < MIN_NODES:
        raise GraphTooSmall(f"local improvement needs at least {MIN_NODES} nodes, got {g.n}")
    if find_contractible_4cycle(g) is not None:
        raise PreconditionFailed("graph still has a contractible 4-cycle")
    state = ImproveState(g, f1, f2)
    if debug:
        state.check_properties()

    cap = len(state.f1_cycles) + 1
    moves: list[Move] = []
    blocked: list[int] = []
    good: set[int] = set()
    for _ in range(cap):
        status = violation_status(state.f1_cycles, state.factor2())
        now_good = {i for i, v in enumerate(status) if not v}
        if not good <= now_good:
            raise InvariantBreach(f"cycles {sorted(good - now_good)} became violated again")
        good = now_good
        todo = [i for i, v in enumerate(status) if v and i not in blocked]
        if not todo:
            break
        i = todo[0]
        c = state.f1_cycles[i]
        if debug:
            state.check_residual(c)
        try:
            if chords(g, f1.edges, c):
                move = state.chord_pivot(i)
            else:
                move = state.chordless_flip(i)
        except PivotBlocked:
            blocked.append(i)
            k = state.factor2().components
            move = Move(i, "blocked", None, k, k)
        moves.append(move)
        if trace is not None:
            trace(move)
        if debug:
            state.check_properties()
    else:
        raise IterationCapExceeded(f"no fixpoint after {cap} iterations")

    result = ImproveResult(f1, state.factor2(), moves, tuple(blocked))
    limit = Fraction(g.n, 8)
    if blocked:
        if min(result.k1, result.k2) > limit:
            raise InvariantBreach(
                f"cycles {blocked} blocked and min(K1, K2) = {min(result.k1, result.k2)} exceeds n/8"
            )
    else:
        lhs = Fraction(result.k1, 4) + Fraction(3 * result.k2, 4)
        if lhs > limit:
            raise InvariantBreach(f"K1/4 + 3K2/4 = {lhs} exceeds n/8 = {limit}")
    return result
