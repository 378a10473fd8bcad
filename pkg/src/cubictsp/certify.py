"""Exact-rational certificates for the ``n/8`` cycle bound.

Every node gets a weight ``alpha(v)`` so that each ``F2``-cycle sums to 1.
A node on an ``F2``-cycle of size ``k != 10`` gets ``1/k``.  On a 10-cycle
eight nodes get ``1/12`` and two get ``1/6``, with the ``1/12`` slots placed
so that every ``F1``-cycle meeting that 10-cycle in four or more nodes has
four of them at ``1/12``.  Then each ``F1``-cycle ``C`` satisfies
``sum alpha <= |C|/6 - 1/3``, and summing gives ``K1/4 + 3 K2/4 <= n/8``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CertificateInvalid, TooManyIntersectors, ViolatedCycleExists
from .factor import TwoFactor
from .improve import violation_status

TWELFTH = Fraction(1, 12)
SIXTH = Fraction(1, 6)
MIX = Fraction(1, 4)


@dataclass(frozen=True)
class AlphaCertificate:
    n: int
    k1: int
    k2: int
    alpha: tuple  # alpha[v] as Fraction
    f1_cycles: tuple  # node tuples
    f2_cycles: tuple

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k1": self.k1,
            "k2": self.k2,
            "alpha": [f"{a.numerator}/{a.denominator}" for a in self.alpha],
            "f1_cycles": [list(c) for c in self.f1_cycles],
            "f2_cycles": [list(c) for c in self.f2_cycles],
        }

    @classmethod
    def from_json(cls, d: dict) -> "AlphaCertificate":
        return cls(
            d["n"],
            d["k1"],
            d["k2"],
            tuple(Fraction(s) for s in d["alpha"]),
            tuple(tuple(c) for c in d["f1_cycles"]),
            tuple(tuple(c) for c in d["f2_cycles"]),
        )


@dataclass
class CertificateReport:
    ok: bool
    lhs: Fraction  # K1/4 + 3 K2/4
    rhs: Fraction  # n/8
    tight: bool
    slack: list = field(default_factory=list)  # per F1-cycle: bound - sum alpha

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "tight": self.tight,
            "slack": [str(s) for s in self.slack],
        }


def build_alpha_certificate(f1: TwoFactor, f2: TwoFactor, n: int) -> AlphaCertificate:
    if any(violation_status(f1.cycles, f2)):
        raise ViolatedCycleExists("some F1-cycle has no long F2-cycle through 4 of its nodes")
    f1_of = f1.cycle_index()
    alpha: list = [None] * n
    for d in f2.cycles:
        size = len(d)
        if size != 10:
            for v in d.nodes:
                alpha[v] = Fraction(1, size)
            continue
        groups: dict[int, list[int]] = {}
        for v in d.nodes:
            groups.setdefault(f1_of[v], []).append(v)
        heavy = sorted(i for i, vs in groups.items() if len(vs) >= 4)
        if len(heavy) > 2:
            raise TooManyIntersectors(f"{len(heavy)} F1-cycles meet a 10-cycle in 4+ nodes")
        low: set[int] = set()
        for i in heavy:
            low.update(sorted(groups[i])[:4])
        for v in sorted(d.nodes):
            if len(low) == 8:
                break
            low.add(v)
        for v in d.nodes:
            alpha[v] = TWELFTH if v in low else SIXTH
    return AlphaCertificate(
        n,
        f1.components,
        f2.components,
        tuple(alpha),
        tuple(c.nodes for c in f1.cycles),
        tuple(d.nodes for d in f2.cycles),
    )


def check_certificate(cert: AlphaCertificate, f1_cycles=None) -> CertificateReport:
    """Verify a certificate with exact arithmetic; raise on the first failure.

    ``f1_cycles`` defaults to the cycles stored in the certificate.
    """
    if f1_cycles is None:
        f1_cycles = cert.f1_cycles
    else:
        f1_cycles = [tuple(getattr(c, "nodes", c)) for c in f1_cycles]
    n = cert.n
    if len(cert.alpha) != n:
        raise CertificateInvalid("alpha does not cover every node")
    for name, cycles in (("F1", f1_cycles), ("F2", cert.f2_cycles)):
        seen = sorted(v for c in cycles for v in c)
        if seen != list(range(n)):
            raise CertificateInvalid(f"{name} cycles do not partition the nodes")
    if len(f1_cycles) != cert.k1 or len(cert.f2_cycles) != cert.k2:
        raise CertificateInvalid("component counts disagree with the cycle lists")

    for d in cert.f2_cycles:
        allowed = {Fraction(1, len(d))}
        if len(d) == 10:
            allowed = {TWELFTH, SIXTH}
        for v in d:
            a = cert.alpha[v]
            if a not in allowed:
                raise CertificateInvalid(f"alpha({v}) = {a} not allowed on a {len(d)}-cycle")
            if a > SIXTH:
                raise CertificateInvalid(f"alpha({v}) = {a} exceeds 1/6")
        total = sum((cert.alpha[v] for v in d), Fraction(0))
        if total != 1:
            raise CertificateInvalid(f"alpha sums to {total} on F2-cycle starting at {d[0]}")

    slack = []
    for c in f1_cycles:
        bound = Fraction(len(c), 6) - Fraction(1, 3)
        got = sum((cert.alpha[v] for v in c), Fraction(0))
        if got > bound:
            raise CertificateInvalid(
                f"F1-cycle starting at {c[0]}: sum alpha = {got} > |C|/6 - 1/3 = {bound}"
            )
        slack.append(bound - got)

    total = sum(cert.alpha, Fraction(0))
    if total != cert.k2:
        raise CertificateInvalid(f"sum of alpha is {total}, expected K2 = {cert.k2}")
    lhs = MIX * cert.k1 + (1 - MIX) * cert.k2
    rhs = Fraction(n, 8)
    if lhs > rhs:
        raise CertificateInvalid(f"K1/4 + 3K2/4 = {lhs} > n/8 = {rhs}")
    return CertificateReport(True, lhs, rhs, lhs == rhs, slack)


@dataclass
class BoundReport:
    ok: bool
    components: int
    limit: int
    margin: int


def check_component_bound(f: TwoFactor, n: int) -> BoundReport:
    """Compare the cycle count against ``max(1, n // 8)``."""
    limit = max(1, n // 8)
    return BoundReport(f.components <= limit, f.components, limit, limit - f.components)
