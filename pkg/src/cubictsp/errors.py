"""Exception hierarchy.

Two families matter to callers: ``InputError`` means the instance or a
user-supplied structure was bad; ``InvariantBreach`` means a property that
the algorithms guarantee did not hold, which is always a bug.
"""


class CubicTSPError(Exception):
    """Base class for every error raised by this package."""


class InputError(CubicTSPError):
    pass


class InvariantBreach(CubicTSPError):
    pass


# graph_core
class NotSimple(InputError):
    pass


class NotCubic(InputError):
    pass


class NotBipartite(InputError):
    pass


class NotConnected(InputError):
    pass


class Unreachable(InputError):
    pass


class OddDegree(InputError):
    pass


class ParseError(InputError):
    pass


# factor
class NotTwoRegular(InputError):
    pass


class OddCycle(InputError):
    pass


class InvalidFactor(InputError):
    pass


# reduce4
class ParallelEdgeWouldForm(InvariantBreach):
    pass


# improve
class GraphTooSmall(InputError):
    pass


class PreconditionFailed(InputError):
    pass


class ChordMissingFromF2(InvariantBreach):
    pass


class IterationCapExceeded(InvariantBreach):
    pass


class PivotBlocked(CubicTSPError):
    """No chord of a violated cycle can be pivoted onto a long cycle."""

    def __init__(self, message: str, cycle_index: int):
        super().__init__(message)
        self.cycle_index = cycle_index


# certify
class ViolatedCycleExists(InputError):
    pass


class TooManyIntersectors(InvariantBreach):
    pass


class CertificateInvalid(InvariantBreach):
    pass


# cubic3
class IsK4(InputError):
    pass


class OddDegreeAtGadget(InputError):
    pass


# oracle
class TooLarge(InputError):
    pass


class NoTwoFactor(InputError):
    pass


# gen
class RetriesExhausted(CubicTSPError):
    pass


class UnknownFixture(InputError):
    pass
