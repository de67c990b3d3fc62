"""Exception hierarchy.

Every error raised by the library derives from :class:`GraftError`, itself a
``ValueError``, so callers can catch either broadly or by kind.
"""


class GraftError(ValueError):
    pass


# construction / structural
class LoopEdge(GraftError):
    pass


class TooFewTerminals(GraftError):
    pass


class DanglingVertexRef(GraftError):
    pass


class UnknownVertex(GraftError):
    pass


class UnknownEdge(GraftError):
    pass


class InvalidFamily(GraftError):
    pass


class NotIncident(GraftError):
    pass


class WouldCreateLoop(GraftError):
    pass


# paths, cuts, Menger machinery
class NotAPath(GraftError):
    pass


class PivotMissing(GraftError):
    pass


class NotAPathSystem(GraftError):
    pass


class SidesOverlap(GraftError):
    pass


class NotMinCut(GraftError):
    pass


class PreconditionError(GraftError):
    """A documented precondition does not hold for the given input."""


class PreconditionEdgeAvoidable(PreconditionError):
    pass


class NotLinked(PreconditionError):
    pass


# parity / linkage / packing
class NotInnerEulerian(GraftError):
    def __init__(self, vertex=None, message=None):
        self.vertex = vertex
        if message is None:
            message = "graft is not inner Eulerian"
            if vertex is not None:
                message += f" (non-terminal vertex {vertex} has odd degree)"
        super().__init__(message)


class NotATerminal(GraftError):
    pass


class NotATerminalEdge(GraftError):
    pass


class SourceNotLinked(PreconditionError):
    pass


class LinkabilityFails(GraftError):
    def __init__(self, terminals, message=None):
        self.terminals = tuple(terminals)
        if message is None:
            message = "linkability condition fails at terminal(s) " + ", ".join(
                str(t) for t in self.terminals
            )
        super().__init__(message)


class BoundaryMissing(GraftError):
    pass


class Collision(GraftError):
    pass


class InvariantViolation(AssertionError):
    """An internal postcondition failed; the result would have been unsound."""


# toolkit
class CapExceeded(GraftError):
    pass


class Infeasible(GraftError):
    pass
