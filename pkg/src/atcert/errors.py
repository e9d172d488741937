"""Exception hierarchy shared by all atcert modules."""


class AtcertError(Exception):
    """Base class for every error raised by this package."""


class PlaneGraphError(AtcertError):
    pass


class LoopEdge(PlaneGraphError):
    pass


class ParallelEdge(PlaneGraphError):
    pass


class AsymmetricRotation(PlaneGraphError):
    pass


class EulerViolation(PlaneGraphError):
    pass


class UnknownVertex(PlaneGraphError):
    pass


class Disconnected(PlaneGraphError):
    pass


class NotBoundaryEdge(PlaneGraphError):
    pass


class NotSimpleBoundary(PlaneGraphError):
    pass


# the no-chord deletion step reports a non-simple boundary under its own name
BoundaryNotSimple = NotSimpleBoundary


class NotAChord(PlaneGraphError):
    pass


class EdgeOnChordSide(PlaneGraphError):
    pass


class HasChord(PlaneGraphError):
    pass


class FormatError(AtcertError):
    """Malformed graph, certificate, exponent or list text."""


class PreconditionViolated(AtcertError):
    pass


class SearchBudgetExceeded(AtcertError):
    pass


class InternalProofViolation(AtcertError):
    """A step that the induction guarantees has failed: an implementation bug."""


class UnknownName(AtcertError):
    pass
