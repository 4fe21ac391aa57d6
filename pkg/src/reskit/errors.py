"""Exception hierarchy shared by all reskit modules."""


class ReskitError(Exception):
    """Base class for every error raised by reskit."""


class GraphError(ReskitError, ValueError):
    """Invalid or unsuitable plane graph."""


class NotBipartite(GraphError):
    pass


class BadRotation(GraphError):
    pass


class EulerViolation(GraphError):
    pass


class AmbiguousOuterFace(GraphError):
    pass


class Disconnected(GraphError):
    pass


class NotOuterplane(GraphError):
    pass


class NotTwoConnected(GraphError):
    pass


class IsK2(GraphError):
    pass


class NotElementary(GraphError):
    pass


class NotPeripherally2Colorable(GraphError):
    pass


class OddSubdivision(GraphError):
    pass


class OddSmoothing(GraphError):
    pass


class DegreeNot2(GraphError):
    pass


class WouldCreateMultiEdge(GraphError):
    pass


class MatchingError(ReskitError):
    """Problems with perfect matchings of a host graph."""


class NoPerfectMatching(MatchingError):
    pass


class LimitExceeded(MatchingError):
    """Matching enumeration would exceed the configured cap."""

    def __init__(self, limit: int, message: str | None = None):
        self.limit = limit
        super().__init__(message or f"more than {limit} perfect matchings")


class HostMismatch(MatchingError):
    pass


class TooLarge(ReskitError):
    """Input exceeds the budget of a brute-force routine."""


class NotDaisy(ReskitError):
    pass


class PreconditionFailed(ReskitError):
    pass


class SelfOverlap(GraphError):
    """A chain code folds back onto itself on the hexagonal lattice."""


class NotFound(ReskitError):
    pass


class SchemaError(ReskitError, ValueError):
    """Malformed graph file; the message names the offending field."""
