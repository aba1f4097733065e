"""Exception hierarchy shared across the package."""


class LinklessError(Exception):
    """Base class for all errors raised by this package."""


class CapacityExceeded(LinklessError):
    """Graph would exceed the 32-vertex capacity of the bitset representation."""


class NotAnEdge(LinklessError):
    """A vertex pair that was required to be an edge is not one."""


class NotAForest(LinklessError):
    """An edge set that was required to be acyclic contains a cycle."""


class NotAClique(LinklessError):
    """A vertex list that was required to induce a complete subgraph does not."""


class NotATriangle(LinklessError):
    """Three vertices that were required to induce a triangle do not."""


class NotDegreeThree(LinklessError):
    """A vertex that was required to have degree exactly 3 does not."""


class NotConnected(LinklessError):
    """An operation defined on connected graphs received a disconnected one."""


class NotDisjoint(LinklessError):
    """Two cycles that were required to be vertex-disjoint share a vertex."""


class TooSmall(LinklessError):
    """Graph order below the minimum the operation is defined for."""


class PropositionViolation(LinklessError):
    """The three apex criteria for a maxnIL graph disagree; the input was
    presumably not maxnIL (or there is a bug upstream)."""


class UnsupportedOrder(LinklessError):
    """Requested census order outside the supported range."""


class NotMaximalPlanar(LinklessError):
    """An input that was declared a plane triangulation is not maximal planar."""


class IncompleteSource(LinklessError):
    """A graph stream's declared coverage does not match the sieve it must cover."""
