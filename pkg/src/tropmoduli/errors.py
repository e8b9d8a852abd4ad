"""Exception taxonomy shared by all modules.

Domain errors (bad input) derive from ValueError so callers can treat them
uniformly; internal-consistency errors derive from RuntimeError because they
indicate a bug, not bad input, and must never fire in normal operation.
"""


class GraphError(ValueError):
    """Malformed graph data: disconnected, bad endpoint, bad marking."""


class UnstableTypeError(ValueError):
    """Requested (g, n) admits no stable types, i.e. 2g - 2 + n <= 0."""


class MalformedModelError(ValueError):
    """Stable-model description is structurally invalid."""


class RejectedModelError(ValueError):
    """Stable-model description induces an unstable dual graph."""


class ExtendedCurveError(ValueError):
    """Operation requires finite edge lengths but an infinite one is present."""


class InternalConsistencyError(RuntimeError):
    """A cross-check that must always hold has failed (a bug, not bad input)."""


class ResourceBoundExceeded(RuntimeError):
    """A configured size cap was hit; carries the partial size report."""

    def __init__(self, message, chain_ranks=None):
        super().__init__(message)
        self.chain_ranks = chain_ranks
