"""Exception hierarchy.

Every error raised by the package derives from :class:`ModwalkError`. The CLI
maps the three top-level branches onto exit codes 2, 3 and 4.
"""

from __future__ import annotations


class ModwalkError(Exception):
    pass


class InvalidInputError(ModwalkError, ValueError):
    """Malformed or semantically invalid input (exit code 2)."""


class InstanceTooLargeError(ModwalkError):
    """An exact routine was asked to work beyond its node limit (exit code 3)."""

    def __init__(self, n: int, limit: int, what: str = "instance") -> None:
        self.n = n
        self.limit = limit
        super().__init__(f"{what} has {n} nodes, limit is {limit}")


class InvariantViolationError(ModwalkError, AssertionError):
    """An internal guarantee failed (exit code 4). Never expected to happen."""


# graph construction
class SelfLoopError(InvalidInputError):
    def __init__(self, u: int) -> None:
        self.u = u
        super().__init__(f"self-loop at node {u}")


class DuplicateEdgeError(InvalidInputError):
    def __init__(self, u: int, v: int) -> None:
        self.edge = (u, v)
        super().__init__(f"duplicate edge ({u}, {v})")


class NodeOutOfRangeError(InvalidInputError):
    def __init__(self, u: int, n: int) -> None:
        self.u = u
        self.n = n
        super().__init__(f"node {u} out of range for n={n}")


class EmptyWalkError(InvalidInputError):
    pass


class DisconnectedError(InvalidInputError):
    pass


# clusters and coarsening
class EmptyClusterError(InvalidInputError):
    pass


class NotCoarsenableError(InvalidInputError):
    def __init__(self, size: int, shell: int) -> None:
        self.size = size
        self.shell = shell
        super().__init__(f"cluster of size {size} with shell {shell} fails |C| > 2|S|")


class ClusterIsWholeGraphError(InvalidInputError):
    pass


# walks on coarse graphs
class NotACoarseWalkError(InvalidInputError):
    pass


class BulkVisitedNotOnceError(InvalidInputError):
    pass


class FlankNotInClusterError(InvalidInputError):
    pass


class ClusterNodeAbsentFromWalkError(InvalidInputError):
    pass


# k-expressions
class JoinSameLabelError(InvalidInputError):
    pass


class MuNonZeroError(InvalidInputError):
    pass


class CoverageGapError(InvalidInputError):
    pass


# generators
class ParamsInfeasibleError(InvalidInputError):
    pass


class UnknownFixtureError(InvalidInputError):
    pass
