"""Exception hierarchy.

Input problems (malformed files, points off the graph) derive from
``GraphFormatError``; violated mathematical preconditions derive from
``PreconditionError``. The CLI maps the two families to different exit codes.
"""


class GraphFormatError(ValueError):
    """Malformed graph, point or divisor data."""


class PointNotOnGraphError(GraphFormatError):
    pass


class PreconditionError(ValueError):
    """Input is well formed but outside the domain of the operation."""


class GenusTooSmallError(PreconditionError):
    pass


class HasBridgesError(PreconditionError):
    pass


class NotMinimalError(PreconditionError):
    pass


class NotHyperellipticError(PreconditionError):
    pass


class NotAnInvolutionError(PreconditionError):
    pass
