"""Exception hierarchy for hyperspan."""


class HypergraphError(ValueError):
    """Base class for invalid hypergraph input."""


class ParseError(HypergraphError):
    """Raised when a ``.hg`` or ``.faults`` file cannot be read.

    ``line`` is the 1-based line number of the offending line.
    """

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class MalformedLine(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class NonPositiveWeight(ParseError):
    pass


class EdgeTooSmall(ParseError):
    pass


class RankExceeded(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class NonUniformWeights(HypergraphError):
    """Raised by constructions restricted to unit-weight inputs."""


class InfeasibleInstance(HypergraphError):
    """Raised when a generator is asked for more edges than exist."""


class GirthTooSmall(HypergraphError):
    pass


class ExhaustiveTooLarge(RuntimeError):
    def __init__(self, count, limit):
        self.count = count
        self.limit = limit
        super().__init__(
            f"exhaustive verification needs {count} fault sets (limit {limit})"
        )


class InvariantViolation(AssertionError):
    """An internal invariant of the clustering construction failed.

    ``kind`` names the broken property (``"MonotoneWeights"``, ``"Disjointness"``, ...).
    """

    def __init__(self, kind, message, event=None):
        self.kind = kind
        self.event = event
        super().__init__(f"{kind}: {message}")
