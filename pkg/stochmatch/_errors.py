# -*- test-case-name: stochmatch._test.test_model -*-

"""
Exceptions raised by stochmatch.
"""


class StochasticMatchingError(Exception):
    """
    Base class for every error stochmatch raises on purpose.
    """


class InvalidInstance(StochasticMatchingError):
    """
    An instance document does not follow the instance schema.

    @param path: a JSON-pointer-like path to the offending field.

    @param reason: what is wrong with it.
    """

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super(InvalidInstance, self).__init__("{}: {}".format(path, reason))


class UnknownVertex(StochasticMatchingError):
    """
    A vertex id does not name a vertex of the graph.
    """

    def __init__(self, vertex):
        self.vertex = vertex
        super(UnknownVertex, self).__init__("unknown vertex {!r}".format(vertex))


class UnknownEdge(StochasticMatchingError):
    """
    An edge id does not name an edge of the graph.
    """

    def __init__(self, edge):
        self.edge = edge
        super(UnknownEdge, self).__init__("unknown edge {!r}".format(edge))


class ConstraintViolation(StochasticMatchingError):
    """
    A probe string is not admissible at C{vertex}: one of its edges is not
    incident to it, or it lies outside the vertex's probing constraint.
    """

    def __init__(self, vertex, string, reason):
        self.vertex = vertex
        self.string = string
        self.reason = reason
        super(ConstraintViolation, self).__init__(
            "string {} at {}: {}".format(string, vertex, reason)
        )


class UnsupportedConstraint(StochasticMatchingError):
    """
    An operation only defined for some constraint kinds (for example unit
    patience) was given a vertex with another kind of constraint.
    """

    def __init__(self, vertex, constraint, required):
        self.vertex = vertex
        self.constraint = constraint
        self.required = required
        super(UnsupportedConstraint, self).__init__(
            "{} has constraint {!r}; {} required".format(vertex, constraint, required)
        )


class CapExceeded(StochasticMatchingError):
    """
    An enumeration went past one of the configured L{Limits}.

    @param what: the thing being enumerated.

    @param cap: the limit that was hit.
    """

    def __init__(self, what, cap):
        self.what = what
        self.cap = cap
        super(CapExceeded, self).__init__("{} exceeds cap of {}".format(what, cap))


class InvalidDistribution(StochasticMatchingError):
    """
    The probabilities handed to a vertex probe do not sum to one.
    """

    def __init__(self, vertex, total):
        self.vertex = vertex
        self.total = total
        super(InvalidDistribution, self).__init__(
            "distribution at {} sums to {!r}, not 1".format(vertex, total)
        )


class InvalidLinearProgram(StochasticMatchingError):
    """
    A L{LinearProgram} references undeclared variables or non-finite
    coefficients.
    """

    def __init__(self, problems):
        self.problems = tuple(problems)
        super(InvalidLinearProgram, self).__init__("; ".join(self.problems))


class ProbeRejected(StochasticMatchingError):
    """
    A probe session in C{state} has no transition for probing C{edge}.

    @param state: the session's state when the probe was attempted.

    @param edge: the edge whose probe was refused.
    """

    def __init__(self, state, edge, reason="no transition"):
        self.state = state
        self.edge = edge
        super(ProbeRejected, self).__init__(
            "{} for probe of edge {} in {}".format(reason, edge, state)
        )


class InternalCheckFailed(StochasticMatchingError):
    """
    A property that holds by construction (a post-solve feasibility check, a
    pathwise charging identity) did not.
    """

    def __init__(self, check, detail):
        self.check = check
        self.detail = detail
        super(InternalCheckFailed, self).__init__("{}: {}".format(check, detail))
