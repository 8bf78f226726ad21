# -*- test-case-name: stochmatch._test.test_relaxations -*-

"""
Linear programming relaxations of the offline stochastic matching problem.
"""

import math

from twisted.logger import Logger

from ._config import DEFAULT_LIMITS
from ._constraints import Patience
from ._errors import CapExceeded, UnsupportedConstraint
from ._lp import EQUAL, LESS_EQUAL, LinearProgramBuilder
from ._model import inducedSubgraph
from ._probing import enumerateFeasibleStrings, expectedValue
from ._simplex import solveLinearProgram
from ._star import StarOracle

_log = Logger()


def _stringName(g, v, string):
    return "x_{}({})".format(
        v, ",".join("{}.{}".format(g.edge(e).offline, v) for e in string)
    )


def _edgeName(prefix, g, e):
    edge = g.edge(e)
    return "{}_{}.{}".format(prefix, edge.offline, edge.online)


def buildConfigLP(g, limits=DEFAULT_LIMITS):
    """
    The configuration LP: one variable for every feasible string at every
    online vertex, in lexicographic order.

    Each online vertex's variables form a distribution (an equality row);
    each offline vertex is probed-and-found-active at most once in
    expectation.

    @raise CapExceeded: if a vertex has more feasible strings than
        C{limits.stringCap}.
    """
    builder = LinearProgramBuilder("config")
    matchingRows = {u: [] for u in g.offline}
    for v in g.online:
        fs = enumerateFeasibleStrings(g, v, cap=limits.stringCap)
        if fs.truncated:
            raise CapExceeded("feasible strings at {}".format(v), limits.stringCap)
        names = []
        for string in fs.strings:
            name = builder.addVariable(
                _stringName(g, v, string),
                expectedValue(g, string),
                tag="x_v(e-string)",
                key=(v, string),
            )
            names.append(name)
            reach = 1.0
            for e in string:
                edge = g.edge(e)
                matchingRows[edge.offline].append((name, edge.probability * reach))
                reach *= 1.0 - edge.probability
        builder.addRow([(name, 1.0) for name in names], EQUAL, 1.0, "dist_" + v)
    for u in g.offline:
        builder.addRow(matchingRows[u], LESS_EQUAL, 1.0, "match_" + u)
    return builder.build()


def _requirePatience(g, unit):
    for v in g.online:
        constraint = g.constraintFor(v)
        if not isinstance(constraint, Patience) or (unit and constraint.limit != 1):
            raise UnsupportedConstraint(
                v, constraint, "unit patience" if unit else "patience"
            )


def _edgeVariables(builder, g, prefix, tag, objective):
    return {
        e: builder.addVariable(
            _edgeName(prefix, g, e), objective(g.edge(e)), tag=tag, key=e
        )
        for e in g.edgeIds
    }


def buildStandardUnitLP(g):
    """
    The standard LP for unit patience.

    @raise UnsupportedConstraint: if some vertex does not have patience one.
    """
    _requirePatience(g, unit=True)
    builder = LinearProgramBuilder("std-unit")
    x = _edgeVariables(
        builder, g, "x", "x_{u,v}", lambda edge: edge.weight * edge.probability
    )
    for u in g.offline:
        builder.addRow(
            [(x[e.id], e.probability) for e in g.edges if e.offline == u],
            LESS_EQUAL,
            1.0,
            "match_" + u,
        )
    for v in g.online:
        builder.addRow(
            [(x[e], 1.0) for e in g.incident(v)], LESS_EQUAL, 1.0, "probe_" + v
        )
    return builder.build()


def buildStandardLP(g):
    """
    The standard LP for arbitrary patience: offline and online probability
    rows, a patience row per online vertex, and unit upper bounds.

    @raise UnsupportedConstraint: if some vertex is not patience-constrained.
    """
    _requirePatience(g, unit=False)
    builder = LinearProgramBuilder("std")
    x = _edgeVariables(
        builder, g, "x", "x_{u,v}", lambda edge: edge.weight * edge.probability
    )
    for u in g.offline:
        builder.addRow(
            [(x[e.id], e.probability) for e in g.edges if e.offline == u],
            LESS_EQUAL,
            1.0,
            "match_" + u,
        )
    for v in g.online:
        incident = g.incident(v)
        builder.addRow(
            [(x[e], g.edge(e).probability) for e in incident],
            LESS_EQUAL,
            1.0,
            "active_" + v,
        )
        builder.addRow(
            [(x[e], 1.0) for e in incident],
            LESS_EQUAL,
            g.constraintFor(v).limit,
            "patience_" + v,
        )
    for e in g.edgeIds:
        builder.addRow([(x[e], 1.0)], LESS_EQUAL, 1.0, "bound_" + x[e])
    return builder.build()


def neighbourSubsets(g, v, limits=DEFAULT_LIMITS):
    """
    Every non-empty set of offline neighbours of C{v}.

    @raise CapExceeded: if C{v} has more than C{limits.subsetCap} neighbours.
    """
    neighbours = [g.edge(e).offline for e in g.incident(v)]
    if len(neighbours) > limits.subsetCap:
        raise CapExceeded("offline subsets at {}".format(v), limits.subsetCap)
    for mask in range(1, 1 << len(neighbours)):
        yield frozenset(u for (i, u) in enumerate(neighbours) if mask >> i & 1)


def starValues(g, limits=DEFAULT_LIMITS, oracle=None):
    """
    OPT(v, R) for every online vertex C{v} and non-empty set C{R} of its
    offline neighbours.
    """
    if oracle is None:
        oracle = StarOracle(g, limits)
    return {
        (v, available): oracle.value(v, available)
        for v in g.online
        for available in neighbourSubsets(g, v, limits)
    }


def buildDynamicProgramLP(g, values=None, limits=DEFAULT_LIMITS):
    """
    The LP bounding, for every online vertex C{v} and offline set C{R}, the
    weight C{v} is matched to within C{R} by the optimal value of probing
    C{v} against C{R}.

    Rows are generated for subsets of each vertex's neighbours only; the row
    for any other C{R} coincides with the row for its intersection with the
    neighbourhood.

    @param values: C{(v, R)} to OPT(v, R), as from L{starValues}.

    @raise CapExceeded: if a vertex has more than C{limits.subsetCap}
        neighbours.
    """
    if values is None:
        values = starValues(g, limits)
    builder = LinearProgramBuilder("dp")
    x = _edgeVariables(
        builder, g, "x", "x_{u,v}", lambda edge: edge.weight * edge.probability
    )
    for u in g.offline:
        builder.addRow(
            [(x[e.id], e.probability) for e in g.edges if e.offline == u],
            LESS_EQUAL,
            1.0,
            "match_" + u,
        )
    for v in g.online:
        edges = [g.edge(e) for e in g.incident(v)]
        for available in neighbourSubsets(g, v, limits):
            builder.addRow(
                [
                    (x[e.id], e.weight * e.probability)
                    for e in edges
                    if e.offline in available
                ],
                LESS_EQUAL,
                values[(v, available)],
                "star_{}_{}".format(v, "_".join(sorted(available))),
            )
    return builder.build()


def buildNoncommittalLP(g, values, limits=DEFAULT_LIMITS):
    """
    The LP relaxing the non-committal benchmark: C{z} is the probability an
    edge is probed and active, bounded by C{p} times the probe probability
    C{x}, and star rows use non-committal star values.

    @param values: C{(v, R)} to OPT_non(v, R), as from
        L{stochmatch.noncommittalStarValues}.
    """
    builder = LinearProgramBuilder("dp-non")
    x = _edgeVariables(builder, g, "x", "x_{u,v}", lambda edge: 0.0)
    z = _edgeVariables(builder, g, "z", "z_{u,v}", lambda edge: edge.weight)
    for u in g.offline:
        builder.addRow(
            [(z[e.id], 1.0) for e in g.edges if e.offline == u],
            LESS_EQUAL,
            1.0,
            "match_" + u,
        )
    for v in g.online:
        edges = [g.edge(e) for e in g.incident(v)]
        for available in neighbourSubsets(g, v, limits):
            builder.addRow(
                [(z[e.id], e.weight) for e in edges if e.offline in available],
                LESS_EQUAL,
                values[(v, available)],
                "star_{}_{}".format(v, "_".join(sorted(available))),
            )
    for e in g.edgeIds:
        builder.addRow(
            [(z[e], 1.0), (x[e], -g.edge(e).probability)],
            LESS_EQUAL,
            0.0,
            "active_" + z[e],
        )
    return builder.build()


def edgeMarginals(g, lp, solution):
    """
    The probability each edge is probed when every online vertex draws a
    string from its configuration distribution and probes it until an edge
    is active.

    @param lp: a configuration LP, as from L{buildConfigLP}.

    @return: edge id to probe probability.
    """
    terms = {e: [] for e in g.edgeIds}
    for name in lp.variables:
        v, string = lp.keys[name]
        mass = solution.value(name)
        reach = 1.0
        for e in string:
            terms[e].append(reach * mass)
            reach *= 1.0 - g.edge(e).probability
    return {e: math.fsum(parts) for (e, parts) in terms.items()}


def configDistribution(lp, solution, v):
    """
    The C{(string, probability)} pairs of C{v}'s configuration variables
    with positive mass.
    """
    return [
        (lp.keys[name][1], solution.value(name))
        for name in lp.variables
        if lp.keys[name][0] == v and solution.value(name) > 0.0
    ]


class ConfigurationOracle(object):
    """
    Solves and memoizes the configuration LP of the subgraph induced by all
    offline vertices and a set of online vertices.
    """

    def __init__(self, g, limits=DEFAULT_LIMITS):
        self._g = g
        self._limits = limits
        self._solved = {}

    def solve(self, arrived):
        """
        @return: C{(lp, solution)} for the subgraph on C{arrived}.
        """
        arrived = frozenset(arrived)
        if arrived not in self._solved:
            subgraph = inducedSubgraph(self._g, set(self._g.offline) | arrived)
            lp = buildConfigLP(subgraph, self._limits)
            solution = solveLinearProgram(lp)
            _log.debug(
                "configuration LP on {count} arrivals: {value}",
                count=len(arrived),
                value=solution.objectiveValue,
            )
            self._solved[arrived] = (lp, solution)
        return self._solved[arrived]

    def optimum(self, arrived):
        return self.solve(arrived)[1].objectiveValue

    def distribution(self, arrived, v):
        lp, solution = self.solve(arrived)
        return configDistribution(lp, solution, v)
