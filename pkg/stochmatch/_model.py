# -*- test-case-name: stochmatch._test.test_model -*-

"""
The stochastic graph data model.

A L{StochasticGraph} is a bipartite graph between offline vertices (known in
advance) and online vertices (which arrive one at a time).  Each edge
carries an existence probability and a weight, and each online vertex a
probing constraint limiting which strings of its edges may be probed.

Probe strings are plain tuples of edge ids.
"""

import math

import attr

from ._constraints import ExplicitFamily, ExplicitStrings, Patience
from ._errors import UnknownEdge, UnknownVertex

EDGE_WEIGHTED = "edge"
VERTEX_WEIGHTED = "vertex"


@attr.s(frozen=True)
class Edge(object):
    """
    An edge between offline vertex C{offline} and online vertex C{online},
    active with probability C{probability}.
    """

    id = attr.ib()
    offline = attr.ib()
    online = attr.ib()
    probability = attr.ib(converter=float)
    weight = attr.ib(converter=float)

    def label(self):
        return "({},{})".format(self.offline, self.online)


def _freezeMapping(mapping):
    return dict(mapping) if mapping is not None else None


@attr.s(frozen=True)
class StochasticGraph(object):
    """
    A bipartite stochastic graph with per-online-vertex probing constraints.

    Nothing is checked on construction; see L{validateGraph}.

    @ivar offline: offline vertex ids, in input order.
    @ivar online: online vertex ids, in input order.
    @ivar edges: L{Edge}s ordered by id.
    @ivar constraints: online vertex id to constraint.
    @ivar vertexWeights: offline vertex id to weight for vertex-weighted
        graphs, C{None} for edge-weighted ones.
    """

    offline = attr.ib(converter=tuple)
    online = attr.ib(converter=tuple)
    edges = attr.ib(converter=tuple)
    constraints = attr.ib(converter=dict)
    vertexWeights = attr.ib(default=None, converter=_freezeMapping)

    _byId = attr.ib(init=False, eq=False, repr=False)
    _byPair = attr.ib(init=False, eq=False, repr=False)
    _incident = attr.ib(init=False, eq=False, repr=False)
    _offlineBits = attr.ib(init=False, eq=False, repr=False)

    @_byId.default
    def _buildById(self):
        return {edge.id: edge for edge in self.edges}

    @_byPair.default
    def _buildByPair(self):
        return {(edge.offline, edge.online): edge.id for edge in self.edges}

    @_incident.default
    def _buildIncident(self):
        incident = {v: [] for v in self.online}
        for edge in self.edges:
            incident.setdefault(edge.online, []).append(edge.id)
        return {v: tuple(ids) for (v, ids) in incident.items()}

    @_offlineBits.default
    def _buildOfflineBits(self):
        return {u: 1 << i for (i, u) in enumerate(self.offline)}

    @property
    def weightMode(self):
        return EDGE_WEIGHTED if self.vertexWeights is None else VERTEX_WEIGHTED

    @property
    def edgeIds(self):
        return tuple(edge.id for edge in self.edges)

    def edge(self, edgeId):
        """
        Look up an edge.

        @raise UnknownEdge: if there is no such edge.
        """
        try:
            return self._byId[edgeId]
        except (KeyError, TypeError):
            raise UnknownEdge(edgeId)

    def edgeBetween(self, offline, online):
        """
        The id of the edge joining C{offline} and C{online}, or C{None}.
        """
        return self._byPair.get((offline, online))

    def incident(self, online):
        """
        Ids of the edges at online vertex C{online}, in id order.

        @raise UnknownVertex: if C{online} is not an online vertex.
        """
        try:
            return self._incident[online]
        except KeyError:
            raise UnknownVertex(online)

    def constraintFor(self, online):
        try:
            return self.constraints[online]
        except KeyError:
            raise UnknownVertex(online)

    def offlineMask(self, vertices):
        """
        Encode a set of offline vertices as a bitmask over L{offline}.
        """
        mask = 0
        for u in vertices:
            try:
                mask |= self._offlineBits[u]
            except KeyError:
                raise UnknownVertex(u)
        return mask

    def offlineFromMask(self, mask):
        return frozenset(u for u in self.offline if mask & self._offlineBits[u])


def vertexWeightedGraph(offline, online, weights, pairs, constraints):
    """
    Build a vertex-weighted graph whose edge weights are derived from the
    offline weights.

    @param weights: offline vertex id to weight.

    @param pairs: C{(offline, online, probability)} triples, in edge order.
    """
    edges = [
        Edge(i, u, v, p, weights[u]) for (i, (u, v, p)) in enumerate(pairs)
    ]
    return StochasticGraph(offline, online, edges, constraints, weights)


def edgeWeightedGraph(offline, online, quads, constraints):
    """
    Build an edge-weighted graph from C{(offline, online, probability,
    weight)} quadruples, in edge order.
    """
    edges = [Edge(i, u, v, p, w) for (i, (u, v, p, w)) in enumerate(quads)]
    return StochasticGraph(offline, online, edges, constraints)


@attr.s(frozen=True)
class ValidationReport(object):
    """
    The invariant violations found in a graph; empty means valid.
    """

    problems = attr.ib(converter=tuple, default=())

    @property
    def valid(self):
        return not self.problems

    def __bool__(self):
        return self.valid


def _isNumber(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def validateGraph(g):
    """
    List every violated invariant of C{g}.

    @return: a L{ValidationReport}; never raises.
    """
    problems = []
    offline = set(g.offline)
    online = set(g.online)
    if len(offline) != len(g.offline):
        problems.append("duplicate offline vertex id")
    if len(online) != len(g.online):
        problems.append("duplicate online vertex id")
    if offline & online:
        problems.append(
            "vertex ids used on both sides: {}".format(sorted(offline & online))
        )
    seenPairs = set()
    previous = -1
    for edge in g.edges:
        where = "edge {} {}".format(edge.id, edge.label())
        if isinstance(edge.id, bool) or not isinstance(edge.id, int):
            problems.append("{}: edge id is not an integer".format(where))
        elif edge.id <= previous:
            problems.append("{}: edge ids are not increasing".format(where))
        else:
            previous = edge.id
        if edge.offline not in offline:
            problems.append("{}: unknown offline vertex".format(where))
        if edge.online not in online:
            problems.append("{}: unknown online vertex".format(where))
        if (edge.offline, edge.online) in seenPairs:
            problems.append("{}: duplicate edge".format(where))
        seenPairs.add((edge.offline, edge.online))
        if not (0.0 <= edge.probability <= 1.0):
            problems.append(
                "{}: probability out of range ({!r})".format(where, edge.probability)
            )
        if not (edge.weight >= 0.0 and math.isfinite(edge.weight)):
            problems.append("{}: negative weight ({!r})".format(where, edge.weight))
        if g.vertexWeights is not None:
            expectedWeight = g.vertexWeights.get(edge.offline)
            if expectedWeight is None:
                problems.append("{}: offline vertex has no weight".format(where))
            elif edge.weight != expectedWeight:
                problems.append(
                    "{}: vertex-weight inconsistency ({!r} != {!r})".format(
                        where, edge.weight, expectedWeight
                    )
                )
    if g.vertexWeights is not None:
        for u, weight in sorted(g.vertexWeights.items()):
            if u not in offline:
                problems.append("vertex weight for unknown offline vertex {}".format(u))
            elif not _isNumber(weight) or weight < 0:
                problems.append("negative weight for offline vertex {}".format(u))
    for v in g.online:
        if v not in g.constraints:
            problems.append("online vertex {}: missing constraint".format(v))
    for v, constraint in sorted(g.constraints.items()):
        if v not in online:
            problems.append("constraint for unknown online vertex {}".format(v))
            continue
        problems.extend(_constraintProblems(g, v, constraint))
    return ValidationReport(problems)


def _constraintProblems(g, v, constraint):
    incident = set(edge.id for edge in g.edges if edge.online == v)
    where = "online vertex {}".format(v)
    if isinstance(constraint, ExplicitStrings):
        for member in constraint.members:
            if len(set(member)) != len(member):
                yield "{}: string {} repeats an edge".format(where, member)
            if not set(member) <= incident:
                yield "{}: string {} uses a non-incident edge".format(where, member)
        admitted = set(constraint.members) | {()}
        for member in constraint.members:
            if member[:-1] not in admitted:
                yield "{}: constraint not prefix-closed (missing {})".format(
                    where, member[:-1]
                )
    elif isinstance(constraint, ExplicitFamily):
        for member in constraint.members:
            if not set(member) <= incident:
                yield "{}: set {} uses a non-incident edge".format(where, member)
        if not constraint.isDownwardClosed():
            yield "{}: family not downward-closed".format(where)
    elif isinstance(constraint, Patience):
        pass
    else:
        for edge, cost in constraint.costs:
            if edge not in incident:
                yield "{}: cost for non-incident edge {}".format(where, edge)
            if cost < 0:
                yield "{}: negative cost for edge {}".format(where, edge)
        if constraint.budget < 0:
            yield "{}: negative budget".format(where)


def inducedSubgraph(g, vertices):
    """
    The subgraph induced by C{vertices}.

    Surviving edges keep their ids, so edge states and tie-breaks carry over
    between a graph and its induced subgraphs.  Constraints are restricted
    to strings over surviving edges.

    @raise UnknownVertex: if C{vertices} names a vertex not in C{g}.
    """
    keep = frozenset(vertices)
    known = set(g.offline) | set(g.online)
    for vertex in sorted(keep - known, key=repr):
        raise UnknownVertex(vertex)
    edges = [e for e in g.edges if e.offline in keep and e.online in keep]
    surviving = frozenset(e.id for e in edges)
    online = [v for v in g.online if v in keep]
    constraints = {
        v: g.constraints[v].restrictedTo(surviving)
        for v in online
        if v in g.constraints
    }
    weights = None
    if g.vertexWeights is not None:
        weights = {u: w for (u, w) in g.vertexWeights.items() if u in keep}
    return StochasticGraph(
        [u for u in g.offline if u in keep], online, edges, constraints, weights
    )


@attr.s(frozen=True)
class Matching(object):
    """
    A set of edge ids no two of which share a vertex, with its weight.
    """

    edges = attr.ib(converter=frozenset)
    weight = attr.ib(converter=float)

    @classmethod
    def fromEdges(cls, g, edges):
        edges = frozenset(edges)
        return cls(edges, math.fsum(g.edge(e).weight for e in edges))

    def isMatchingIn(self, g):
        offline = set()
        online = set()
        for edgeId in self.edges:
            edge = g.edge(edgeId)
            if edge.offline in offline or edge.online in online:
                return False
            offline.add(edge.offline)
            online.add(edge.online)
        recomputed = math.fsum(g.edge(e).weight for e in self.edges)
        return abs(recomputed - self.weight) <= 1e-12


EMPTY_MATCHING = Matching(frozenset(), 0.0)


@attr.s(frozen=True)
class OneSidedMatching(object):
    """
    Edge ids in which each online vertex appears at most once; offline
    vertices may repeat.
    """

    edges = attr.ib(converter=tuple)

    def weight(self, g):
        return math.fsum(g.edge(e).weight for e in self.edges)

    def isOneSidedIn(self, g):
        online = [g.edge(e).online for e in self.edges]
        return len(online) == len(set(online))
