# -*- test-case-name: stochmatch._test.test_benchmarks -*-

"""
Exact offline benchmarks for tiny instances.

The committal benchmark is the best adaptive prober that knows the whole
graph but must match any active edge whose endpoints are both free.  The
non-committal benchmark probes adaptively too, but only afterwards picks a
maximum-weight matching among the edges it found active.
"""

import math
from itertools import product

from twisted.logger import Logger

from ._config import DEFAULT_LIMITS
from ._errors import CapExceeded
from ._model import Matching, OneSidedMatching, inducedSubgraph
from ._online import vertexProbe
from ._relaxations import configDistribution, neighbourSubsets, starValues

_log = Logger()

_TIE = 1e-12


def maxWeightMatching(g, edges, limits=DEFAULT_LIMITS):
    """
    A maximum-weight matching among C{edges}, found exhaustively.  Among
    matchings of equal weight the lexicographically smallest sorted id
    tuple wins.

    @raise CapExceeded: if there are more than C{limits.exhaustiveEdgeCap}
        edges.
    """
    edges = [g.edge(e) for e in sorted(set(edges))]
    if len(edges) > limits.exhaustiveEdgeCap:
        raise CapExceeded("matching candidate edges", limits.exhaustiveEdgeCap)
    best = [0.0, ()]

    def search(i, offline, online, chosen, weight):
        if i == len(edges):
            if weight > best[0] + _TIE or (
                abs(weight - best[0]) <= _TIE and chosen < best[1]
            ):
                best[0], best[1] = weight, chosen
            return
        edge = edges[i]
        if edge.offline not in offline and edge.online not in online:
            search(
                i + 1,
                offline | {edge.offline},
                online | {edge.online},
                chosen + (edge.id,),
                weight + edge.weight,
            )
        search(i + 1, offline, online, chosen, weight)

    search(0, frozenset(), frozenset(), (), 0.0)
    return Matching.fromEdges(g, best[1])


class _MatchingCache(object):
    def __init__(self, g, limits):
        self._g = g
        self._limits = limits
        self._weights = {}

    def weight(self, edges):
        edges = frozenset(edges)
        if edges not in self._weights:
            matching = maxWeightMatching(self._g, edges, self._limits)
            self._weights[edges] = matching.weight
        return self._weights[edges]


class _Search(object):
    """
    Shared bookkeeping for the memoized benchmark searches.
    """

    def __init__(self, g, limits):
        self._g = g
        self._limits = limits
        self._memo = {}
        self._online = tuple(g.online)
        self._constraints = tuple(g.constraintFor(v) for v in self._online)
        self._edges = tuple(
            tuple(g.edge(e) for e in g.incident(v)) for v in self._online
        )
        self._offlineBit = {u: 1 << i for (i, u) in enumerate(g.offline)}

    def _remember(self, key, value):
        if len(self._memo) >= self._limits.stateCap:
            raise CapExceeded("benchmark states", self._limits.stateCap)
        self._memo[key] = value
        return value


class _CommittalSearch(_Search):
    """
    State: the probe history of every online vertex and bitmasks of the
    matched offline and online vertices.

    Unless C{reference} is set, matched online vertices stop probing (their
    histories collapse to C{None}), and at vertices with a permutation-closed
    constraint edges to matched offline vertices are not probed: such a
    probe cannot match and only uses up room in the constraint.
    """

    def __init__(self, g, limits, reference):
        super(_CommittalSearch, self).__init__(g, limits)
        self._reference = reference

    def value(self, histories, matchedOffline, matchedOnline):
        key = (histories, matchedOffline, matchedOnline)
        if key in self._memo:
            return self._memo[key]
        best = 0.0
        for i, history in enumerate(histories):
            onlineBit = 1 << i
            if history is None:
                continue
            vertexMatched = bool(matchedOnline & onlineBit)
            constraint = self._constraints[i]
            prune = not self._reference and constraint.permutationClosed
            for edge in self._edges[i]:
                if edge.id in history:
                    continue
                offlineBit = self._offlineBit[edge.offline]
                free = not vertexMatched and not matchedOffline & offlineBit
                if prune and not free:
                    continue
                extended = history + (edge.id,)
                if not constraint.admits(extended):
                    continue
                probed = histories[:i] + (extended,) + histories[i + 1 :]
                inactive = self.value(probed, matchedOffline, matchedOnline)
                if free:
                    if not self._reference:
                        probed = histories[:i] + (None,) + histories[i + 1 :]
                    active = edge.weight + self.value(
                        probed, matchedOffline | offlineBit, matchedOnline | onlineBit
                    )
                else:
                    active = inactive
                candidate = (
                    edge.probability * active + (1.0 - edge.probability) * inactive
                )
                best = max(best, candidate)
        return self._remember(key, best)


def committalOpt(g, limits=DEFAULT_LIMITS, reference=False):
    """
    The committal benchmark's expected value.

    @param reference: disable the pruning of dominated probes.

    @raise CapExceeded: if the search visits more than C{limits.stateCap}
        states.
    """
    search = _CommittalSearch(g, limits, reference)
    value = search.value(tuple(() for _ in g.online), 0, 0)
    _log.debug(
        "committal benchmark {value} over {states} states",
        value=value,
        states=len(search._memo),
    )
    return value


class _NoncommittalSearch(_Search):
    """
    State: the probe history of every online vertex, each probe paired with
    whether it was active.  Stopping scores a maximum-weight matching of the
    active probes.
    """

    def __init__(self, g, limits):
        super(_NoncommittalSearch, self).__init__(g, limits)
        self._matchings = _MatchingCache(g, limits)

    def value(self, histories):
        if histories in self._memo:
            return self._memo[histories]
        active = [e for history in histories for (e, on) in history if on]
        best = self._matchings.weight(active)
        for i, history in enumerate(histories):
            probed = tuple(e for (e, _) in history)
            for edge in self._edges[i]:
                if edge.id in probed:
                    continue
                if not self._constraints[i].admits(probed + (edge.id,)):
                    continue
                outcomes = []
                for on in (True, False):
                    extended = (
                        histories[:i]
                        + (history + ((edge.id, on),),)
                        + histories[i + 1 :]
                    )
                    outcomes.append(self.value(extended))
                candidate = (
                    edge.probability * outcomes[0]
                    + (1.0 - edge.probability) * outcomes[1]
                )
                best = max(best, candidate)
        return self._remember(histories, best)


def noncommittalOpt(g, limits=DEFAULT_LIMITS):
    """
    The non-committal benchmark's expected value.

    @raise CapExceeded: if the search visits more than C{limits.stateCap}
        states.
    """
    search = _NoncommittalSearch(g, limits)
    value = search.value(tuple(() for _ in g.online))
    _log.debug(
        "non-committal benchmark {value} over {states} states",
        value=value,
        states=len(search._memo),
    )
    return value


def noncommittalStarValues(g, limits=DEFAULT_LIMITS):
    """
    OPT_non(v, R) for every online vertex C{v} and non-empty set C{R} of its
    offline neighbours: the non-committal benchmark of the star on C{v} and
    C{R}.
    """
    return {
        (v, available): noncommittalOpt(inducedSubgraph(g, available | {v}), limits)
        for v in g.online
        for available in neighbourSubsets(g, v, limits)
    }


def committalAgreesWithNoncommittal(g, limits=DEFAULT_LIMITS, oracle=None):
    """
    Whether committal and non-committal probing are worth the same on every
    star of C{g}.  When they are, guarantees proven against the committal
    star values carry over to the non-committal benchmark.
    """
    committal = starValues(g, limits, oracle)
    noncommittal = noncommittalStarValues(g, limits)
    return all(
        abs(committal[key] - noncommittal[key]) <= 1e-9 for key in noncommittal
    )


def expectedOptimumMatching(g, limits=DEFAULT_LIMITS):
    """
    The expected weight of a maximum-weight matching of the active edges,
    as if every edge state were known for free.
    """
    if len(g.edges) > limits.exhaustiveEdgeCap:
        raise CapExceeded("edge-state assignments", limits.exhaustiveEdgeCap)
    matchings = _MatchingCache(g, limits)
    terms = []
    for states in product((True, False), repeat=len(g.edges)):
        probability = 1.0
        active = []
        for edge, on in zip(g.edges, states):
            probability *= edge.probability if on else 1.0 - edge.probability
            if on:
                active.append(edge.id)
        if probability > 0.0:
            terms.append(probability * matchings.weight(active))
    return math.fsum(terms)


def relaxedBenchmarkRun(g, lp, solution, rng, states=None):
    """
    One run of the relaxed benchmark: every online vertex independently
    probes a string drawn from its configuration LP variables and keeps its
    first active edge.  Offline vertices may be used more than once.

    @param lp: the configuration LP of C{g}; C{solution} must be optimal.
    """
    edges = []
    for v in g.online:
        edge = vertexProbe(g, v, configDistribution(lp, solution, v), rng, states)
        if edge is not None:
            edges.append(edge)
    return OneSidedMatching(edges)
