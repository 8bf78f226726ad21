# -*- test-case-name: stochmatch._test.test_star -*-

"""
Optimal probing at a single online vertex.

C{dpOpt(g, v, R)} finds the feasible string at C{v}, using only edges whose
offline endpoint lies in C{R}, with the largest expected value.  For
permutation-closed constraints an optimal string may be taken in
non-increasing weight order, and a memoized recursion over that order
finds it; other constraints are solved by exhausting their feasible
strings.
"""

from itertools import permutations

import attr

from ._config import DEFAULT_LIMITS
from ._constraints import Budget, Patience
from ._errors import CapExceeded
from ._probing import enumerateFeasibleStrings, expectedValue

# Values closer than this are treated as ties.
TIE_TOLERANCE = 1e-12


@attr.s(frozen=True)
class StarPolicy(object):
    """
    A probe string at one vertex and its expected value.
    """

    probeString = attr.ib(converter=tuple)
    value = attr.ib()


@attr.s(frozen=True)
class Ranking(object):
    """
    A fixed order on the edges at one online vertex.
    """

    order = attr.ib(converter=tuple)

    @order.validator
    def _isPermutation(self, attribute, value):
        if len(set(value)) != len(value):
            raise ValueError("ranking repeats an edge: {}".format(value))


def _weightOrder(g, v, available):
    edges = [
        g.edge(e) for e in g.incident(v) if g.edge(e).offline in available
    ]
    edges.sort(key=lambda edge: (-edge.weight, edge.id))
    return edges


def _weightSortedOptimum(constraint, edges):
    """
    Maximize over strings that follow the order of C{edges}.

    The value of choosing the i-th edge next is p_i w_i + (1 - p_i) times the
    best continuation among later edges; the earliest maximizing index wins
    ties, and any admissible edge is preferred over stopping.
    """
    memo = {}
    byCount = isinstance(constraint, Patience)

    def best(start, chosen):
        key = (start, len(chosen)) if byCount else (start, frozenset(chosen))
        if key in memo:
            return memo[key]
        bestValue, bestString = -1.0, ()
        for i in range(start, len(edges)):
            candidate = chosen + (edges[i].id,)
            if not constraint.admits(candidate):
                continue
            tailValue, tailString = best(i + 1, candidate)
            edge = edges[i]
            value = (
                edge.probability * edge.weight
                + (1.0 - edge.probability) * tailValue
            )
            if value > bestValue + TIE_TOLERANCE:
                bestValue, bestString = value, (edge.id,) + tailString
        result = (max(bestValue, 0.0), bestString)
        memo[key] = result
        return result

    return best(0, ())


def dpOpt(g, v, available, limits=DEFAULT_LIMITS):
    """
    An optimal probe string at C{v} against the free offline set
    C{available}.

    @return: a L{StarPolicy}.

    @raise CapExceeded: if a constraint that is not permutation-closed has
        too many feasible strings to exhaust.
    """
    available = frozenset(available)
    constraint = g.constraintFor(v)
    edges = _weightOrder(g, v, available)
    if constraint.permutationClosed:
        _, string = _weightSortedOptimum(constraint, edges)
    else:
        fs = enumerateFeasibleStrings(
            g, v, [edge.id for edge in edges], cap=limits.stringCap
        )
        if fs.truncated:
            raise CapExceeded("feasible strings at {}".format(v), limits.stringCap)
        string, bestValue = (), 0.0
        for candidate in fs.strings:
            value = expectedValue(g, candidate)
            if value > bestValue + TIE_TOLERANCE:
                string, bestValue = candidate, value
    return StarPolicy(string, expectedValue(g, string))


def optStarValue(g, v, available, limits=DEFAULT_LIMITS):
    return dpOpt(g, v, available, limits).value


class StarOracle(object):
    """
    Memoized L{dpOpt} for one graph.

    Results depend on C{R} only through the offline neighbours of C{v} it
    contains, so the memo is keyed on that intersection.
    """

    def __init__(self, g, limits=DEFAULT_LIMITS):
        self._g = g
        self._limits = limits
        self._neighbours = {
            v: frozenset(g.edge(e).offline for e in g.incident(v)) for v in g.online
        }
        self._memo = {}

    @property
    def graph(self):
        return self._g

    def policy(self, v, available):
        key = (v, self._neighbours[v] & frozenset(available))
        if key not in self._memo:
            self._memo[key] = dpOpt(self._g, v, key[1], self._limits)
        return self._memo[key]

    def value(self, v, available):
        return self.policy(v, available).value


def rankingProbeString(g, v, ranking, available):
    """
    The string built by walking C{ranking} and appending each edge with a
    free offline endpoint whose addition stays admissible.
    """
    constraint = g.constraintFor(v)
    string = ()
    for e in ranking.order:
        if g.edge(e).offline not in available:
            continue
        if constraint.admits(string + (e,)):
            string = string + (e,)
    return string


def _canonical(g, string):
    """
    Sort each run of equal-weight edges by id.  Reordering within such a run
    leaves the expected value unchanged for every free offline set.
    """
    runs = []
    for e in string:
        weight = g.edge(e).weight
        if runs and runs[-1][0] == weight:
            runs[-1][1].append(e)
        else:
            runs.append((weight, [e]))
    return tuple(e for (_, run) in runs for e in sorted(run))


def _subsets(vertices):
    vertices = tuple(vertices)
    for mask in range(1 << len(vertices)):
        yield frozenset(u for (i, u) in enumerate(vertices) if mask >> i & 1)


def _candidateRankings(g, v):
    edges = [g.edge(e) for e in g.incident(v)]
    keys = [
        lambda e: (-e.weight * e.probability, -e.weight, e.id),
        lambda e: (-e.weight, e.id),
        lambda e: (-e.probability, e.id),
    ]
    for key in keys:
        yield tuple(edge.id for edge in sorted(edges, key=key))
    if len(edges) <= 7:
        for order in permutations(edge.id for edge in edges):
            yield order


def verifyRankable(g, v, limits=DEFAULT_LIMITS, oracle=None):
    """
    Search for a L{Ranking} reproducing L{dpOpt} at C{v} for every free
    offline set.

    Strings are compared after sorting runs of equal weight by edge id.

    @return: the first witness, or C{None}.

    @raise CapExceeded: if there are too many offline vertices to enumerate
        every subset.
    """
    neighbours = set(g.edge(e).offline for e in g.incident(v))
    neighbours = [u for u in g.offline if u in neighbours]
    if len(neighbours) > limits.subsetCap:
        raise CapExceeded("offline subsets", limits.subsetCap)
    if oracle is None:
        oracle = StarOracle(g, limits)
    targets = [
        (available, _canonical(g, oracle.policy(v, available).probeString))
        for available in _subsets(neighbours)
    ]
    seen = set()
    for order in _candidateRankings(g, v):
        if order in seen:
            continue
        seen.add(order)
        ranking = Ranking(order)
        if all(
            _canonical(g, rankingProbeString(g, v, ranking, available)) == target
            for (available, target) in targets
        ):
            return ranking
    return None


ALIGNED_EXTREME_PATIENCE = 1
ALIGNED_PROBABILITIES = 2
ANTI_MONOTONE_BUDGET = 3


def rankabilityConditions(g, v):
    """
    Which sufficient conditions for rankability hold at C{v}:
    L{ALIGNED_EXTREME_PATIENCE} (patience one, or at least the number of
    offline vertices), L{ALIGNED_PROBABILITIES} (patience, and a higher
    probability never comes with a lower weight) and L{ANTI_MONOTONE_BUDGET}
    (equal weights, a budget, and a higher probability never comes with a
    higher cost).
    """
    constraint = g.constraintFor(v)
    edges = [g.edge(e) for e in g.incident(v)]
    pairs = [(a, b) for a in edges for b in edges if a.id != b.id]
    satisfied = set()
    if isinstance(constraint, Patience):
        if constraint.limit == 1 or constraint.limit >= len(g.offline):
            satisfied.add(ALIGNED_EXTREME_PATIENCE)
        if all(
            a.weight <= b.weight for (a, b) in pairs if a.probability <= b.probability
        ):
            satisfied.add(ALIGNED_PROBABILITIES)
    if isinstance(constraint, Budget):
        if len(set(edge.weight for edge in edges)) <= 1 and all(
            constraint.cost(a.id) >= constraint.cost(b.id)
            for (a, b) in pairs
            if a.probability <= b.probability
        ):
            satisfied.add(ANTI_MONOTONE_BUDGET)
    return frozenset(satisfied)
