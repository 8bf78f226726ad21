# -*- test-case-name: stochmatch._test.test_probing -*-

"""
String-level primitives: survival products, expected values, enumeration of
feasible strings, and closure checks.
"""

import math
from itertools import permutations

import attr

from ._config import DEFAULT_LIMITS
from ._constraints import ExplicitFamily, ExplicitStrings
from ._errors import CapExceeded, ConstraintViolation


def survival(g, string):
    """
    The probability that every edge of C{string} is inactive.
    """
    return math.prod(1.0 - g.edge(e).probability for e in string)


def expectedValue(g, string):
    """
    The expected weight of the first active edge when C{string} is probed
    in order.
    """
    terms = []
    reach = 1.0
    for e in string:
        edge = g.edge(e)
        terms.append(reach * edge.probability * edge.weight)
        reach *= 1.0 - edge.probability
    return math.fsum(terms)


def membership(g, v, string):
    """
    Whether C{string} is admitted by the probing constraint of C{v}.

    @raise ConstraintViolation: if an edge of C{string} is not incident to
        C{v}.
    """
    incident = g.incident(v)
    for e in string:
        g.edge(e)
        if e not in incident:
            raise ConstraintViolation(
                v, tuple(string), "edge {} is not incident".format(e)
            )
    return g.constraintFor(v).admits(tuple(string))


@attr.s(frozen=True)
class FeasibleStringSet(object):
    """
    The feasible strings at one online vertex, in lexicographic edge-id
    order.

    @ivar truncated: whether enumeration stopped at the cap.
    """

    online = attr.ib()
    strings = attr.ib(converter=tuple)
    truncated = attr.ib(default=False)


def _explicitCandidates(constraint, edges):
    allowed = set(edges)
    if isinstance(constraint, ExplicitStrings):
        members = constraint.members
    else:
        members = (
            permuted
            for member in constraint.members
            for permuted in permutations(member)
        )
    found = {()}
    for member in members:
        if set(member) <= allowed:
            found.add(tuple(member))
    return sorted(found)


def _depthFirst(constraint, edges):
    stack = [()]
    while stack:
        string = stack.pop()
        yield string
        used = set(string)
        for e in reversed(edges):
            if e not in used:
                extended = string + (e,)
                if constraint.admits(extended):
                    stack.append(extended)


def enumerateFeasibleStrings(g, v, edges=None, cap=None):
    """
    Enumerate the feasible strings at C{v} over C{edges} (by default every
    edge at C{v}).

    Cardinality and cost constraints are prefix-closed by construction, so
    their enumeration extends admitted strings only; explicit constraints
    are read off their member lists.

    @param cap: the most strings to return before setting C{truncated}.
    """
    if cap is None:
        cap = DEFAULT_LIMITS.stringCap
    if edges is None:
        edges = g.incident(v)
    edges = tuple(sorted(edges))
    constraint = g.constraintFor(v)
    if isinstance(constraint, (ExplicitStrings, ExplicitFamily)):
        candidates = iter(_explicitCandidates(constraint, edges))
    else:
        candidates = _depthFirst(constraint, edges)
    strings = []
    for string in candidates:
        if len(strings) == cap:
            return FeasibleStringSet(v, strings, truncated=True)
        strings.append(string)
    return FeasibleStringSet(v, strings)


def _members(fs, check):
    if fs.truncated:
        raise CapExceeded(
            "feasible strings at {} for {}".format(fs.online, check), len(fs.strings)
        )
    return frozenset(fs.strings)


def checkPrefixClosed(fs):
    members = _members(fs, "prefix check")
    return all(s[:i] in members for s in members for i in range(len(s)))


def checkPermutationClosed(fs):
    members = _members(fs, "permutation check")
    return all(p in members for s in members for p in permutations(s))


def checkSubstringClosed(fs):
    """
    Whether every contiguous substring of a member is a member.
    """
    members = _members(fs, "substring check")
    return all(
        s[i:j] in members
        for s in members
        for i in range(len(s) + 1)
        for j in range(i, len(s) + 1)
    )
