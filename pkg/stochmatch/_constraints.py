# -*- test-case-name: stochmatch._test.test_probing -*-

"""
Probing constraints: the sets of edge strings an online vertex may probe.

Every constraint is an immutable value with an C{admits} membership oracle
over strings (tuples of edge ids already known to be incident to the
vertex), a C{kind} used by the instance format, and C{restrictedTo} for
building induced subgraphs.
"""

from itertools import permutations

import attr


def _sortedMembers(members):
    return tuple(sorted(set(tuple(member) for member in members)))


def _sortedFamily(members):
    return tuple(
        sorted(set(tuple(sorted(set(member))) for member in members))
    )


@attr.s(frozen=True)
class Patience(object):
    """
    At most C{limit} probes.
    """

    kind = "patience"
    permutationClosed = True

    limit = attr.ib(validator=attr.validators.instance_of(int))

    @limit.validator
    def _nonNegative(self, attribute, value):
        if value < 0:
            raise ValueError("patience must be non-negative, not {}".format(value))

    def admits(self, string):
        return len(string) <= self.limit

    def restrictedTo(self, edges):
        return self


@attr.s(frozen=True)
class Budget(object):
    """
    Probes whose total cost stays within C{budget}.

    @ivar costs: sorted C{(edge, cost)} pairs; edges without a listed cost
        are free.
    """

    kind = "budget"
    permutationClosed = True

    budget = attr.ib(converter=float)
    costs = attr.ib(
        converter=lambda costs: tuple(sorted(dict(costs).items())),
        default=(),
    )
    _costOf = attr.ib(init=False, eq=False, repr=False)

    @_costOf.default
    def _buildCostOf(self):
        return dict(self.costs)

    def cost(self, edge):
        return self._costOf.get(edge, 0.0)

    def admits(self, string):
        return sum(self.cost(edge) for edge in string) <= self.budget + 1e-12

    def restrictedTo(self, edges):
        return Budget(
            self.budget,
            [(edge, cost) for (edge, cost) in self.costs if edge in edges],
        )


@attr.s(frozen=True)
class ExplicitStrings(object):
    """
    An explicitly listed set of strings.  The empty string is always a
    member.
    """

    kind = "strings"

    members = attr.ib(converter=_sortedMembers)
    _memberSet = attr.ib(init=False, eq=False, repr=False)

    @_memberSet.default
    def _buildMemberSet(self):
        return frozenset(self.members) | {()}

    @property
    def permutationClosed(self):
        return all(
            permuted in self._memberSet
            for member in self.members
            for permuted in permutations(member)
        )

    def admits(self, string):
        return tuple(string) in self._memberSet

    def restrictedTo(self, edges):
        return ExplicitStrings(
            member for member in self.members if all(e in edges for e in member)
        )


@attr.s(frozen=True)
class ExplicitFamily(object):
    """
    An explicitly listed family of edge sets; a string is a member when its
    edges are distinct and their set is in the family.  The empty set is
    always a member.
    """

    kind = "family"
    permutationClosed = True

    members = attr.ib(converter=_sortedFamily)
    _memberSet = attr.ib(init=False, eq=False, repr=False)

    @_memberSet.default
    def _buildMemberSet(self):
        return frozenset(frozenset(member) for member in self.members) | {
            frozenset()
        }

    def admits(self, string):
        support = frozenset(string)
        return len(support) == len(string) and support in self._memberSet

    def isDownwardClosed(self):
        for member in self._memberSet:
            for edge in member:
                if member - {edge} not in self._memberSet:
                    return False
        return True

    def restrictedTo(self, edges):
        return ExplicitFamily(
            member for member in self.members if all(e in edges for e in member)
        )


CONSTRAINT_KINDS = {
    Patience.kind: Patience,
    Budget.kind: Budget,
    ExplicitStrings.kind: ExplicitStrings,
    ExplicitFamily.kind: ExplicitFamily,
}
