# -*- test-case-name: stochmatch._test.test_config -*-

"""
Enumeration limits, and how they are read from the environment.
"""

import os

import attr

CAP_VARIABLE = "STOCHMATCH_CAP"


@attr.s(frozen=True)
class Limits(object):
    """
    Caps on the exhaustive enumerations stochmatch performs.

    @ivar stringCap: most feasible strings enumerated per online vertex.
    @ivar stateCap: most memoized states in an exact benchmark search.
    @ivar subsetCap: largest offline side for which every subset gets a row.
    @ivar exhaustiveEdgeCap: most edges for exhaustive matching or
        edge-state enumeration.
    @ivar orderCap: largest online side for which every arrival order is
        enumerated.
    """

    stringCap = attr.ib(default=200000)
    stateCap = attr.ib(default=1000000)
    subsetCap = attr.ib(default=15)
    exhaustiveEdgeCap = attr.ib(default=16)
    orderCap = attr.ib(default=6)


DEFAULT_LIMITS = Limits()


def limitsFromEnvironment(environ=os.environ, base=DEFAULT_LIMITS):
    """
    Build L{Limits} from C{base}, letting C{STOCHMATCH_CAP} override the
    string and state caps.

    @raise ValueError: if the variable is set but is not a positive integer.
    """
    raw = environ.get(CAP_VARIABLE)
    if raw is None or not raw.strip():
        return base
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError("{} must be an integer, not {!r}".format(CAP_VARIABLE, raw))
    if cap < 1:
        raise ValueError("{} must be positive, not {}".format(CAP_VARIABLE, cap))
    return attr.evolve(base, stringCap=cap, stateCap=cap)
