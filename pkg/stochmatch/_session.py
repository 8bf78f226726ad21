# -*- test-case-name: stochmatch._test.test_session -*-

"""
The probe session of one online vertex: a small finite-state transducer
enforcing commitment.

A session starts in L{PROBING}.  Each probe reveals an outcome: the edge is
L{INACTIVE}, L{ACTIVE} with a free offline endpoint (the vertex must take
it, moving to L{COMMITTED} and emitting L{MATCH}), or L{BLOCKED}: active
but with an offline endpoint that is already matched, which commits the
vertex without a match.  A committed vertex has no transitions left.
"""

import attr

from ._errors import ProbeRejected

PROBING = "probing"
COMMITTED = "committed"

INACTIVE = "inactive"
ACTIVE = "active"
BLOCKED = "blocked"

MATCH = "match"


@attr.s(frozen=True)
class Probe(object):
    """
    One probe and what it revealed.
    """

    edge = attr.ib()
    outcome = attr.ib()

    @property
    def active(self):
        return self.outcome != INACTIVE


class ProbeAutomaton(object):
    """
    A declaration of the probe session's transitions.

    Note that this is not a session itself; it is shared by all of them.
    """

    def __init__(self):
        self._transitions = set()

    def addTransition(self, inState, outcome, outState, outputSymbols):
        """
        Add a transition.  Raise ValueError if there is already one from
        C{inState} on C{outcome}.
        """
        for (anInState, anOutcome, _, _) in self._transitions:
            if (anInState, anOutcome) == (inState, outcome):
                raise ValueError(
                    "already have transition from {} via {}".format(inState, outcome)
                )
        self._transitions.add((inState, outcome, outState, tuple(outputSymbols)))

    def outcomes(self):
        return {outcome for (_, outcome, _, _) in self._transitions}

    def outputForInput(self, inState, probe):
        """
        A 2-tuple of (outState, outputSymbols) for C{probe}.

        @raise ProbeRejected: if there is no transition from C{inState} on
            the probe's outcome.
        """
        for (anInState, anOutcome, outState, outputSymbols) in self._transitions:
            if (inState, probe.outcome) == (anInState, anOutcome):
                return (outState, list(outputSymbols))
        raise ProbeRejected(inState, probe.edge)


def probeAutomaton():
    """
    Build the commitment rules.
    """
    automaton = ProbeAutomaton()
    automaton.addTransition(PROBING, INACTIVE, PROBING, [])
    automaton.addTransition(PROBING, BLOCKED, COMMITTED, [])
    automaton.addTransition(PROBING, ACTIVE, COMMITTED, [MATCH])
    return automaton


COMMITMENT = probeAutomaton()


class ProbeSession(object):
    """
    The probes made by online vertex C{online} during its arrival.

    @param states: edge id to whether the edge is active.

    @param available: the currently unmatched offline vertices; read, never
        modified.
    """

    def __init__(self, g, online, states, available, automaton=COMMITMENT):
        self._g = g
        self._online = online
        self._constraint = g.constraintFor(online)
        self._incident = frozenset(g.incident(online))
        self._states = states
        self._available = available
        self._automaton = automaton
        self._state = PROBING
        self._history = ()
        self._committedEdge = None
        self._tracer = None

    @property
    def state(self):
        return self._state

    @property
    def history(self):
        return self._history

    @property
    def committedEdge(self):
        return self._committedEdge

    def setTrace(self, tracer):
        """
        Call C{tracer(oldState, probe, newState)} on every probe.  If it
        returns a callable, that is called with the edge when the probe
        produces a match.
        """
        self._tracer = tracer

    def probe(self, edge):
        """
        Probe C{edge}.

        @return: the probe's outcome.

        @raise ProbeRejected: if the edge is not incident, was probed
            already, would leave the vertex's probing constraint, or the
            vertex has already committed.
        """
        if edge not in self._incident:
            raise ProbeRejected(self._state, edge, "edge not incident")
        if edge in self._history:
            raise ProbeRejected(self._state, edge, "edge already probed")
        extended = self._history + (edge,)
        if not self._constraint.admits(extended):
            raise ProbeRejected(self._state, edge, "outside probing constraint")
        if self._states[edge]:
            if self._g.edge(edge).offline in self._available:
                outcome = ACTIVE
            else:
                outcome = BLOCKED
        else:
            outcome = INACTIVE
        probe = Probe(edge, outcome)
        outState, outputSymbols = self._automaton.outputForInput(self._state, probe)
        outTracer = None
        if self._tracer:
            outTracer = self._tracer(self._state, probe, outState)
        self._state = outState
        self._history = extended
        if outState == COMMITTED:
            self._committedEdge = edge
        if MATCH in outputSymbols:
            if outTracer:
                outTracer(edge)
        return outcome
