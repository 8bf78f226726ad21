# -*- test-case-name: stochmatch._test.test_online -*-

"""
Online probing algorithms.

Online vertices arrive one at a time.  On arrival a vertex may probe a
string of its edges admitted by its probing constraint, and must be matched
along the first active edge whose offline endpoint is still free.  Every
runner returns a L{RunRecord} describing one execution.

Edge states are drawn up front from the run's generator (or passed in
explicitly), so that two runs can be coupled on the same randomness.
"""

import math

import attr
import numpy as np
from twisted.logger import Logger

from ._constraints import Patience
from ._errors import (
    InternalCheckFailed,
    InvalidDistribution,
    ProbeRejected,
    UnsupportedConstraint,
)
from ._model import Matching, inducedSubgraph
from ._relaxations import ConfigurationOracle
from ._session import (
    ACTIVE,
    BLOCKED,
    COMMITMENT,
    COMMITTED,
    MATCH,
    PROBING,
    Probe,
    ProbeSession,
)
from ._star import StarOracle

_log = Logger()

GREEDY_DP = "greedy-dp"
GREEDY_PROBE = "greedy-probe"
ROM_LP = "rom-lp"


def drawEdgeStates(g, rng):
    """
    Independently decide whether each edge is active.

    @return: edge id to C{bool}.
    """
    draws = rng.random(len(g.edges))
    return {
        edge.id: bool(draw < edge.probability) for (edge, draw) in zip(g.edges, draws)
    }


class _StatesOnDemand(object):
    """
    Edge states drawn the first time they are looked at.
    """

    def __init__(self, g, rng):
        self._g = g
        self._rng = rng
        self._drawn = {}

    def __getitem__(self, edge):
        if edge not in self._drawn:
            probability = self._g.edge(edge).probability
            self._drawn[edge] = bool(self._rng.random() < probability)
        return self._drawn[edge]


def drawArrivalTimes(online, rng):
    """
    Independent uniform arrival times, re-drawn until they are distinct.
    """
    while True:
        times = rng.random(len(online))
        if len(set(times.tolist())) == len(online):
            return dict(zip(online, times.tolist()))


@attr.s(frozen=True)
class ArrivalOrder(object):
    """
    The order online vertices arrive in, optionally with their arrival
    times.
    """

    order = attr.ib(converter=tuple)
    times = attr.ib(default=None)

    @order.validator
    def _bijective(self, attribute, value):
        if len(set(value)) != len(value):
            raise ValueError("arrival order repeats a vertex: {}".format(value))

    @classmethod
    def fromTimes(cls, times):
        times = dict(times)
        if len(set(times.values())) != len(times):
            raise ValueError("arrival times must be distinct")
        order = sorted(times, key=times.__getitem__)
        return cls(order, tuple(times[v] for v in order))


def _arrivalOrder(order):
    if isinstance(order, ArrivalOrder):
        return order
    return ArrivalOrder(order)


@attr.s(frozen=True)
class ChargingCurve(object):
    """
    How a match's weight is split between the offline vertex and the
    online vertex's star: the offline share is C{1 - split(Y)} for arrival
    time C{Y}, and every charge is scaled by C{1 / normalization}.
    """

    name = attr.ib()
    split = attr.ib(eq=False)
    normalization = attr.ib()


ROM_CURVE = ChargingCurve("exp(z-1)", lambda z: math.exp(z - 1.0), 1.0 - 1.0 / math.e)
ADVERSARIAL_CURVE = ChargingCurve("1/2", lambda z: 0.5, 0.5)


@attr.s(frozen=True)
class DualCharges(object):
    """
    The charges a run assigns.

    @ivar alpha: offline vertex to charge.
    @ivar phi: C{(online vertex, offline bitmask)} to charge.
    @ivar starValues: C{(online vertex, offline bitmask)} to OPT(v, R), for
        every key of C{phi}.
    """

    alpha = attr.ib(converter=dict)
    phi = attr.ib(converter=dict)
    starValues = attr.ib(converter=dict)
    normalization = attr.ib()
    curve = attr.ib()

    def total(self):
        """
        C{F * (sum(alpha) + sum(OPT(v, R) * phi(v, R)))}.
        """
        return self.normalization * math.fsum(
            list(self.alpha.values())
            + [self.starValues[key] * charge for (key, charge) in self.phi.items()]
        )


@attr.s(frozen=True)
class RunRecord(object):
    """
    One execution of an online algorithm.

    @ivar probes: every L{Probe}, in the order made.
    @ivar available: the unmatched offline set at each arrival.
    @ivar commitments: per arrival, the edge the vertex committed to (the
        first active edge it probed, whether or not it was matched), or
        C{None}.
    """

    algorithm = attr.ib()
    order = attr.ib()
    seed = attr.ib()
    probes = attr.ib(converter=tuple)
    matching = attr.ib()
    available = attr.ib(converter=tuple)
    commitments = attr.ib(converter=tuple)
    charges = attr.ib(default=None)

    def remainingAfter(self, g):
        """
        Online vertex to the offline vertices still unmatched right after
        its arrival.
        """
        remaining = {}
        for t, v in enumerate(self.order.order):
            after = set(self.available[t])
            commitment = self.commitments[t]
            if commitment is not None and commitment in self.matching.edges:
                after.discard(g.edge(commitment).offline)
            remaining[v] = frozenset(after)
        return remaining

    def asJSON(self, g):
        """
        A JSON-ready description for run dumps.
        """
        document = {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "order": list(self.order.order),
            "probes": [
                {"edge": g.edge(p.edge).label(), "outcome": p.outcome}
                for p in self.probes
            ],
            "matching": sorted(g.edge(e).label() for e in self.matching.edges),
            "weight": self.matching.weight,
        }
        if self.order.times is not None:
            document["times"] = list(self.order.times)
        if self.charges is not None:
            document["alpha"] = self.charges.alpha
            document["phi"] = {
                "{}:{}".format(v, mask): charge
                for ((v, mask), charge) in self.charges.phi.items()
            }
        return document


def _simulate(g, algorithm, order, states, chooseString, seed, tracer, onMatch=None):
    available = set(g.offline)
    probes = []
    matched = []
    availability = []
    commitments = []
    for t, v in enumerate(order.order):
        before = frozenset(available)
        availability.append(before)
        session = ProbeSession(g, v, states, available)
        if tracer is not None:
            session.setTrace(tracer)
        for e in chooseString(t, v, before):
            outcome = session.probe(e)
            probes.append(Probe(e, outcome))
            if outcome == ACTIVE:
                available.discard(g.edge(e).offline)
                matched.append(e)
                if onMatch is not None:
                    onMatch(t, v, e, before)
            if session.state == COMMITTED:
                break
        commitments.append(session.committedEdge)
    matching = Matching.fromEdges(g, matched)
    _log.debug(
        "{algorithm} run: {count} matches, weight {weight}",
        algorithm=algorithm,
        count=len(matched),
        weight=matching.weight,
    )
    return RunRecord(
        algorithm, order, seed, probes, matching, availability, commitments
    )


def _edgeStates(g, rng, states):
    if states is not None:
        return states
    if rng is None:
        raise ValueError("either rng or states is required")
    return drawEdgeStates(g, rng)


def _drawString(v, distribution, rng):
    strings = [string for (string, _) in distribution]
    masses = np.array([mass for (_, mass) in distribution], dtype=float)
    total = math.fsum(masses.tolist())
    if not strings or abs(total - 1.0) > 1e-9 or (masses < 0).any():
        raise InvalidDistribution(v, total)
    return strings[int(rng.choice(len(strings), p=masses / total))]


def vertexProbe(g, v, distribution, rng, states=None, tracer=None):
    """
    Draw a string from C{distribution} and probe it in order.

    @param distribution: C{(probe string, probability)} pairs summing to
        one.

    @return: the first active edge probed, or C{None}.

    @raise InvalidDistribution: if the probabilities do not sum to one
        within 1e-9.
    """
    string = _drawString(v, distribution, rng)
    if states is None:
        states = _StatesOnDemand(g, rng)
    session = ProbeSession(g, v, states, frozenset(g.offline))
    if tracer is not None:
        session.setTrace(tracer)
    for e in string:
        if session.probe(e) == ACTIVE:
            return e
    return None


def passThreshold(n):
    """
    Arrivals numbered (from one) below this are passed over by the
    random-order LP algorithm.
    """
    return int(math.floor(n / math.e))


def runRandomOrderLP(
    g, order, rng, states=None, oracle=None, tracer=None, seed=None
):
    """
    The random-order LP algorithm.  It passes over the first arrivals.
    After that, each arriving vertex solves the configuration LP of the
    graph induced by the vertices so far, draws a string from its own
    variables, and commits to the first active edge of that string, which
    is matched if its offline endpoint is free.

    @param oracle: a L{ConfigurationOracle} for C{g}, to share LP solutions
        between runs.
    """
    order = _arrivalOrder(order)
    states = _edgeStates(g, rng, states)
    if oracle is None:
        oracle = ConfigurationOracle(g)
    threshold = passThreshold(len(order.order))

    def chooseString(t, v, available):
        if t + 1 < threshold:
            return ()
        distribution = oracle.distribution(order.order[: t + 1], v)
        return _drawString(v, distribution, rng)

    return _simulate(g, ROM_LP, order, states, chooseString, seed, tracer)


def runGreedyDP(g, order, rng=None, states=None, oracle=None, tracer=None, seed=None):
    """
    Greedy-DP: each arriving vertex probes the optimal string against the
    offline vertices still unmatched.

    @param oracle: a L{StarOracle} for C{g}.
    """
    order = _arrivalOrder(order)
    states = _edgeStates(g, rng, states)
    if oracle is None:
        oracle = StarOracle(g)

    def chooseString(t, v, available):
        return oracle.policy(v, available).probeString

    return _simulate(g, GREEDY_DP, order, states, chooseString, seed, tracer)


def greedyProbeEdge(g, v, available):
    """
    The edge at C{v} with a free offline endpoint maximizing weight times
    probability; ties go to the heavier edge, then the smaller id.
    """
    candidates = [g.edge(e) for e in g.incident(v) if g.edge(e).offline in available]
    if not candidates:
        return None
    best = min(
        candidates, key=lambda e: (-e.weight * e.probability, -e.weight, e.id)
    )
    return best.id


def runGreedyProbe(g, order, rng=None, states=None, tracer=None, seed=None):
    """
    Greedy probing for unit patience: each arriving vertex probes its best
    single edge.

    @raise UnsupportedConstraint: if some vertex does not have patience one.
    """
    for v in g.online:
        constraint = g.constraintFor(v)
        if constraint != Patience(1):
            raise UnsupportedConstraint(v, constraint, "unit patience")
    order = _arrivalOrder(order)
    states = _edgeStates(g, rng, states)

    def chooseString(t, v, available):
        edge = greedyProbeEdge(g, v, available)
        return () if edge is None else (edge,)

    return _simulate(g, GREEDY_PROBE, order, states, chooseString, seed, tracer)


def runGreedyDPCharged(
    g,
    times=None,
    rng=None,
    curve=ROM_CURVE,
    states=None,
    oracle=None,
    tracer=None,
    seed=None,
):
    """
    Greedy-DP in increasing order of arrival time, charging each match.

    A match of C{u} to C{v} arriving at time C{Y} with free set C{R}
    charges C{w_u * (1 - split(Y)) / F} to C{u} and
    C{w_u * split(Y) / (F * OPT(v, R))} to C{(v, R)}.

    @param times: online vertex to arrival time; drawn from C{rng} if
        omitted.

    @raise InternalCheckFailed: if a match happens where OPT(v, R) is zero.
    """
    if times is None:
        times = drawArrivalTimes(g.online, rng)
    order = ArrivalOrder.fromTimes(times)
    states = _edgeStates(g, rng, states)
    if oracle is None:
        oracle = StarOracle(g)
    alpha = {}
    phi = {}
    values = {}

    def charge(t, v, e, available):
        edge = g.edge(e)
        arrival = order.times[t]
        share = curve.split(arrival)
        optimum = oracle.value(v, available)
        if optimum <= 0.0:
            raise InternalCheckFailed(
                "charging", "match at {} with OPT(v, R) = {!r}".format(v, optimum)
            )
        key = (v, g.offlineMask(available))
        alpha[edge.offline] = alpha.get(edge.offline, 0.0) + edge.weight * (
            1.0 - share
        ) / curve.normalization
        phi[key] = phi.get(key, 0.0) + edge.weight * share / (
            curve.normalization * optimum
        )
        values[key] = optimum

    def chooseString(t, v, available):
        return oracle.policy(v, available).probeString

    record = _simulate(g, GREEDY_DP, order, states, chooseString, seed, tracer, charge)
    charges = DualCharges(alpha, phi, values, curve.normalization, curve.name)
    return attr.evolve(record, charges=charges)


@attr.s(frozen=True)
class CoupledTraces(object):
    """
    The remaining-offline-set traces of a run on a graph and on the graph
    with one online vertex deleted, driven by the same randomness.
    """

    deletedVertex = attr.ib()
    full = attr.ib(converter=dict)
    deleted = attr.ib(converter=dict)
    fullRecord = attr.ib()
    deletedRecord = attr.ib()

    def violations(self):
        """
        The online vertices whose remaining set in the full run is not
        contained in their remaining set in the deleted run.
        """
        return [
            v for v in self.deleted if not self.full[v] <= self.deleted[v]
        ]


def coupledDeletionRun(g, deletedVertex, states, times, oracle=None):
    """
    Run Greedy-DP on C{g} and on C{g} without C{deletedVertex}, with the
    same edge states and arrival times.
    """
    if oracle is None:
        oracle = StarOracle(g)
    smaller = inducedSubgraph(g, (set(g.offline) | set(g.online)) - {deletedVertex})
    fullRecord = runGreedyDP(
        g, ArrivalOrder.fromTimes(times), states=states, oracle=oracle
    )
    remainingTimes = {v: y for (v, y) in times.items() if v != deletedVertex}
    deletedRecord = runGreedyDP(
        smaller, ArrivalOrder.fromTimes(remainingTimes), states=states, oracle=oracle
    )
    return CoupledTraces(
        deletedVertex,
        fullRecord.remainingAfter(g),
        deletedRecord.remainingAfter(smaller),
        fullRecord,
        deletedRecord,
    )


def criticalTime(g, offline, deletedVertex, states, times, oracle=None):
    """
    The arrival time at which C{offline} is matched when Greedy-DP runs
    without C{deletedVertex}, or 1 if it is never matched.
    """
    traces = coupledDeletionRun(g, deletedVertex, states, times, oracle)
    for e in traces.deletedRecord.matching.edges:
        edge = g.edge(e)
        if edge.offline == offline:
            return times[edge.online]
    return 1.0


def replayRun(g, record):
    """
    Re-check a L{RunRecord} against C{g}: each vertex's probes form an
    admitted string made during its own arrival, every active probe with
    both endpoints free was matched and nothing else was, and the matching
    is valid.

    @return: a list of problems; empty means the record is consistent.
    """
    problems = []
    position = {v: t for (t, v) in enumerate(record.order.order)}
    freeOffline = set(g.offline)
    sessionStates = {}
    histories = {}
    derived = []
    lastArrival = -1
    for probe in record.probes:
        edge = g.edge(probe.edge)
        v = edge.online
        arrival = position.get(v)
        if arrival is None or arrival < lastArrival:
            problems.append("probe of {} outside its arrival".format(edge.label()))
            continue
        lastArrival = arrival
        history = histories.get(v, ()) + (probe.edge,)
        histories[v] = history
        if len(set(history)) != len(history) or not g.constraintFor(v).admits(history):
            problems.append("probes at {} leave its constraint".format(v))
        if probe.outcome not in COMMITMENT.outcomes():
            problems.append(
                "{} has unknown outcome {!r}".format(edge.label(), probe.outcome)
            )
            continue
        try:
            sessionStates[v], outputs = COMMITMENT.outputForInput(
                sessionStates.get(v, PROBING), probe
            )
        except ProbeRejected:
            problems.append("{} probed after committing".format(v))
            continue
        if MATCH in outputs:
            if edge.offline not in freeOffline:
                problems.append("{} matched to a taken vertex".format(edge.label()))
            freeOffline.discard(edge.offline)
            derived.append(probe.edge)
        elif probe.outcome == BLOCKED and edge.offline in freeOffline:
            problems.append("{} active and free but not matched".format(edge.label()))
    if frozenset(derived) != record.matching.edges:
        problems.append("matching differs from the active probes")
    if not record.matching.isMatchingIn(g):
        problems.append("recorded matching is not a matching")
    return problems
