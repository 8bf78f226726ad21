# -*- test-case-name: stochmatch._test.test_checks -*-

"""
Statistical and pathwise checks of the properties the competitive analyses
rest on: the share of the configuration LP optimum kept by random subsets
of arrivals, the availability of committed offline vertices, and the
charging scheme's identities and bounds.
"""

import math

import attr

from ._config import DEFAULT_LIMITS
from ._harness import ROM, sampleOrder, summarize, trialGenerator
from ._online import (
    ROM_CURVE,
    criticalTime,
    passThreshold,
    runGreedyDPCharged,
    runRandomOrderLP,
)
from ._relaxations import ConfigurationOracle
from ._star import StarOracle


@attr.s(frozen=True)
class SubgraphReport(object):
    """
    The sampled mean configuration LP optimum over random C{t}-subsets of
    online vertices, against C{t/n} times the full optimum.
    """

    t = attr.ib()
    samples = attr.ib()
    mean = attr.ib()
    stderr = attr.ib()
    bound = attr.ib()
    passed = attr.ib()


def subgraphValueCheck(g, t, samples, seed, limits=DEFAULT_LIMITS, oracle=None):
    """
    Check that a uniformly random set of C{t} online vertices keeps at least
    a C{t/n} share of the configuration LP optimum in expectation, with
    three standard errors of slack.
    """
    n = len(g.online)
    if not 0 <= t <= n:
        raise ValueError("t must be between 0 and {}, not {}".format(n, t))
    if oracle is None:
        oracle = ConfigurationOracle(g, limits)
    full = oracle.optimum(g.online)
    values = []
    for i in range(samples):
        rng = trialGenerator(seed, i)
        chosen = rng.choice(n, size=t, replace=False) if t else []
        values.append(oracle.optimum(g.online[j] for j in chosen))
    estimate = summarize(values)
    bound = full * t / n if n else 0.0
    passed = estimate.mean + 3.0 * estimate.stderr >= bound - 1e-9
    return SubgraphReport(t, samples, estimate.mean, estimate.stderr, bound, passed)


def _profileStart(n):
    return max(int(math.ceil(n / math.e)), 2)


def _randomOrderRecords(g, trials, seed, limits, oracle):
    if oracle is None:
        oracle = ConfigurationOracle(g, limits)
    for i in range(trials):
        rng = trialGenerator(seed, i)
        order = sampleOrder(g, ROM, None, rng)
        yield runRandomOrderLP(g, order, rng, oracle=oracle, seed=seed)


@attr.s(frozen=True)
class AvailabilityRow(object):
    """
    At arrival C{t}: how often the arriving vertex committed, how often the
    vertex it committed to was still free, and the lower bound on that
    frequency.
    """

    t = attr.ib()
    commits = attr.ib()
    free = attr.ib()
    frequency = attr.ib()
    stderr = attr.ib()
    bound = attr.ib()
    passed = attr.ib()


def availabilityProfile(g, trials, seed, limits=DEFAULT_LIMITS, oracle=None):
    """
    For each arrival index from M{ceil(n/e)} on, the empirical frequency
    with which the random-order LP algorithm finds the offline endpoint of
    its committed edge still free, against M{floor(n/e) / (t - 1)}.

    The bound holds conditionally on the arrived set and arriving vertex;
    this checks its marginal consequence.
    """
    n = len(g.online)
    start = _profileStart(n)
    commits = dict.fromkeys(range(start, n + 1), 0)
    free = dict.fromkeys(range(start, n + 1), 0)
    for record in _randomOrderRecords(g, trials, seed, limits, oracle):
        for t in commits:
            edge = record.commitments[t - 1]
            if edge is None:
                continue
            commits[t] += 1
            if g.edge(edge).offline in record.available[t - 1]:
                free[t] += 1
    rows = []
    for t in sorted(commits):
        bound = min(1.0, passThreshold(n) / (t - 1))
        if commits[t]:
            frequency = free[t] / commits[t]
            stderr = math.sqrt(frequency * (1.0 - frequency) / commits[t])
            passed = frequency + 3.0 * stderr >= bound - 1e-9
        else:
            frequency, stderr, passed = 1.0, 0.0, True
        rows.append(
            AvailabilityRow(t, commits[t], free[t], frequency, stderr, bound, passed)
        )
    return rows


@attr.s(frozen=True)
class CommitValueRow(object):
    """
    At arrival C{t}: the mean weight of the edge the arriving vertex
    committed to, against the configuration LP optimum divided by C{n}.
    """

    t = attr.ib()
    mean = attr.ib()
    stderr = attr.ib()
    bound = attr.ib()
    passed = attr.ib()


def commitValueProfile(g, trials, seed, limits=DEFAULT_LIMITS, oracle=None):
    """
    For each arrival index from M{ceil(n/e)} on, the mean weight of the
    edge the random-order LP algorithm commits to.
    """
    if oracle is None:
        oracle = ConfigurationOracle(g, limits)
    n = len(g.online)
    start = max(int(math.ceil(n / math.e)), 1)
    weights = {t: [] for t in range(start, n + 1)}
    for record in _randomOrderRecords(g, trials, seed, limits, oracle):
        for t in weights:
            edge = record.commitments[t - 1]
            weights[t].append(0.0 if edge is None else g.edge(edge).weight)
    bound = oracle.optimum(g.online) / n if n else 0.0
    rows = []
    for t in sorted(weights):
        estimate = summarize(weights[t])
        passed = estimate.mean + 3.0 * estimate.stderr >= bound - 1e-9
        rows.append(CommitValueRow(t, estimate.mean, estimate.stderr, bound, passed))
    return rows


def chargingIdentityGap(record):
    """
    How far a charged run's matched weight is from its total charge.
    """
    return abs(record.matching.weight - record.charges.total())


@attr.s(frozen=True)
class DualFeasibilityRow(object):
    """
    The estimated left-hand side of the dual constraint of one edge,
    against the edge's C{w * p}.
    """

    offline = attr.ib()
    online = attr.ib()
    mean = attr.ib()
    stderr = attr.ib()
    target = attr.ib()
    passed = attr.ib()


def dualFeasibilityEstimate(
    g, trials, seed, curve=ROM_CURVE, limits=DEFAULT_LIMITS, oracle=None
):
    """
    For every edge C{(u, v)}, estimate the expectation of
    C{p * alpha[u] + w * p * sum(phi[v, R] for R containing u)} over
    charged Greedy-DP runs in random order.
    """
    if oracle is None:
        oracle = StarOracle(g, limits)
    samples = {edge.id: [] for edge in g.edges}
    for i in range(trials):
        rng = trialGenerator(seed, i)
        charges = runGreedyDPCharged(g, rng=rng, curve=curve, oracle=oracle).charges
        for edge in g.edges:
            bit = g.offlineMask([edge.offline])
            starCharge = math.fsum(
                charge
                for ((v, mask), charge) in charges.phi.items()
                if v == edge.online and mask & bit
            )
            samples[edge.id].append(
                edge.probability * charges.alpha.get(edge.offline, 0.0)
                + edge.weight * edge.probability * starCharge
            )
    rows = []
    for edge in g.edges:
        estimate = summarize(samples[edge.id])
        target = edge.weight * edge.probability
        rows.append(
            DualFeasibilityRow(
                edge.offline,
                edge.online,
                estimate.mean,
                estimate.stderr,
                target,
                estimate.mean + 3.0 * estimate.stderr >= target - 1e-9,
            )
        )
    return rows


def offlineChargeBoundHolds(
    g, offline, online, states, times, curve=ROM_CURVE, oracle=None
):
    """
    Whether, on one run, the charge to C{offline} is at least
    C{w / F * (1 - split(Yc))}, where C{Yc} is the critical time of
    C{offline} with respect to C{online}.
    """
    if oracle is None:
        oracle = StarOracle(g)
    record = runGreedyDPCharged(g, times, curve=curve, states=states, oracle=oracle)
    critical = criticalTime(g, offline, online, states, times, oracle)
    if g.vertexWeights is not None:
        weight = g.vertexWeights[offline]
    else:
        weight = g.edge(g.edgeBetween(offline, online)).weight
    bound = weight / curve.normalization * (1.0 - curve.split(critical))
    return record.charges.alpha.get(offline, 0.0) >= bound - 1e-12
