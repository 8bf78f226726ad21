# -*- test-case-name: stochmatch._test.test_reproduce -*-

"""
Worked examples with known answers, re-derived from scratch.
"""

import attr
from twisted.logger import Logger

from ._benchmarks import committalOpt, expectedOptimumMatching, noncommittalOpt
from ._checks import chargingIdentityGap
from ._config import DEFAULT_LIMITS
from ._generate import InstanceParams, generateRandomInstance
from ._harness import EXPLICIT, exactExpectedValue, trialGenerator
from ._online import ADVERSARIAL_CURVE, GREEDY_DP, ROM_CURVE, runGreedyDPCharged
from ._relaxations import buildConfigLP, buildDynamicProgramLP, starValues
from ._serialize import embeddedInstance
from ._simplex import solveLinearProgram
from ._star import StarOracle, rankabilityConditions, verifyRankable

_log = Logger()

COMMITMENT_GAP = "commitment-gap"
NONRANKABLE_STAR = "nonrankable-star"
SINGLE_VERTEX_GAP = "single-vertex-gap"
CHARGING_IDENTITY = "charging-identity"

_CLOSE = 1e-9


@attr.s(frozen=True)
class Reproduction(object):
    """
    The outcome of one case.

    @ivar lines: human-readable findings, one per line.
    """

    case = attr.ib()
    passed = attr.ib()
    lines = attr.ib(converter=tuple)


def _close(actual, expected, tolerance=_CLOSE):
    return abs(actual - expected) <= tolerance


def _labels(g, string):
    return "".join(g.edge(e).label() for e in string) or "()"


def commitmentGap(limits=DEFAULT_LIMITS):
    """
    One online vertex of patience 2 where committing to the first active
    edge costs value: 3.36 against 3.924 without commitment.
    """
    g = embeddedInstance(COMMITMENT_GAP)
    committal = committalOpt(g, limits)
    noncommittal = noncommittalOpt(g, limits)
    ratio = committal / noncommittal
    dynamic = solveLinearProgram(
        buildDynamicProgramLP(g, starValues(g, limits), limits)
    ).objectiveValue
    passed = (
        _close(committal, 3.36)
        and _close(noncommittal, 3.924)
        and _close(ratio, 0.856269, 1e-5)
        and _close(dynamic, committal)
    )
    return Reproduction(
        COMMITMENT_GAP,
        passed,
        [
            "committal benchmark: {!r} (expected 3.36)".format(committal),
            "non-committal benchmark: {!r} (expected 3.924)".format(noncommittal),
            "ratio: {:.6f} (expected 0.856269)".format(ratio),
            "star LP relaxation: {!r}".format(dynamic),
        ],
    )


def nonrankableStar(limits=DEFAULT_LIMITS):
    """
    A star whose optimal strings against the full offline side and against
    the side without C{u2} cannot both come from one ranking.
    """
    g = embeddedInstance(NONRANKABLE_STAR)
    (v,) = g.online
    oracle = StarOracle(g, limits)
    everything = oracle.policy(v, g.offline)
    withoutU2 = oracle.policy(v, set(g.offline) - {"u2"})
    expectedFull = (g.edgeBetween("u1", v), g.edgeBetween("u2", v))
    expectedRest = (g.edgeBetween("u3", v), g.edgeBetween("u4", v))
    witness = verifyRankable(g, v, limits, oracle)
    passed = (
        everything.probeString == expectedFull
        and withoutU2.probeString == expectedRest
        and _close(everything.value, 1.08 / 3 + 1.04 * 2 / 3)
        and _close(withoutU2.value, 0.5 + 0.5 * 2 / 3)
        and witness is None
        and not rankabilityConditions(g, v)
    )
    return Reproduction(
        NONRANKABLE_STAR,
        passed,
        [
            "all offline free: {} worth {!r}".format(
                _labels(g, everything.probeString), everything.value
            ),
            "u2 taken: {} worth {!r}".format(
                _labels(g, withoutU2.probeString), withoutU2.value
            ),
            "ranking witness: {}".format(
                "none" if witness is None else _labels(g, witness.order)
            ),
        ],
    )


def singleVertexGap(limits=DEFAULT_LIMITS):
    """
    With patience 1 and n equally likely unit edges, every prober (and the
    configuration LP) gets 1/n, while the realized graph's maximum matching
    is worth M{1 - (1 - 1/n)^n}.
    """
    g = embeddedInstance(SINGLE_VERTEX_GAP)
    n = len(g.offline)
    (v,) = g.online
    committal = committalOpt(g, limits)
    relaxation = solveLinearProgram(buildConfigLP(g, limits)).objectiveValue
    online = exactExpectedValue(GREEDY_DP, g, EXPLICIT, [v], limits)
    prophet = expectedOptimumMatching(g, limits)
    expectedProphet = 1.0 - (1.0 - 1.0 / n) ** n
    passed = (
        _close(committal, 1.0 / n)
        and _close(relaxation, 1.0 / n)
        and _close(online, 1.0 / n)
        and _close(prophet, expectedProphet)
    )
    return Reproduction(
        SINGLE_VERTEX_GAP,
        passed,
        [
            "committal benchmark: {!r} (expected 1/{})".format(committal, n),
            "configuration LP: {!r}".format(relaxation),
            "greedy-dp: {!r}".format(online),
            "expected optimum matching: {!r} (expected {!r})".format(
                prophet, expectedProphet
            ),
        ],
    )


def chargingIdentity(limits=DEFAULT_LIMITS, instances=5, runs=20, seed=0):
    """
    On random instances, every charged Greedy-DP run hands out exactly its
    matched weight, under both charging curves.
    """
    worst = 0.0
    checked = 0
    for i in range(instances):
        g = generateRandomInstance(InstanceParams(4, 4, patience=(1, 3)), seed + i)
        oracle = StarOracle(g, limits)
        for curve in (ROM_CURVE, ADVERSARIAL_CURVE):
            for j in range(runs):
                record = runGreedyDPCharged(
                    g, rng=trialGenerator(seed + i, j), curve=curve, oracle=oracle
                )
                worst = max(worst, chargingIdentityGap(record))
                checked += 1
    return Reproduction(
        CHARGING_IDENTITY,
        worst <= _CLOSE,
        [
            "charged runs: {}".format(checked),
            "largest gap between weight and charges: {!r}".format(worst),
        ],
    )


CASES = {
    COMMITMENT_GAP: commitmentGap,
    NONRANKABLE_STAR: nonrankableStar,
    SINGLE_VERTEX_GAP: singleVertexGap,
    CHARGING_IDENTITY: chargingIdentity,
}

ALIASES = {
    "propA1": COMMITMENT_GAP,
    "example41": NONRANKABLE_STAR,
    "footnote1": SINGLE_VERTEX_GAP,
}


def caseNamed(name):
    """
    The case called C{name}, which may be an alias.

    @raise KeyError: if there is no such case.
    """
    name = ALIASES.get(name, name)
    if name not in CASES:
        raise KeyError(name)
    return name


def reproduce(case, limits=DEFAULT_LIMITS):
    """
    Run the case named C{case}.

    @raise KeyError: if there is no such case.
    """
    result = CASES[caseNamed(case)](limits)
    _log.info(
        "{case}: {outcome}", case=case, outcome="pass" if result.passed else "fail"
    )
    return result


def reproduceAll(limits=DEFAULT_LIMITS):
    return [reproduce(case, limits) for case in CASES]

