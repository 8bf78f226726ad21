# -*- test-case-name: stochmatch._test.test_harness -*-

"""
Exact and Monte Carlo evaluation of the online algorithms, and the checks
comparing them with the benchmarks.

Exact evaluation recurses over arrivals and the set of free offline
vertices, branching on which edge of the probed string (if any) is the
first active one and, for the random-order LP algorithm, on which string
is drawn.  This sums the same terms as enumerating every edge-state
assignment, grouped by the states that affect the run.
"""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations

import attr
import numpy as np
from twisted.logger import Logger

from ._benchmarks import committalOpt, noncommittalOpt, noncommittalStarValues
from ._config import DEFAULT_LIMITS
from ._constraints import Patience
from ._errors import CapExceeded, UnsupportedConstraint
from ._online import (
    GREEDY_DP,
    GREEDY_PROBE,
    ROM_LP,
    ArrivalOrder,
    drawArrivalTimes,
    greedyProbeEdge,
    passThreshold,
    runGreedyDP,
    runGreedyProbe,
    runRandomOrderLP,
)
from ._relaxations import (
    ConfigurationOracle,
    buildConfigLP,
    buildDynamicProgramLP,
    buildNoncommittalLP,
    buildStandardLP,
    buildStandardUnitLP,
    starValues,
)
from ._simplex import solveLinearProgram
from ._star import StarOracle, rankabilityConditions

_log = Logger()

ALGORITHMS = (ROM_LP, GREEDY_DP, GREEDY_PROBE)

ROM = "rom"
EXPLICIT = "explicit"
WORST = "worst"
TIMES = "Y"
ORDER_MODELS = (ROM, EXPLICIT, WORST, TIMES)

EXACT = "exact"
MONTE_CARLO = "monte-carlo"

COMMITTAL = "committal"
NONCOMMITTAL = "noncommittal"
LP_CONFIG = "lp-config"
LP_STD_UNIT = "lp-std-unit"
LP_STD = "lp-std"
LP_DP = "lp-dp"
LP_DP_NON = "lp-dp-non"
BENCHMARKS = (
    COMMITTAL,
    NONCOMMITTAL,
    LP_CONFIG,
    LP_STD_UNIT,
    LP_STD,
    LP_DP,
    LP_DP_NON,
)

HALF = 0.5
ONE_MINUS_INVERSE_E = 1.0 - 1.0 / math.e


def trialGenerator(seed, trial):
    """
    The generator for one trial, derived from the experiment seed and the
    trial index alone.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def benchmarkValue(g, benchmark, limits=DEFAULT_LIMITS):
    """
    Compute one of the L{BENCHMARKS} for C{g}.
    """
    if benchmark == COMMITTAL:
        return committalOpt(g, limits)
    if benchmark == NONCOMMITTAL:
        return noncommittalOpt(g, limits)
    if benchmark == LP_CONFIG:
        lp = buildConfigLP(g, limits)
    elif benchmark == LP_STD_UNIT:
        lp = buildStandardUnitLP(g)
    elif benchmark == LP_STD:
        lp = buildStandardLP(g)
    elif benchmark == LP_DP:
        lp = buildDynamicProgramLP(g, starValues(g, limits), limits)
    elif benchmark == LP_DP_NON:
        lp = buildNoncommittalLP(g, noncommittalStarValues(g, limits), limits)
    else:
        raise ValueError("unknown benchmark {!r}".format(benchmark))
    return solveLinearProgram(lp).objectiveValue


def _ratio(value, benchmark):
    if benchmark <= 0.0:
        return 1.0 if value <= 0.0 else math.inf
    return value / benchmark


def _requireUnitPatience(g):
    for v in g.online:
        constraint = g.constraintFor(v)
        if constraint != Patience(1):
            raise UnsupportedConstraint(v, constraint, "unit patience")


class Evaluator(object):
    """
    Runs and exactly evaluates the algorithms on one graph, sharing the star
    and configuration LP solutions between runs.
    """

    def __init__(self, g, limits=DEFAULT_LIMITS):
        self.graph = g
        self.limits = limits
        self.stars = StarOracle(g, limits)
        self.configurations = ConfigurationOracle(g, limits)

    def run(self, algorithm, order, rng, states=None, tracer=None, seed=None):
        g = self.graph
        if algorithm == GREEDY_DP:
            return runGreedyDP(g, order, rng, states, self.stars, tracer, seed)
        if algorithm == GREEDY_PROBE:
            return runGreedyProbe(g, order, rng, states, tracer, seed)
        if algorithm == ROM_LP:
            return runRandomOrderLP(
                g, order, rng, states, self.configurations, tracer, seed
            )
        raise ValueError("unknown algorithm {!r}".format(algorithm))

    def _strings(self, algorithm, order):
        g = self.graph
        if algorithm == GREEDY_DP:
            return lambda t, v, free: [(self.stars.policy(v, free).probeString, 1.0)]
        if algorithm == GREEDY_PROBE:
            _requireUnitPatience(g)

            def single(t, v, free):
                edge = greedyProbeEdge(g, v, free)
                return [((), 1.0)] if edge is None else [((edge,), 1.0)]

            return single
        if algorithm == ROM_LP:
            threshold = passThreshold(len(order))

            def drawn(t, v, free):
                if t + 1 < threshold:
                    return [((), 1.0)]
                return self.configurations.distribution(order[: t + 1], v)

            return drawn
        raise ValueError("unknown algorithm {!r}".format(algorithm))

    def exactForOrder(self, algorithm, order):
        """
        The exact expected matched weight when online vertices arrive in
        C{order}.
        """
        g = self.graph
        if len(g.edges) > self.limits.exhaustiveEdgeCap:
            raise CapExceeded(
                "edges for exact evaluation", self.limits.exhaustiveEdgeCap
            )
        order = tuple(order)
        strings = self._strings(algorithm, order)
        memo = {}

        def value(t, free):
            if t == len(order):
                return 0.0
            key = (t, free)
            if key in memo:
                return memo[key]
            terms = []
            for string, mass in strings(t, order[t], free):
                reach = mass
                for e in string:
                    edge = g.edge(e)
                    if edge.probability > 0.0:
                        if edge.offline in free:
                            rest = value(t + 1, free - {edge.offline})
                            terms.append(
                                reach * edge.probability * (edge.weight + rest)
                            )
                        else:
                            terms.append(reach * edge.probability * value(t + 1, free))
                    reach *= 1.0 - edge.probability
                if reach > 0.0:
                    terms.append(reach * value(t + 1, free))
            memo[key] = math.fsum(terms)
            return memo[key]

        return value(0, frozenset(g.offline))

    def orders(self):
        online = self.graph.online
        if len(online) > self.limits.orderCap:
            raise CapExceeded("arrival orders", self.limits.orderCap)
        return permutations(online)


def exactExpectedValue(
    algorithm, g, orderModel, order=None, limits=DEFAULT_LIMITS, evaluator=None
):
    """
    The exact expected matched weight of C{algorithm} on C{g}: for one
    explicit order, averaged over all orders (L{ROM} and L{TIMES}), or
    minimized over them (L{WORST}).

    @raise CapExceeded: if there are too many edges or orders to enumerate.
    """
    if evaluator is None:
        evaluator = Evaluator(g, limits)
    if orderModel == EXPLICIT:
        if order is None:
            raise ValueError("an explicit order model needs an order")
        return evaluator.exactForOrder(algorithm, order)
    values = [evaluator.exactForOrder(algorithm, o) for o in evaluator.orders()]
    if orderModel == WORST:
        return min(values)
    if orderModel in (ROM, TIMES):
        return math.fsum(values) / len(values)
    raise ValueError("unknown order model {!r}".format(orderModel))


@attr.s(frozen=True)
class Estimate(object):
    """
    A Monte Carlo mean with its standard error.
    """

    mean = attr.ib()
    stderr = attr.ib()
    trials = attr.ib()

    def halfWidth(self, sigmas=3.0):
        return sigmas * self.stderr


def summarize(samples):
    samples = np.asarray(samples, dtype=float)
    if len(samples) > 1:
        stderr = float(np.std(samples, ddof=1) / math.sqrt(len(samples)))
    else:
        stderr = 0.0
    return Estimate(math.fsum(samples.tolist()) / len(samples), stderr, len(samples))


def sampleOrder(g, orderModel, order, rng):
    if orderModel == EXPLICIT:
        if order is None:
            raise ValueError("an explicit order model needs an order")
        return ArrivalOrder(order)
    if orderModel == TIMES:
        return ArrivalOrder.fromTimes(drawArrivalTimes(g.online, rng))
    if orderModel == ROM:
        return ArrivalOrder([g.online[i] for i in rng.permutation(len(g.online))])
    raise ValueError("order model {!r} cannot be sampled".format(orderModel))


def _parallel(function, count, threads):
    if threads <= 1:
        return [function(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(function, range(count)))


def monteCarlo(
    algorithm,
    g,
    orderModel,
    trials,
    seed,
    order=None,
    threads=1,
    limits=DEFAULT_LIMITS,
    evaluator=None,
    onRun=None,
):
    """
    Estimate the expected matched weight of C{algorithm} from C{trials}
    independent runs.  Trial C{i} draws everything from
    L{trialGenerator}C{(seed, i)}, so the estimate does not depend on
    C{threads}.

    @param onRun: called with every L{RunRecord}, in trial order.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if evaluator is None:
        evaluator = Evaluator(g, limits)

    def trial(i):
        rng = trialGenerator(seed, i)
        arrival = sampleOrder(g, orderModel, order, rng)
        return evaluator.run(algorithm, arrival, rng, seed=seed)

    records = _parallel(trial, trials, threads)
    if onRun is not None:
        for record in records:
            onRun(record)
    estimate = summarize([record.matching.weight for record in records])
    _log.info(
        "{algorithm} under {model}: {mean} +- {stderr} over {trials} trials",
        algorithm=algorithm,
        model=orderModel,
        mean=estimate.mean,
        stderr=estimate.stderr,
        trials=trials,
    )
    return estimate


def worstOrderRatio(
    algorithm, g, benchmark=COMMITTAL, limits=DEFAULT_LIMITS, evaluator=None
):
    """
    The smallest ratio, over all arrival orders, of the algorithm's exact
    expected weight to the benchmark.
    """
    value = exactExpectedValue(algorithm, g, WORST, limits=limits, evaluator=evaluator)
    return _ratio(value, benchmarkValue(g, benchmark, limits))


def randomOrderRatio(
    algorithm,
    g,
    benchmark=COMMITTAL,
    limits=DEFAULT_LIMITS,
    trials=10000,
    seed=0,
    evaluator=None,
):
    """
    The ratio of the algorithm's expected weight under a uniformly random
    order to the benchmark: exact when every order can be enumerated,
    estimated from C{trials} runs otherwise.
    """
    if len(g.online) <= limits.orderCap and len(g.edges) <= limits.exhaustiveEdgeCap:
        value = exactExpectedValue(
            algorithm, g, ROM, limits=limits, evaluator=evaluator
        )
    else:
        value = monteCarlo(
            algorithm, g, ROM, trials, seed, limits=limits, evaluator=evaluator
        ).mean
    return _ratio(value, benchmarkValue(g, benchmark, limits))


def thresholdFor(algorithm, orderModel, g):
    """
    The competitive ratio the algorithm is guaranteed under C{orderModel}.

    Greedy-DP reaches M{1 - 1/e} in random order only when every online
    vertex meets a rankability condition; otherwise its order-independent
    M{1/2} applies.
    """
    randomOrder = orderModel in (ROM, TIMES)
    if algorithm == ROM_LP:
        if not randomOrder:
            return 0.0
        return max(0.0, 1.0 / math.e - 1.0 / max(len(g.online), 1))
    if algorithm == GREEDY_PROBE:
        return ONE_MINUS_INVERSE_E if randomOrder else HALF
    if randomOrder and all(rankabilityConditions(g, v) for v in g.online):
        return ONE_MINUS_INVERSE_E
    return HALF


REPORT_COLUMNS = (
    "instance_id",
    "algorithm",
    "order_model",
    "trials",
    "value",
    "stderr",
    "benchmark",
    "benchmark_value",
    "ratio",
    "threshold",
    "pass",
)


@attr.s(frozen=True)
class RatioReport(object):
    """
    An algorithm's value against a benchmark and its guaranteed ratio.
    """

    instanceId = attr.ib()
    algorithm = attr.ib()
    orderModel = attr.ib()
    trials = attr.ib()
    value = attr.ib()
    stderr = attr.ib()
    benchmark = attr.ib()
    benchmarkValue = attr.ib()
    ratio = attr.ib()
    threshold = attr.ib()
    passed = attr.ib()

    def asRow(self):
        return dict(
            zip(
                REPORT_COLUMNS,
                (
                    self.instanceId,
                    self.algorithm,
                    self.orderModel,
                    self.trials,
                    repr(self.value),
                    repr(self.stderr),
                    self.benchmark,
                    repr(self.benchmarkValue),
                    repr(self.ratio),
                    repr(self.threshold),
                    "pass" if self.passed else "fail",
                ),
            )
        )


def ratioReport(
    instanceId,
    algorithm,
    orderModel,
    g,
    value,
    stderr,
    trials,
    benchmark,
    benchmarkResult,
):
    """
    Assemble a L{RatioReport}.  Exact values pass when their ratio reaches
    the threshold within 1e-9; estimates pass when the threshold lies
    within three standard errors below the mean.
    """
    threshold = thresholdFor(algorithm, orderModel, g)
    ratio = _ratio(value, benchmarkResult)
    passed = value + 3.0 * stderr >= threshold * benchmarkResult - 1e-9
    return RatioReport(
        instanceId,
        algorithm,
        orderModel,
        trials,
        value,
        stderr,
        benchmark,
        benchmarkResult,
        ratio,
        threshold,
        passed,
    )


def writeReports(reports, stream):
    """
    Write L{RatioReport}s as CSV with a header row.
    """
    writer = csv.DictWriter(stream, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow(report.asRow())


def readReportRows(stream):
    """
    Read rows written by L{writeReports}, checking the header.
    """
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != REPORT_COLUMNS:
        raise ValueError("not a ratio report: columns {}".format(reader.fieldnames))
    return list(reader)


@attr.s(frozen=True)
class ExperimentConfig(object):
    """
    One experiment: an instance, an algorithm, an order model and how to
    evaluate it.

    @ivar order: the arrival order for the L{EXPLICIT} order model.
    """

    instanceId = attr.ib()
    algorithm = attr.ib(validator=attr.validators.in_(ALGORITHMS))
    orderModel = attr.ib(validator=attr.validators.in_(ORDER_MODELS))
    trials = attr.ib(default=10000)
    seed = attr.ib(default=0)
    mode = attr.ib(
        default=MONTE_CARLO, validator=attr.validators.in_([EXACT, MONTE_CARLO])
    )
    order = attr.ib(default=None)
    benchmark = attr.ib(default=COMMITTAL, validator=attr.validators.in_(BENCHMARKS))
    threads = attr.ib(default=1)

    @trials.validator
    def _positive(self, attribute, value):
        if value < 1:
            raise ValueError("trials must be at least 1, not {}".format(value))


def runExperiment(g, config, limits=DEFAULT_LIMITS, onRun=None):
    """
    Evaluate C{config} on C{g} and compare it with its benchmark.

    The worst-order model is always evaluated exactly.
    """
    evaluator = Evaluator(g, limits)
    if config.mode == EXACT or config.orderModel == WORST:
        value = exactExpectedValue(
            config.algorithm, g, config.orderModel, config.order, limits, evaluator
        )
        stderr, trials = 0.0, 0
    else:
        estimate = monteCarlo(
            config.algorithm,
            g,
            config.orderModel,
            config.trials,
            config.seed,
            config.order,
            config.threads,
            limits,
            evaluator,
            onRun,
        )
        value, stderr, trials = estimate.mean, estimate.stderr, estimate.trials
    return ratioReport(
        config.instanceId,
        config.algorithm,
        config.orderModel,
        g,
        value,
        stderr,
        trials,
        config.benchmark,
        benchmarkValue(g, config.benchmark, limits),
    )
