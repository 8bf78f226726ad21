# -*- test-case-name: stochmatch._test.test_cli -*-

"""
The C{stochmatch} command line tool.
"""

from __future__ import print_function

import argparse
import csv
import io
import json
import os
import sys

from twisted.logger import (
    FilteringLogObserver,
    LogLevel,
    LogLevelFilterPredicate,
    globalLogPublisher,
    textFileLogObserver,
)

from ._benchmarks import (
    committalOpt,
    noncommittalOpt,
    noncommittalStarValues,
    relaxedBenchmarkRun,
)
from ._config import limitsFromEnvironment
from ._errors import CapExceeded, InternalCheckFailed, StochasticMatchingError
from ._harness import (
    ALGORITHMS,
    BENCHMARKS,
    COMMITTAL,
    EXACT,
    EXPLICIT,
    MONTE_CARLO,
    ORDER_MODELS,
    REPORT_COLUMNS,
    ExperimentConfig,
    readReportRows,
    runExperiment,
    summarize,
    trialGenerator,
    writeReports,
)
from ._lp import formatCplexLP
from ._model import validateGraph
from ._relaxations import (
    buildConfigLP,
    buildDynamicProgramLP,
    buildNoncommittalLP,
    buildStandardLP,
    buildStandardUnitLP,
    starValues,
)
from ._reproduce import ALIASES, CASES, reproduce
from ._serialize import loadInstance
from ._simplex import solveLinearProgram

OK = 0
INVALID = 1
CAP_EXCEEDED = 2
CHECK_FAILED = 3

_LP_BUILDERS = {
    "config": lambda g, limits: buildConfigLP(g, limits),
    "std-unit": lambda g, limits: buildStandardUnitLP(g),
    "std": lambda g, limits: buildStandardLP(g),
    "dp": lambda g, limits: buildDynamicProgramLP(g, starValues(g, limits), limits),
    "dp-non": lambda g, limits: buildNoncommittalLP(
        g, noncommittalStarValues(g, limits), limits
    ),
}


class _Failed(Exception):
    """
    A command finished with a non-zero exit code.
    """

    def __init__(self, code):
        self.code = code
        super(_Failed, self).__init__(code)


def _instanceId(path):
    return os.path.splitext(os.path.basename(path))[0]


def _load(path, _print):
    """
    Parse and validate the instance at C{path}.

    @raise _Failed: with L{INVALID} if it does not parse or validate.
    """
    g = loadInstance(path)
    report = validateGraph(g)
    if not report.valid:
        for problem in report.problems:
            _print("{}: {}".format(path, problem))
        raise _Failed(INVALID)
    return g


def _validate(args, limits, _print):
    failed = False
    for path in args.instances:
        try:
            g = loadInstance(path)
        except (StochasticMatchingError, EnvironmentError) as e:
            _print("{}: {}".format(path, e))
            failed = True
            continue
        report = validateGraph(g)
        if report.valid:
            _print("{}: ok".format(path))
        for problem in report.problems:
            _print("{}: {}".format(path, problem))
            failed = True
    return INVALID if failed else OK


def _solveLP(args, limits, _print):
    g = _load(args.instance, _print)
    lp = _LP_BUILDERS[args.which](g, limits)
    if args.dump:
        with io.open(args.dump, "w", encoding="utf-8") as f:
            f.write(formatCplexLP(lp))
    solution = solveLinearProgram(lp)
    _print("status: {}".format(solution.status))
    if solution.optimal:
        _print("optimum: {!r}".format(solution.objectiveValue))
    return OK


def _benchmark(args, limits, _print):
    g = _load(args.instance, _print)
    if args.which == "committal":
        _print("committal: {!r}".format(committalOpt(g, limits)))
    elif args.which == "noncommittal":
        _print("noncommittal: {!r}".format(noncommittalOpt(g, limits)))
    else:
        lp = buildConfigLP(g, limits)
        solution = solveLinearProgram(lp)
        weights = []
        for i in range(args.trials):
            rng = trialGenerator(args.seed, i)
            weights.append(relaxedBenchmarkRun(g, lp, solution, rng).weight(g))
        estimate = summarize(weights)
        _print(
            "relaxed: {!r} +- {!r} over {} trials (LP optimum {!r})".format(
                estimate.mean,
                estimate.stderr,
                estimate.trials,
                solution.objectiveValue,
            )
        )
    return OK


def _simulate(args, limits, _print):
    g = _load(args.instance, _print)
    order = None
    if args.order == EXPLICIT:
        if not args.arrivals:
            _print("--order explicit needs --arrivals")
            return INVALID
        order = tuple(args.arrivals.split(","))
        if sorted(order) != sorted(g.online):
            _print("--arrivals must list every online vertex exactly once")
            return INVALID
    config = ExperimentConfig(
        _instanceId(args.instance),
        args.alg,
        args.order,
        args.trials,
        args.seed,
        args.mode,
        order,
        args.benchmark,
        args.threads,
    )
    runs = []

    def onRun(record):
        runs.append(json.dumps(record.asJSON(g), sort_keys=True))

    report = runExperiment(g, config, limits, onRun if args.dump_runs else None)
    if args.dump_runs:
        with io.open(args.dump_runs, "w", encoding="utf-8") as f:
            for line in runs:
                f.write(line + "\n")
    if args.format == "json":
        _print(json.dumps(report.asRow(), sort_keys=True))
    else:
        stream = io.StringIO()
        writeReports([report], stream)
        _print(stream.getvalue().rstrip("\n"))
    return OK


def _reproduce(args, limits, _print):
    cases = sorted(CASES) if args.case == "all" else [args.case]
    failed = False
    for case in cases:
        result = reproduce(case, limits)
        for line in result.lines:
            _print("{}: {}".format(case, line))
        _print("{}: {}".format(case, "pass" if result.passed else "fail"))
        failed = failed or not result.passed
    return CHECK_FAILED if failed else OK


def _report(args, limits, _print):
    rows = []
    for path in args.reports:
        with io.open(path, "r", encoding="utf-8", newline="") as f:
            try:
                rows.extend(readReportRows(f))
            except ValueError as e:
                _print("{}: {}".format(path, e))
                return INVALID
    stream = io.StringIO()
    writer = csv.DictWriter(stream, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    _print(stream.getvalue().rstrip("\n"))
    failing = [row for row in rows if row["pass"] != "pass"]
    _print(
        "{} rows, {} passing, {} failing".format(
            len(rows), len(rows) - len(failing), len(failing)
        )
    )
    return OK


def _parser(progname):
    parser = argparse.ArgumentParser(
        prog=progname,
        description="Online stochastic matching with probing and commitment.",
    )
    parser.add_argument(
        "--verbose", "-v", default=False, action="store_true", help="log debug events"
    )
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    validate = commands.add_parser("validate", help="check instance files")
    validate.add_argument("instances", nargs="+")
    validate.set_defaults(run=_validate)

    solve = commands.add_parser("solve-lp", help="solve an LP relaxation")
    solve.add_argument("instance")
    solve.add_argument("--which", choices=sorted(_LP_BUILDERS), default="config")
    solve.add_argument("--dump", help="write the LP in CPLEX LP format here")
    solve.set_defaults(run=_solveLP)

    benchmark = commands.add_parser("benchmark", help="compute a benchmark")
    benchmark.add_argument("instance")
    benchmark.add_argument(
        "--which",
        choices=["committal", "noncommittal", "relaxed"],
        default="committal",
    )
    benchmark.add_argument("--trials", type=_positive, default=10000)
    benchmark.add_argument("--seed", type=int, default=0)
    benchmark.set_defaults(run=_benchmark)

    simulate = commands.add_parser("simulate", help="evaluate an online algorithm")
    simulate.add_argument("instance")
    simulate.add_argument("--alg", choices=ALGORITHMS, required=True)
    simulate.add_argument("--order", choices=ORDER_MODELS, default="rom")
    simulate.add_argument("--arrivals", help="comma-separated explicit order")
    simulate.add_argument("--trials", type=_positive, default=10000)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--threads", type=_positive, default=1)
    simulate.add_argument("--mode", choices=[EXACT, MONTE_CARLO], default=MONTE_CARLO)
    simulate.add_argument("--benchmark", choices=BENCHMARKS, default=COMMITTAL)
    simulate.add_argument("--format", choices=["csv", "json"], default="csv")
    simulate.add_argument("--dump-runs", help="write JSON lines run records here")
    simulate.set_defaults(run=_simulate)

    reproduction = commands.add_parser("reproduce", help="replay a worked example")
    reproduction.add_argument(
        "--case",
        choices=sorted(CASES) + sorted(ALIASES) + ["all"],
        default="all",
    )
    reproduction.set_defaults(run=_reproduce)

    report = commands.add_parser("report", help="merge ratio report CSVs")
    report.add_argument("reports", nargs="+")
    report.set_defaults(run=_report)
    return parser


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1, not {}".format(value))
    return value


def tool(
    _progname=sys.argv[0],
    _argv=sys.argv[1:],
    _print=print,
    _environ=os.environ,
    _stderr=sys.stderr,
    _publisher=globalLogPublisher,
):
    """
    Entry point for the command line utility.

    @return: the exit code.
    """
    try:
        args = _parser(_progname).parse_args(_argv)
    except SystemExit as e:
        return OK if not e.code else INVALID
    try:
        limits = limitsFromEnvironment(_environ)
    except ValueError as e:
        _print(str(e))
        return INVALID
    level = LogLevel.debug if args.verbose else LogLevel.warn
    observer = FilteringLogObserver(
        textFileLogObserver(_stderr),
        [LogLevelFilterPredicate(defaultLogLevel=level)],
    )
    _publisher.addObserver(observer)
    try:
        return args.run(args, limits, _print)
    except _Failed as e:
        return e.code
    except CapExceeded as e:
        _print(str(e))
        return CAP_EXCEEDED
    except InternalCheckFailed as e:
        _print(str(e))
        return CHECK_FAILED
    except (StochasticMatchingError, EnvironmentError) as e:
        _print(str(e))
        return INVALID
    finally:
        _publisher.removeObserver(observer)
