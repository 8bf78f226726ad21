# -*- test-case-name: stochmatch -*-
from ._config import DEFAULT_LIMITS, Limits, limitsFromEnvironment
from ._constraints import Budget, ExplicitFamily, ExplicitStrings, Patience
from ._errors import (
    CapExceeded,
    ConstraintViolation,
    InternalCheckFailed,
    InvalidDistribution,
    InvalidInstance,
    InvalidLinearProgram,
    ProbeRejected,
    StochasticMatchingError,
    UnknownEdge,
    UnknownVertex,
    UnsupportedConstraint,
)
from ._model import (
    Edge,
    Matching,
    OneSidedMatching,
    StochasticGraph,
    ValidationReport,
    edgeWeightedGraph,
    inducedSubgraph,
    validateGraph,
    vertexWeightedGraph,
)
from ._serialize import (
    embeddedInstance,
    loadInstance,
    parseInstance,
    serializeInstance,
)
from ._probing import (
    checkPermutationClosed,
    checkPrefixClosed,
    checkSubstringClosed,
    enumerateFeasibleStrings,
    expectedValue,
    membership,
    survival,
)
from ._star import (
    Ranking,
    StarOracle,
    StarPolicy,
    dpOpt,
    optStarValue,
    rankabilityConditions,
    rankingProbeString,
    verifyRankable,
)
from ._lp import LinearProgram, LinearProgramBuilder, LpSolution, formatCplexLP
from ._simplex import solveLinearProgram
from ._relaxations import (
    ConfigurationOracle,
    buildConfigLP,
    buildDynamicProgramLP,
    buildNoncommittalLP,
    buildStandardLP,
    buildStandardUnitLP,
    edgeMarginals,
)
from ._benchmarks import (
    committalAgreesWithNoncommittal,
    committalOpt,
    expectedOptimumMatching,
    maxWeightMatching,
    noncommittalOpt,
    relaxedBenchmarkRun,
)
from ._session import ProbeSession
from ._online import (
    ADVERSARIAL_CURVE,
    GREEDY_DP,
    GREEDY_PROBE,
    ROM_CURVE,
    ROM_LP,
    ArrivalOrder,
    RunRecord,
    coupledDeletionRun,
    criticalTime,
    replayRun,
    runGreedyDP,
    runGreedyDPCharged,
    runGreedyProbe,
    runRandomOrderLP,
    vertexProbe,
)
from ._harness import (
    COMMITTAL,
    EXACT,
    EXPLICIT,
    MONTE_CARLO,
    NONCOMMITTAL,
    ROM,
    TIMES,
    WORST,
    ExperimentConfig,
    RatioReport,
    exactExpectedValue,
    monteCarlo,
    randomOrderRatio,
    runExperiment,
    worstOrderRatio,
)
from ._checks import (
    availabilityProfile,
    commitValueProfile,
    dualFeasibilityEstimate,
    offlineChargeBoundHolds,
    subgraphValueCheck,
)
from ._generate import InstanceParams, generateRandomInstance
from ._reproduce import reproduce

__all__ = [
    "COMMITTAL",
    "EXACT",
    "EXPLICIT",
    "GREEDY_DP",
    "GREEDY_PROBE",
    "MONTE_CARLO",
    "NONCOMMITTAL",
    "ROM",
    "ROM_LP",
    "TIMES",
    "WORST",
    "ADVERSARIAL_CURVE",
    "ArrivalOrder",
    "Budget",
    "CapExceeded",
    "ConfigurationOracle",
    "ConstraintViolation",
    "DEFAULT_LIMITS",
    "Edge",
    "ExperimentConfig",
    "ExplicitFamily",
    "ExplicitStrings",
    "InstanceParams",
    "InternalCheckFailed",
    "InvalidDistribution",
    "InvalidInstance",
    "InvalidLinearProgram",
    "Limits",
    "LinearProgram",
    "LinearProgramBuilder",
    "LpSolution",
    "Matching",
    "OneSidedMatching",
    "Patience",
    "ProbeRejected",
    "ProbeSession",
    "ROM_CURVE",
    "Ranking",
    "RatioReport",
    "RunRecord",
    "StarOracle",
    "StarPolicy",
    "StochasticGraph",
    "StochasticMatchingError",
    "UnknownEdge",
    "UnknownVertex",
    "UnsupportedConstraint",
    "ValidationReport",
    "availabilityProfile",
    "buildConfigLP",
    "buildDynamicProgramLP",
    "buildNoncommittalLP",
    "buildStandardLP",
    "buildStandardUnitLP",
    "checkPermutationClosed",
    "checkPrefixClosed",
    "checkSubstringClosed",
    "commitValueProfile",
    "committalAgreesWithNoncommittal",
    "committalOpt",
    "coupledDeletionRun",
    "criticalTime",
    "dpOpt",
    "dualFeasibilityEstimate",
    "edgeMarginals",
    "edgeWeightedGraph",
    "embeddedInstance",
    "enumerateFeasibleStrings",
    "exactExpectedValue",
    "expectedOptimumMatching",
    "expectedValue",
    "formatCplexLP",
    "generateRandomInstance",
    "inducedSubgraph",
    "limitsFromEnvironment",
    "loadInstance",
    "maxWeightMatching",
    "membership",
    "monteCarlo",
    "noncommittalOpt",
    "offlineChargeBoundHolds",
    "optStarValue",
    "parseInstance",
    "randomOrderRatio",
    "rankabilityConditions",
    "rankingProbeString",
    "relaxedBenchmarkRun",
    "replayRun",
    "reproduce",
    "runExperiment",
    "runGreedyDP",
    "runGreedyDPCharged",
    "runGreedyProbe",
    "runRandomOrderLP",
    "serializeInstance",
    "solveLinearProgram",
    "subgraphValueCheck",
    "survival",
    "validateGraph",
    "verifyRankable",
    "vertexProbe",
    "vertexWeightedGraph",
    "worstOrderRatio",
]
