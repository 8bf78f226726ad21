from unittest import TestCase

import numpy as np

from .._benchmarks import (
    committalAgreesWithNoncommittal,
    committalOpt,
    expectedOptimumMatching,
    maxWeightMatching,
    noncommittalOpt,
    noncommittalStarValues,
    relaxedBenchmarkRun,
)
from .._config import Limits
from .._constraints import Patience
from .._errors import CapExceeded
from .._generate import InstanceParams, generateRandomInstance
from .._harness import summarize
from .._model import edgeWeightedGraph
from .._relaxations import buildConfigLP
from .._serialize import embeddedInstance
from .._simplex import solveLinearProgram
from .test_model import certainGraph, commitmentGapGraph, sharedOfflineGraph


class MaxWeightMatchingTests(TestCase):
    """
    Tests for L{maxWeightMatching}.
    """

    def test_crossing(self):
        """
        The heaviest single edge is not always in the heaviest matching.
        """
        g = edgeWeightedGraph(
            ["u1", "u2"],
            ["v1", "v2"],
            [
                ("u1", "v1", 1.0, 3.0),
                ("u1", "v2", 1.0, 2.0),
                ("u2", "v1", 1.0, 2.0),
                ("u2", "v2", 1.0, 0.5),
            ],
            {"v1": Patience(1), "v2": Patience(1)},
        )
        matching = maxWeightMatching(g, g.edgeIds)
        self.assertEqual(matching.edges, frozenset([1, 2]))
        self.assertEqual(matching.weight, 4.0)

    def test_subset(self):
        matching = maxWeightMatching(certainGraph(), [0, 2])
        self.assertEqual(matching.edges, frozenset([0]))

    def test_tieBreak(self):
        """
        Among equally heavy matchings the smallest sorted id tuple wins.
        """
        g = certainGraph()
        self.assertEqual(maxWeightMatching(g, [1, 3]).edges, frozenset([1]))

    def test_empty(self):
        matching = maxWeightMatching(certainGraph(), [])
        self.assertEqual(matching.edges, frozenset())
        self.assertEqual(matching.weight, 0.0)

    def test_cap(self):
        self.assertRaises(
            CapExceeded,
            maxWeightMatching,
            certainGraph(),
            [0, 1, 2],
            Limits(exhaustiveEdgeCap=2),
        )


class CommittalTests(TestCase):
    """
    Tests for L{committalOpt} and L{noncommittalOpt}.
    """

    def test_commitmentGap(self):
        """
        Committing costs value when the vertex could otherwise wait to see
        whether the heavy unlikely edge turns up.
        """
        g = commitmentGapGraph()
        committal = committalOpt(g)
        noncommittal = noncommittalOpt(g)
        self.assertAlmostEqual(committal, 3.36)
        self.assertAlmostEqual(noncommittal, 3.924)
        self.assertAlmostEqual(committal / noncommittal, 0.856269, places=6)

    def test_referenceAgrees(self):
        """
        Pruning dominated probes does not change the committal value.
        """
        for g in [commitmentGapGraph(), sharedOfflineGraph(), certainGraph()]:
            self.assertAlmostEqual(committalOpt(g), committalOpt(g, reference=True))

    def test_shared(self):
        """
        With unit patience and a single offline vertex both benchmarks probe
        one edge after another.
        """
        g = sharedOfflineGraph()
        self.assertAlmostEqual(committalOpt(g), 0.75)
        self.assertAlmostEqual(noncommittalOpt(g), 0.75)

    def test_certain(self):
        self.assertAlmostEqual(committalOpt(certainGraph()), 3.0)

    def test_stateCap(self):
        self.assertRaises(
            CapExceeded, committalOpt, commitmentGapGraph(), Limits(stateCap=2)
        )
        self.assertRaises(
            CapExceeded, noncommittalOpt, commitmentGapGraph(), Limits(stateCap=2)
        )


class StarAgreementTests(TestCase):
    """
    Tests for L{noncommittalStarValues} and
    L{committalAgreesWithNoncommittal}.
    """

    def test_starValues(self):
        values = noncommittalStarValues(commitmentGapGraph())
        self.assertEqual(len(values), 7)
        self.assertAlmostEqual(values[("v", frozenset(["u1", "u2", "u3"]))], 3.924)
        self.assertAlmostEqual(values[("v", frozenset(["u1", "u2"]))], 3.36)

    def test_disagree(self):
        self.assertFalse(committalAgreesWithNoncommittal(commitmentGapGraph()))

    def test_unitPatienceAgrees(self):
        self.assertTrue(
            committalAgreesWithNoncommittal(embeddedInstance("single-vertex-gap"))
        )


class ExpectedOptimumMatchingTests(TestCase):
    """
    Tests for L{expectedOptimumMatching}.
    """

    def test_singleVertexGap(self):
        """
        Knowing every edge state, one of three unit edges of probability
        1/3 is present with probability M{1 - (2/3)^3}.
        """
        g = embeddedInstance("single-vertex-gap")
        self.assertAlmostEqual(expectedOptimumMatching(g), 19.0 / 27)

    def test_shared(self):
        self.assertAlmostEqual(expectedOptimumMatching(sharedOfflineGraph()), 0.75)

    def test_cap(self):
        self.assertRaises(
            CapExceeded,
            expectedOptimumMatching,
            commitmentGapGraph(),
            Limits(exhaustiveEdgeCap=2),
        )


class RelaxedBenchmarkTests(TestCase):
    """
    Tests for L{relaxedBenchmarkRun}.
    """

    def test_oneSided(self):
        g = sharedOfflineGraph()
        lp = buildConfigLP(g)
        solution = solveLinearProgram(lp)
        rng = np.random.default_rng(3)
        for _ in range(20):
            matching = relaxedBenchmarkRun(g, lp, solution, rng)
            self.assertTrue(matching.isOneSidedIn(g))

    def test_offlineReused(self):
        """
        When every edge is active both online vertices keep the same
        offline vertex.
        """
        g = sharedOfflineGraph()
        lp = buildConfigLP(g)
        solution = solveLinearProgram(lp)
        matching = relaxedBenchmarkRun(
            g, lp, solution, np.random.default_rng(0), {0: True, 1: True}
        )
        self.assertEqual(sorted(matching.edges), [0, 1])
        self.assertEqual(matching.weight(g), 2.0)

    def test_meanIsConfigurationOptimum(self):
        """
        The relaxed benchmark is worth the configuration LP optimum in
        expectation, and each offline vertex is used at most once in
        expectation.
        """
        g = generateRandomInstance(InstanceParams(2, 3), 1)
        lp = buildConfigLP(g)
        solution = solveLinearProgram(lp)
        rng = np.random.default_rng(5)
        runs = [relaxedBenchmarkRun(g, lp, solution, rng) for _ in range(3000)]
        weight = summarize([matching.weight(g) for matching in runs])
        self.assertLessEqual(
            abs(weight.mean - solution.objectiveValue), weight.halfWidth(4.0) + 1e-9
        )
        for u in g.offline:
            incidence = summarize(
                [
                    sum(1 for e in matching.edges if g.edge(e).offline == u)
                    for matching in runs
                ]
            )
            self.assertLessEqual(incidence.mean, 1.0 + incidence.halfWidth() + 1e-9)
