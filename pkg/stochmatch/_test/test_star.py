from itertools import combinations
from unittest import TestCase

from .._config import Limits
from .._constraints import Budget, ExplicitStrings, Patience
from .._errors import CapExceeded
from .._generate import BUDGET, InstanceParams, generateRandomInstance
from .._model import edgeWeightedGraph, vertexWeightedGraph
from .._probing import enumerateFeasibleStrings, expectedValue
from .._serialize import embeddedInstance
from .._star import (
    ALIGNED_EXTREME_PATIENCE,
    ALIGNED_PROBABILITIES,
    ANTI_MONOTONE_BUDGET,
    Ranking,
    StarOracle,
    dpOpt,
    optStarValue,
    rankabilityConditions,
    rankingProbeString,
    verifyRankable,
)
from .test_model import commitmentGapGraph


def budgetGraph(firstProbability):
    """
    Edge weights 3, 2, 1 with costs 2, 1, 1 under a budget of 2.
    """
    return edgeWeightedGraph(
        ["u1", "u2", "u3"],
        ["v"],
        [
            ("u1", "v", firstProbability, 3.0),
            ("u2", "v", 0.5, 2.0),
            ("u3", "v", 0.5, 1.0),
        ],
        {"v": Budget(2.0, {0: 2.0, 1: 1.0, 2: 1.0})},
    )


def unitPatienceStar():
    return vertexWeightedGraph(
        ["u1", "u2", "u3"],
        ["v"],
        {"u1": 1.0, "u2": 2.0, "u3": 3.0},
        [("u1", "v", 0.5), ("u2", "v", 0.5), ("u3", "v", 0.5)],
        {"v": Patience(1)},
    )


class DynamicProgramTests(TestCase):
    """
    Tests for L{dpOpt}.
    """

    def test_commitmentGap(self):
        """
        With every offline vertex free, probing u2 then u1 (worth 3.36)
        beats any string starting with the heavy but unlikely u3 (worth
        3.356).
        """
        policy = dpOpt(commitmentGapGraph(), "v", {"u1", "u2", "u3"})
        self.assertEqual(policy.probeString, (1, 0))
        self.assertAlmostEqual(policy.value, 3.36)

    def test_restricted(self):
        policy = dpOpt(commitmentGapGraph(), "v", {"u1", "u3"})
        self.assertEqual(policy.probeString, (2, 0))
        self.assertAlmostEqual(policy.value, 0.98 + 0.99 * 2.4)

    def test_nothingFree(self):
        policy = dpOpt(commitmentGapGraph(), "v", set())
        self.assertEqual(policy.probeString, ())
        self.assertEqual(policy.value, 0.0)

    def test_unitPatience(self):
        self.assertAlmostEqual(optStarValue(unitPatienceStar(), "v", {"u1", "u2"}), 1.0)

    def test_budget(self):
        """
        The budget either pays for the heaviest edge alone or for the two
        cheaper ones.
        """
        likely = dpOpt(budgetGraph(0.5), "v", {"u1", "u2", "u3"})
        self.assertEqual(likely.probeString, (0,))
        self.assertAlmostEqual(likely.value, 1.5)
        unlikely = dpOpt(budgetGraph(0.2), "v", {"u1", "u2", "u3"})
        self.assertEqual(unlikely.probeString, (1, 2))
        self.assertAlmostEqual(unlikely.value, 1.25)

    def test_explicitStrings(self):
        """
        Constraints that fix the probing order are solved over their listed
        strings.
        """
        base = commitmentGapGraph()
        g = vertexWeightedGraph(
            base.offline,
            base.online,
            base.vertexWeights,
            [(e.offline, e.online, e.probability) for e in base.edges],
            {"v": ExplicitStrings([(1,), (1, 0)])},
        )
        self.assertEqual(dpOpt(g, "v", {"u1", "u2", "u3"}).probeString, (1, 0))
        self.assertEqual(dpOpt(g, "v", {"u1", "u3"}).probeString, ())

    def test_explicitCap(self):
        base = commitmentGapGraph()
        g = vertexWeightedGraph(
            base.offline,
            base.online,
            base.vertexWeights,
            [(e.offline, e.online, e.probability) for e in base.edges],
            {"v": ExplicitStrings([(1,), (1, 0)])},
        )
        self.assertRaises(
            CapExceeded, dpOpt, g, "v", {"u1", "u2", "u3"}, Limits(stringCap=1)
        )

    def test_agreesWithEnumeration(self):
        """
        Against every set of free offline vertices, the dynamic program is
        worth as much as the best of all feasible strings.
        """
        for params in [
            InstanceParams(4, 1, patience=(1, 3), vertexWeighted=False),
            InstanceParams(4, 1, constraint=BUDGET),
        ]:
            for seed in range(5):
                g = generateRandomInstance(params, seed)
                for size in range(len(g.offline) + 1):
                    for available in combinations(g.offline, size):
                        edges = [
                            e
                            for e in g.incident("v1")
                            if g.edge(e).offline in available
                        ]
                        strings = enumerateFeasibleStrings(g, "v1", edges).strings
                        best = max(expectedValue(g, s) for s in strings)
                        self.assertAlmostEqual(
                            dpOpt(g, "v1", available).value, best, places=9
                        )


class StarOracleTests(TestCase):
    """
    Tests for L{StarOracle}.
    """

    def test_memoizedOnNeighbours(self):
        """
        Offline vertices that are not neighbours of C{v} do not change the
        key.
        """
        g = vertexWeightedGraph(
            ["u1", "u2"],
            ["v"],
            {"u1": 1.0, "u2": 1.0},
            [("u1", "v", 0.5)],
            {"v": Patience(1)},
        )
        oracle = StarOracle(g)
        self.assertIs(oracle.policy("v", {"u1"}), oracle.policy("v", {"u1", "u2"}))
        self.assertEqual(oracle.value("v", {"u2"}), 0.0)
        self.assertIs(oracle.graph, g)


class RankingTests(TestCase):
    """
    Tests for L{Ranking}, L{rankingProbeString} and L{verifyRankable}.
    """

    def test_repeatedEdge(self):
        self.assertRaises(ValueError, Ranking, (0, 1, 0))

    def test_rankingProbeString(self):
        g = commitmentGapGraph()
        ranking = Ranking((0, 1, 2))
        everyone = {"u1", "u2", "u3"}
        self.assertEqual(rankingProbeString(g, "v", ranking, everyone), (0, 1))
        self.assertEqual(rankingProbeString(g, "v", ranking, {"u2", "u3"}), (1, 2))

    def test_unitPatienceRankable(self):
        g = unitPatienceStar()
        witness = verifyRankable(g, "v")
        self.assertEqual(witness, Ranking((2, 1, 0)))
        self.assertIn(ALIGNED_EXTREME_PATIENCE, rankabilityConditions(g, "v"))

    def test_nonrankable(self):
        """
        The optimal strings with every offline vertex free and with u2 taken
        cannot come from one ranking.
        """
        g = embeddedInstance("nonrankable-star")
        oracle = StarOracle(g)
        self.assertEqual(oracle.policy("v", g.offline).probeString, (0, 1))
        self.assertEqual(oracle.policy("v", {"u1", "u3", "u4"}).probeString, (2, 3))
        self.assertIsNone(verifyRankable(g, "v", oracle=oracle))
        self.assertEqual(rankabilityConditions(g, "v"), frozenset())

    def test_subsetCap(self):
        self.assertRaises(
            CapExceeded, verifyRankable, commitmentGapGraph(), "v", Limits(subsetCap=2)
        )

    def test_alignedProbabilities(self):
        """
        Heavier offline vertices with higher probabilities satisfy the
        alignment condition.
        """
        g = vertexWeightedGraph(
            ["u1", "u2", "u3"],
            ["v"],
            {"u1": 1.0, "u2": 2.0, "u3": 3.0},
            [("u1", "v", 0.2), ("u2", "v", 0.4), ("u3", "v", 0.6)],
            {"v": Patience(2)},
        )
        conditions = rankabilityConditions(g, "v")
        self.assertIn(ALIGNED_PROBABILITIES, conditions)
        self.assertNotIn(ALIGNED_EXTREME_PATIENCE, conditions)
        self.assertIsNotNone(verifyRankable(g, "v"))

    def test_antiMonotoneBudget(self):
        g = edgeWeightedGraph(
            ["u1", "u2"],
            ["v"],
            [("u1", "v", 0.2, 1.0), ("u2", "v", 0.5, 1.0)],
            {"v": Budget(2.0, {0: 2.0, 1: 1.0})},
        )
        self.assertEqual(
            rankabilityConditions(g, "v"), frozenset([ANTI_MONOTONE_BUDGET])
        )
