from unittest import TestCase

from .._constraints import ExplicitFamily, ExplicitStrings, Patience
from .._errors import UnknownEdge, UnknownVertex
from .._model import (
    EDGE_WEIGHTED,
    VERTEX_WEIGHTED,
    Edge,
    Matching,
    OneSidedMatching,
    StochasticGraph,
    edgeWeightedGraph,
    inducedSubgraph,
    validateGraph,
    vertexWeightedGraph,
)


def commitmentGapGraph(patience=2):
    """
    One online vertex over three offline vertices of weights 3, 4 and 98,
    with edge probabilities 0.8, 0.6 and 0.01.
    """
    return vertexWeightedGraph(
        ["u1", "u2", "u3"],
        ["v"],
        {"u1": 3.0, "u2": 4.0, "u3": 98.0},
        [("u1", "v", 0.8), ("u2", "v", 0.6), ("u3", "v", 0.01)],
        {"v": Patience(patience)},
    )


def sharedOfflineGraph():
    """
    Two unit-patience online vertices competing for one offline vertex.
    """
    return vertexWeightedGraph(
        ["u"],
        ["v1", "v2"],
        {"u": 1.0},
        [("u", "v1", 0.5), ("u", "v2", 0.5)],
        {"v1": Patience(1), "v2": Patience(1)},
    )


def certainGraph():
    """
    Two offline vertices of weights 2 and 1, two unit-patience online
    vertices, and every edge certainly active.
    """
    return vertexWeightedGraph(
        ["u1", "u2"],
        ["v1", "v2"],
        {"u1": 2.0, "u2": 1.0},
        [("u1", "v1", 1.0), ("u2", "v1", 1.0), ("u1", "v2", 1.0), ("u2", "v2", 1.0)],
        {"v1": Patience(1), "v2": Patience(1)},
    )


class ValidationTests(TestCase):
    """
    Tests for L{validateGraph}.
    """

    def assertProblem(self, g, fragment):
        report = validateGraph(g)
        self.assertFalse(report.valid)
        self.assertTrue(
            any(fragment in problem for problem in report.problems),
            "{!r} not in {!r}".format(fragment, report.problems),
        )

    def test_valid(self):
        """
        A well-formed graph produces an empty report.
        """
        report = validateGraph(commitmentGapGraph())
        self.assertTrue(report.valid)
        self.assertEqual(report.problems, ())

    def test_probabilityOutOfRange(self):
        g = edgeWeightedGraph(["u"], ["v"], [("u", "v", 1.5, 1.0)], {"v": Patience(1)})
        self.assertProblem(g, "probability out of range")

    def test_duplicateEdge(self):
        g = edgeWeightedGraph(
            ["u"],
            ["v"],
            [("u", "v", 0.5, 1.0), ("u", "v", 0.2, 1.0)],
            {"v": Patience(1)},
        )
        self.assertProblem(g, "duplicate edge")

    def test_missingConstraint(self):
        g = edgeWeightedGraph(["u"], ["v"], [("u", "v", 0.5, 1.0)], {})
        self.assertProblem(g, "missing constraint")

    def test_unknownEndpoint(self):
        g = edgeWeightedGraph(["u"], ["v"], [("w", "v", 0.5, 1.0)], {"v": Patience(1)})
        self.assertProblem(g, "unknown offline vertex")

    def test_vertexWeightInconsistency(self):
        """
        In a vertex-weighted graph every edge carries its offline vertex's
        weight.
        """
        g = StochasticGraph(
            ["u"], ["v"], [Edge(0, "u", "v", 0.5, 2.0)], {"v": Patience(1)}, {"u": 1.0}
        )
        self.assertProblem(g, "vertex-weight inconsistency")

    def test_notPrefixClosed(self):
        g = edgeWeightedGraph(
            ["u1", "u2"],
            ["v"],
            [("u1", "v", 0.5, 1.0), ("u2", "v", 0.5, 1.0)],
            {"v": ExplicitStrings([(0, 1)])},
        )
        self.assertProblem(g, "constraint not prefix-closed")

    def test_notDownwardClosed(self):
        g = edgeWeightedGraph(
            ["u1", "u2"],
            ["v"],
            [("u1", "v", 0.5, 1.0), ("u2", "v", 0.5, 1.0)],
            {"v": ExplicitFamily([(0, 1)])},
        )
        self.assertProblem(g, "family not downward-closed")

    def test_sparseEdgeIds(self):
        """
        Edge ids may skip values, as they do in induced subgraphs, but must
        increase.
        """
        g = StochasticGraph(
            ["u"], ["v"], [Edge(3, "u", "v", 0.5, 1.0)], {"v": Patience(1)}
        )
        self.assertTrue(validateGraph(g).valid)
        g = edgeWeightedGraph(
            ["u1", "u2"],
            ["v"],
            [("u1", "v", 0.5, 1.0), ("u2", "v", 0.5, 1.0)],
            {"v": Patience(1)},
        )
        swapped = StochasticGraph(
            g.offline, g.online, [g.edge(1), g.edge(0)], g.constraints
        )
        self.assertProblem(swapped, "edge ids are not increasing")

    def test_nonIntegerEdgeId(self):
        g = StochasticGraph(
            ["u"], ["v"], [Edge("e0", "u", "v", 0.5, 1.0)], {"v": Patience(1)}
        )
        self.assertProblem(g, "edge id is not an integer")


class GraphTests(TestCase):
    """
    Tests for L{StochasticGraph} lookups.
    """

    def test_weightMode(self):
        self.assertEqual(commitmentGapGraph().weightMode, VERTEX_WEIGHTED)
        g = edgeWeightedGraph(["u"], ["v"], [("u", "v", 0.5, 1.0)], {"v": Patience(1)})
        self.assertEqual(g.weightMode, EDGE_WEIGHTED)

    def test_lookups(self):
        g = commitmentGapGraph()
        self.assertEqual(g.edgeIds, (0, 1, 2))
        self.assertEqual(g.edge(1).offline, "u2")
        self.assertEqual(g.edge(1).weight, 4.0)
        self.assertEqual(g.edgeBetween("u3", "v"), 2)
        self.assertIsNone(g.edgeBetween("u3", "nowhere"))
        self.assertEqual(g.incident("v"), (0, 1, 2))
        self.assertEqual(g.edge(0).label(), "(u1,v)")

    def test_unknownLookups(self):
        g = commitmentGapGraph()
        self.assertRaises(UnknownEdge, g.edge, 7)
        self.assertRaises(UnknownVertex, g.incident, "u1")
        self.assertRaises(UnknownVertex, g.constraintFor, "nowhere")
        self.assertRaises(UnknownVertex, g.offlineMask, ["nowhere"])

    def test_offlineMask(self):
        g = commitmentGapGraph()
        mask = g.offlineMask(["u1", "u3"])
        self.assertEqual(mask, 0b101)
        self.assertEqual(g.offlineFromMask(mask), frozenset(["u1", "u3"]))


class InducedSubgraphTests(TestCase):
    """
    Tests for L{inducedSubgraph}.
    """

    def test_keepsEdgeIds(self):
        """
        Surviving edges keep their ids and weights.
        """
        sub = inducedSubgraph(commitmentGapGraph(), {"u1", "u3", "v"})
        self.assertEqual(sub.edgeIds, (0, 2))
        self.assertEqual(sub.edge(2).offline, "u3")
        self.assertEqual(sub.offline, ("u1", "u3"))
        self.assertEqual(set(sub.vertexWeights), {"u1", "u3"})
        self.assertTrue(validateGraph(sub).valid)

    def test_restrictsConstraints(self):
        """
        Explicit strings using a dropped edge are dropped too.
        """
        g = edgeWeightedGraph(
            ["u1", "u2"],
            ["v"],
            [("u1", "v", 0.5, 1.0), ("u2", "v", 0.5, 1.0)],
            {"v": ExplicitStrings([(0,), (1,), (0, 1)])},
        )
        sub = inducedSubgraph(g, {"u1", "v"})
        self.assertEqual(sub.constraintFor("v"), ExplicitStrings([(0,)]))

    def test_dropsOnlineVertex(self):
        sub = inducedSubgraph(certainGraph(), {"u1", "u2", "v2"})
        self.assertEqual(sub.online, ("v2",))
        self.assertEqual(sub.edgeIds, (2, 3))
        self.assertEqual(set(sub.constraints), {"v2"})

    def test_unknownVertex(self):
        self.assertRaises(
            UnknownVertex, inducedSubgraph, commitmentGapGraph(), {"u1", "nowhere"}
        )


class MatchingTests(TestCase):
    """
    Tests for L{Matching} and L{OneSidedMatching}.
    """

    def test_fromEdges(self):
        g = certainGraph()
        matching = Matching.fromEdges(g, [0, 3])
        self.assertEqual(matching.weight, 3.0)
        self.assertTrue(matching.isMatchingIn(g))

    def test_sharedVertex(self):
        g = certainGraph()
        self.assertFalse(Matching.fromEdges(g, [0, 2]).isMatchingIn(g))
        self.assertFalse(Matching(frozenset([0]), 5.0).isMatchingIn(g))

    def test_oneSided(self):
        """
        Offline vertices may repeat in a one-sided matching; online vertices
        may not.
        """
        g = certainGraph()
        self.assertTrue(OneSidedMatching([0, 2]).isOneSidedIn(g))
        self.assertEqual(OneSidedMatching([0, 2]).weight(g), 4.0)
        self.assertFalse(OneSidedMatching([0, 1]).isOneSidedIn(g))
