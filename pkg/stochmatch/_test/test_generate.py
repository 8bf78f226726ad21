from unittest import TestCase

from .._constraints import Budget, Patience
from .._generate import BUDGET, VANISHING, InstanceParams, generateRandomInstance
from .._model import EDGE_WEIGHTED, validateGraph


class GenerateTests(TestCase):
    """
    Tests for L{generateRandomInstance}.
    """

    def test_deterministic(self):
        params = InstanceParams(4, 3, patience=(1, 3))
        self.assertEqual(
            generateRandomInstance(params, 12), generateRandomInstance(params, 12)
        )
        self.assertNotEqual(
            generateRandomInstance(params, 12), generateRandomInstance(params, 13)
        )

    def test_valid(self):
        for seed in range(5):
            g = generateRandomInstance(InstanceParams(3, 4), seed)
            self.assertTrue(validateGraph(g).valid, seed)
            self.assertEqual(len(g.edges), 12)
            for v in g.online:
                self.assertIn(g.constraintFor(v), [Patience(1), Patience(2)])

    def test_vanishing(self):
        g = generateRandomInstance(InstanceParams(5, 2, probabilities=VANISHING), 0)
        self.assertTrue(all(edge.probability <= 1.0 / 5 for edge in g.edges))

    def test_unweighted(self):
        g = generateRandomInstance(InstanceParams(3, 3, unweighted=True), 1)
        self.assertEqual({edge.weight for edge in g.edges}, {1.0})

    def test_edgeWeighted(self):
        g = generateRandomInstance(InstanceParams(2, 2, vertexWeighted=False), 1)
        self.assertEqual(g.weightMode, EDGE_WEIGHTED)
        self.assertTrue(validateGraph(g).valid)

    def test_aligned(self):
        """
        Aligned instances give heavier offline vertices likelier edges.
        """
        g = generateRandomInstance(InstanceParams(4, 2, aligned=True), 3)
        for v in g.online:
            edges = sorted(
                (g.edge(e) for e in g.incident(v)), key=lambda edge: edge.weight
            )
            probabilities = [edge.probability for edge in edges]
            self.assertEqual(probabilities, sorted(probabilities))

    def test_budget(self):
        g = generateRandomInstance(InstanceParams(3, 2, constraint=BUDGET), 4)
        for v in g.online:
            constraint = g.constraintFor(v)
            self.assertIsInstance(constraint, Budget)
            self.assertTrue(1.0 <= constraint.budget <= 3.0)
            self.assertEqual(
                sorted(edge for (edge, _) in constraint.costs), list(g.incident(v))
            )

    def test_noEdges(self):
        g = generateRandomInstance(InstanceParams(3, 3, density=0.0), 0)
        self.assertEqual(g.edges, ())

    def test_emptyRange(self):
        self.assertRaises(ValueError, InstanceParams, 2, 2, patience=(3, 1))
        self.assertRaises(ValueError, InstanceParams, 2, 2, constraint="mood")
