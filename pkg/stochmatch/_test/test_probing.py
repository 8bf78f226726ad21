from unittest import TestCase

from .._constraints import Budget, ExplicitFamily, ExplicitStrings, Patience
from .._errors import CapExceeded, ConstraintViolation
from .._model import edgeWeightedGraph
from .._probing import (
    checkPermutationClosed,
    checkPrefixClosed,
    checkSubstringClosed,
    enumerateFeasibleStrings,
    expectedValue,
    membership,
    survival,
)
from .test_model import certainGraph, commitmentGapGraph


def explicitGraph(constraint):
    return edgeWeightedGraph(
        ["u1", "u2"],
        ["v"],
        [("u1", "v", 0.5, 1.0), ("u2", "v", 0.5, 2.0)],
        {"v": constraint},
    )


class ValueTests(TestCase):
    """
    Tests for L{survival} and L{expectedValue}.
    """

    def test_survival(self):
        g = commitmentGapGraph()
        self.assertAlmostEqual(survival(g, (1, 0)), 0.4 * 0.2)
        self.assertEqual(survival(g, ()), 1.0)

    def test_expectedValue(self):
        """
        Probing u2 then u1 is worth M{0.6 * 4 + 0.4 * 0.8 * 3}; the reverse
        order is worth less.
        """
        g = commitmentGapGraph()
        self.assertAlmostEqual(expectedValue(g, (1, 0)), 3.36)
        self.assertAlmostEqual(expectedValue(g, (0, 1)), 2.88)
        self.assertEqual(expectedValue(g, ()), 0.0)


class MembershipTests(TestCase):
    """
    Tests for L{membership} and the constraints' C{admits}.
    """

    def test_patience(self):
        g = commitmentGapGraph()
        self.assertTrue(membership(g, "v", (2, 0)))
        self.assertFalse(membership(g, "v", (2, 0, 1)))

    def test_nonIncident(self):
        self.assertRaises(ConstraintViolation, membership, certainGraph(), "v1", (2,))

    def test_budget(self):
        budget = Budget(1.0, {0: 0.5, 1: 0.75})
        self.assertTrue(budget.admits((0,)))
        self.assertFalse(budget.admits((0, 1)))
        self.assertTrue(budget.admits((0, 2, 2)))

    def test_family(self):
        family = ExplicitFamily([(0,), (1,), (1, 0)])
        self.assertTrue(family.admits((1, 0)))
        self.assertFalse(family.admits((0, 0)))
        self.assertTrue(family.isDownwardClosed())

    def test_patienceValidation(self):
        self.assertRaises(ValueError, Patience, -1)
        self.assertRaises(TypeError, Patience, 1.5)


class EnumerationTests(TestCase):
    """
    Tests for L{enumerateFeasibleStrings}.
    """

    def test_patienceLexicographic(self):
        fs = enumerateFeasibleStrings(commitmentGapGraph(), "v")
        self.assertFalse(fs.truncated)
        self.assertEqual(
            fs.strings,
            (
                (),
                (0,),
                (0, 1),
                (0, 2),
                (1,),
                (1, 0),
                (1, 2),
                (2,),
                (2, 0),
                (2, 1),
            ),
        )

    def test_restrictedEdges(self):
        fs = enumerateFeasibleStrings(commitmentGapGraph(), "v", edges=[2, 0])
        self.assertEqual(fs.strings, ((), (0,), (0, 2), (2,), (2, 0)))

    def test_cap(self):
        fs = enumerateFeasibleStrings(commitmentGapGraph(), "v", cap=3)
        self.assertTrue(fs.truncated)
        self.assertEqual(len(fs.strings), 3)

    def test_explicitFamily(self):
        fs = enumerateFeasibleStrings(
            explicitGraph(ExplicitFamily([(0,), (1,), (0, 1)])), "v"
        )
        self.assertEqual(fs.strings, ((), (0,), (0, 1), (1,), (1, 0)))

    def test_explicitStrings(self):
        g = explicitGraph(ExplicitStrings([(1,), (1, 0)]))
        fs = enumerateFeasibleStrings(g, "v")
        self.assertEqual(fs.strings, ((), (1,), (1, 0)))


class ClosureTests(TestCase):
    """
    Tests for the closure checks.
    """

    def test_patience(self):
        fs = enumerateFeasibleStrings(commitmentGapGraph(), "v")
        self.assertTrue(checkPrefixClosed(fs))
        self.assertTrue(checkPermutationClosed(fs))
        self.assertTrue(checkSubstringClosed(fs))

    def test_orderedStrings(self):
        """
        C{{(), (0,), (0, 1)}} is prefix-closed but neither
        permutation-closed nor substring-closed.
        """
        g = explicitGraph(ExplicitStrings([(0,), (0, 1)]))
        fs = enumerateFeasibleStrings(g, "v")
        self.assertTrue(checkPrefixClosed(fs))
        self.assertFalse(checkPermutationClosed(fs))
        self.assertFalse(checkSubstringClosed(fs))

    def test_truncated(self):
        fs = enumerateFeasibleStrings(commitmentGapGraph(), "v", cap=2)
        self.assertRaises(CapExceeded, checkPrefixClosed, fs)
