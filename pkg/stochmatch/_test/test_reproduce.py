from unittest import TestCase

from .._config import Limits
from .._errors import CapExceeded
from .._reproduce import (
    ALIASES,
    CASES,
    CHARGING_IDENTITY,
    COMMITMENT_GAP,
    NONRANKABLE_STAR,
    SINGLE_VERTEX_GAP,
    caseNamed,
    chargingIdentity,
    reproduce,
    reproduceAll,
)


class ReproduceTests(TestCase):
    """
    Tests for the worked examples in L{stochmatch._reproduce}.
    """

    def test_commitmentGap(self):
        result = reproduce(COMMITMENT_GAP)
        self.assertTrue(result.passed, result.lines)
        self.assertIn("ratio: 0.856269 (expected 0.856269)", result.lines)

    def test_nonrankableStar(self):
        result = reproduce(NONRANKABLE_STAR)
        self.assertTrue(result.passed, result.lines)
        self.assertEqual(result.lines[-1], "ranking witness: none")

    def test_singleVertexGap(self):
        result = reproduce(SINGLE_VERTEX_GAP)
        self.assertTrue(result.passed, result.lines)

    def test_chargingIdentity(self):
        result = chargingIdentity(instances=2, runs=5, seed=3)
        self.assertTrue(result.passed, result.lines)
        self.assertEqual(result.lines[0], "charged runs: 20")
        self.assertEqual(result.case, CHARGING_IDENTITY)

    def test_all(self):
        results = reproduceAll()
        self.assertEqual([result.case for result in results], list(CASES))
        self.assertTrue(all(result.passed for result in results))

    def test_aliases(self):
        """
        Each worked example can also be named by where it comes from.
        """
        self.assertEqual(caseNamed("propA1"), COMMITMENT_GAP)
        self.assertEqual(caseNamed("example41"), NONRANKABLE_STAR)
        self.assertEqual(caseNamed("footnote1"), SINGLE_VERTEX_GAP)
        self.assertEqual(caseNamed(CHARGING_IDENTITY), CHARGING_IDENTITY)
        self.assertEqual(set(ALIASES.values()) - set(CASES), set())
        self.assertEqual(reproduce("propA1").case, COMMITMENT_GAP)

    def test_unknownCase(self):
        self.assertRaises(KeyError, reproduce, "perpetual-motion")

    def test_caps(self):
        self.assertRaises(CapExceeded, reproduce, COMMITMENT_GAP, Limits(stateCap=2))
