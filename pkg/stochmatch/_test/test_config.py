from unittest import TestCase

from .._config import CAP_VARIABLE, DEFAULT_LIMITS, Limits, limitsFromEnvironment


class LimitsFromEnvironmentTests(TestCase):
    """
    Tests for L{limitsFromEnvironment}.
    """

    def test_unset(self):
        self.assertIs(limitsFromEnvironment({}), DEFAULT_LIMITS)
        self.assertIs(limitsFromEnvironment({CAP_VARIABLE: "  "}), DEFAULT_LIMITS)

    def test_override(self):
        """
        The variable replaces the string and state caps and nothing else.
        """
        limits = limitsFromEnvironment({CAP_VARIABLE: "50"})
        self.assertEqual(limits, Limits(stringCap=50, stateCap=50))

    def test_base(self):
        base = Limits(orderCap=3)
        limits = limitsFromEnvironment({CAP_VARIABLE: "7"}, base)
        self.assertEqual(limits.orderCap, 3)
        self.assertEqual(limits.stringCap, 7)

    def test_invalid(self):
        for raw in ["many", "0", "-4", "2.5"]:
            self.assertRaises(ValueError, limitsFromEnvironment, {CAP_VARIABLE: raw})
