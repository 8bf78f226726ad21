# -*- test-case-name: stochmatch._test.test_simplex -*-

"""
Linear programs in maximization form over non-negative variables.
"""

import math

import attr

from ._errors import InvalidLinearProgram

LESS_EQUAL = "<="
EQUAL = "="
GREATER_EQUAL = ">="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@attr.s(frozen=True)
class Row(object):
    """
    One constraint: C{sum(coefficient * variable) relation rhs}.

    @ivar coefficients: C{(variable name, coefficient)} pairs.
    """

    coefficients = attr.ib(converter=tuple)
    relation = attr.ib(
        validator=attr.validators.in_([LESS_EQUAL, EQUAL, GREATER_EQUAL])
    )
    rhs = attr.ib(converter=float)
    name = attr.ib(default=None)


@attr.s(frozen=True)
class LinearProgram(object):
    """
    Maximize C{objective . x} subject to C{rows}, C{x >= 0}.

    @ivar variables: variable names, fixing the column order.
    @ivar objective: variable name to objective coefficient; absent means 0.
    @ivar tags: variable name to a semantic tag such as C{"x_{u,v}"}.
    @ivar keys: variable name to the structured object it stands for, for
        example C{(v, probeString)} for a configuration variable.
    """

    variables = attr.ib(converter=tuple)
    objective = attr.ib(converter=dict)
    rows = attr.ib(converter=tuple)
    tags = attr.ib(converter=dict, factory=dict)
    keys = attr.ib(converter=dict, factory=dict)
    name = attr.ib(default="lp")

    def problems(self):
        """
        Every undeclared variable reference and non-finite coefficient.
        """
        declared = set(self.variables)
        found = []
        if len(declared) != len(self.variables):
            found.append("duplicate variable names")
        for variable, coefficient in sorted(self.objective.items()):
            if variable not in declared:
                found.append("objective uses undeclared {}".format(variable))
            if not math.isfinite(coefficient):
                found.append("objective coefficient of {} not finite".format(variable))
        for i, row in enumerate(self.rows):
            label = row.name or "row {}".format(i)
            if not math.isfinite(row.rhs):
                found.append("{}: right-hand side not finite".format(label))
            for variable, coefficient in row.coefficients:
                if variable not in declared:
                    found.append("{}: undeclared variable {}".format(label, variable))
                if not math.isfinite(coefficient):
                    found.append("{}: coefficient not finite".format(label))
        return found

    def check(self):
        """
        @raise InvalidLinearProgram: if L{problems} finds anything.
        """
        found = self.problems()
        if found:
            raise InvalidLinearProgram(found)


class LinearProgramBuilder(object):
    """
    Accumulates variables and rows for a L{LinearProgram}.
    """

    def __init__(self, name):
        self._name = name
        self._variables = []
        self._objective = {}
        self._rows = []
        self._tags = {}
        self._keys = {}

    def addVariable(self, name, objective=0.0, tag=None, key=None):
        self._variables.append(name)
        if objective:
            self._objective[name] = float(objective)
        if tag is not None:
            self._tags[name] = tag
        if key is not None:
            self._keys[name] = key
        return name

    def addRow(self, coefficients, relation, rhs, name=None):
        self._rows.append(Row(list(coefficients), relation, rhs, name))

    def build(self):
        return LinearProgram(
            self._variables,
            self._objective,
            self._rows,
            self._tags,
            self._keys,
            self._name,
        )


@attr.s(frozen=True)
class LpSolution(object):
    """
    Solver output.

    @ivar assignment: variable name to value; empty unless optimal.
    @ivar maxViolation: the largest row violation of the assignment.
    """

    status = attr.ib()
    objectiveValue = attr.ib(default=None)
    assignment = attr.ib(converter=dict, factory=dict)
    maxViolation = attr.ib(default=0.0)

    @property
    def optimal(self):
        return self.status == OPTIMAL

    def value(self, variable):
        return self.assignment.get(variable, 0.0)


def _cplexName(name):
    safe = []
    for character in name:
        if character.isalnum() or character in "_.()[],":
            safe.append(character)
        else:
            safe.append("_")
    text = "".join(safe)
    if not text or text[0].isdigit() or text[0] == ".":
        text = "x" + text
    return text


def _terms(pairs):
    text = []
    for variable, coefficient in pairs:
        sign = "-" if coefficient < 0 else "+"
        text.append("{} {!r} {}".format(sign, abs(coefficient), _cplexName(variable)))
    if not text:
        return "0 x_zero"
    joined = " ".join(text)
    return joined[2:] if joined.startswith("+ ") else joined


def formatCplexLP(lp):
    """
    Render C{lp} in CPLEX LP text format for external solvers.
    """
    lines = ["\\ {}".format(lp.name), "Maximize"]
    lines.append(
        " obj: "
        + _terms((v, lp.objective[v]) for v in lp.variables if v in lp.objective)
    )
    lines.append("Subject To")
    for i, row in enumerate(lp.rows):
        label = _cplexName(row.name or "r{}".format(i))
        terms = _terms(row.coefficients)
        lines.append(" {}: {} {} {!r}".format(label, terms, row.relation, row.rhs))
    lines.append("Bounds")
    for variable in lp.variables:
        lines.append(" {} >= 0".format(_cplexName(variable)))
    if not lp.objective or any(not row.coefficients for row in lp.rows):
        lines.append(" x_zero = 0")
    lines.append("End")
    return "\n".join(lines) + "\n"
