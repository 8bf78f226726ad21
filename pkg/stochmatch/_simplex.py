# -*- test-case-name: stochmatch._test.test_simplex -*-

"""
A dense two-phase tableau simplex solver with Bland's anti-cycling rule.
"""

import math

import numpy as np
from twisted.logger import Logger

from ._errors import InternalCheckFailed
from ._lp import (
    EQUAL,
    GREATER_EQUAL,
    INFEASIBLE,
    LESS_EQUAL,
    OPTIMAL,
    UNBOUNDED,
    LpSolution,
)

TOLERANCE = 1e-9
_CLEAN = 1e-12
_FLIP = {LESS_EQUAL: GREATER_EQUAL, GREATER_EQUAL: LESS_EQUAL, EQUAL: EQUAL}

_log = Logger()


class _Tableau(object):
    """
    The working state of one solve: the constraint rows with the objective
    row last, the right-hand side in the last column, and the basic column
    of every constraint row.
    """

    def __init__(self, matrix, rhs, relations):
        rows, columns = matrix.shape
        slackCount = sum(1 for r in relations if r != EQUAL)
        artificialCount = sum(1 for r in relations if r != LESS_EQUAL)
        self.structural = columns
        width = columns + slackCount + artificialCount
        self.artificialStart = columns + slackCount
        self.table = np.zeros((rows + 1, width + 1))
        self.table[:rows, :columns] = matrix
        self.table[:rows, -1] = rhs
        self.basis = []
        slack = columns
        artificial = self.artificialStart
        for i, relation in enumerate(relations):
            if relation == LESS_EQUAL:
                self.table[i, slack] = 1.0
                self.basis.append(slack)
                slack += 1
                continue
            if relation == GREATER_EQUAL:
                self.table[i, slack] = -1.0
                slack += 1
            self.table[i, artificial] = 1.0
            self.basis.append(artificial)
            artificial += 1

    @property
    def rowCount(self):
        return len(self.basis)

    def pivot(self, row, column):
        table = self.table
        table[row] /= table[row, column]
        factors = table[:, column].copy()
        factors[row] = 0.0
        table -= np.outer(factors, table[row])
        table[np.abs(table) < _CLEAN] = 0.0
        self.basis[row] = column

    def setObjective(self, costs):
        """
        Load the reduced-cost row for maximizing C{costs . x}.
        """
        objective = np.zeros(self.table.shape[1])
        objective[: len(costs)] = -costs
        for i, column in enumerate(self.basis):
            if column < len(costs) and costs[column] != 0.0:
                objective += costs[column] * self.table[i]
        self.table[-1] = objective

    def optimize(self, allowed, iterationCap):
        """
        Pivot until no allowed column has a negative reduced cost.

        @return: L{OPTIMAL} or L{UNBOUNDED}.
        """
        table = self.table
        for _ in range(iterationCap):
            reduced = table[-1, :allowed]
            entering = np.flatnonzero(reduced < -TOLERANCE)
            if not len(entering):
                return OPTIMAL
            column = int(entering[0])
            best = None
            for i in range(self.rowCount):
                coefficient = table[i, column]
                if coefficient > TOLERANCE:
                    ratio = table[i, -1] / coefficient
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], column)
        raise InternalCheckFailed(
            "simplex iteration cap", "no convergence in {} pivots".format(iterationCap)
        )

    def driveOutArtificials(self):
        """
        Pivot artificial columns out of the basis after phase one, dropping
        rows that turn out to be redundant.
        """
        row = 0
        while row < self.rowCount:
            if self.basis[row] < self.artificialStart:
                row += 1
                continue
            candidates = np.flatnonzero(
                np.abs(self.table[row, : self.artificialStart]) > TOLERANCE
            )
            if len(candidates):
                self.pivot(row, int(candidates[0]))
                row += 1
            else:
                self.table = np.delete(self.table, row, axis=0)
                del self.basis[row]

    def values(self):
        x = np.zeros(self.structural)
        for i, column in enumerate(self.basis):
            if column < self.structural:
                x[column] = self.table[i, -1]
        x[(x < 0) & (x > -_CLEAN)] = 0.0
        return x


def _standardForm(lp):
    index = {name: j for (j, name) in enumerate(lp.variables)}
    matrix = np.zeros((len(lp.rows), len(lp.variables)))
    rhs = np.zeros(len(lp.rows))
    relations = []
    for i, row in enumerate(lp.rows):
        for variable, coefficient in row.coefficients:
            matrix[i, index[variable]] += coefficient
        rhs[i] = row.rhs
        relations.append(row.relation)
    costs = np.array([lp.objective.get(name, 0.0) for name in lp.variables])
    return matrix, rhs, relations, costs


def maxRowViolation(lp, assignment, relative=False):
    """
    The largest amount by which C{assignment} violates a row of C{lp}.

    @param relative: divide each row's violation by the magnitude of its
        terms (at least 1).
    """
    worst = 0.0
    for row in lp.rows:
        terms = [c * assignment.get(v, 0.0) for (v, c) in row.coefficients]
        lhs = math.fsum(terms)
        if row.relation == LESS_EQUAL:
            violation = lhs - row.rhs
        elif row.relation == GREATER_EQUAL:
            violation = row.rhs - lhs
        else:
            violation = abs(lhs - row.rhs)
        if relative:
            violation /= max(1.0, abs(row.rhs), math.fsum(abs(t) for t in terms))
        worst = max(worst, violation)
    for value in assignment.values():
        worst = max(worst, -value)
    return worst


def solveLinearProgram(lp):
    """
    Solve C{lp} to optimality.

    Infeasibility and unboundedness are reported through the solution's
    status.

    @raise InvalidLinearProgram: if C{lp} references undeclared variables or
        has non-finite coefficients.
    @raise InternalCheckFailed: if the optimal basis found violates a row by
        more than L{TOLERANCE} relative to the row's magnitude.
    """
    lp.check()
    matrix, rhs, relations, costs = _standardForm(lp)
    negative = rhs < 0
    matrix[negative] *= -1
    rhs[negative] *= -1
    relations = [_FLIP[r] if n else r for (r, n) in zip(relations, negative)]

    tableau = _Tableau(matrix, rhs, relations)
    width = tableau.table.shape[1] - 1
    iterationCap = 50 * (width + tableau.rowCount + 1)
    _log.debug(
        "solving {name}: {rows} rows, {columns} columns",
        name=lp.name,
        rows=tableau.rowCount,
        columns=len(lp.variables),
    )

    if tableau.artificialStart < width:
        phaseOne = np.zeros(width)
        phaseOne[tableau.artificialStart :] = -1.0
        tableau.setObjective(phaseOne)
        tableau.optimize(width, iterationCap)
        scale = max(1.0, float(np.max(np.abs(rhs))) if len(rhs) else 1.0)
        if tableau.table[-1, -1] < -TOLERANCE * scale:
            _log.debug("{name} is infeasible", name=lp.name)
            return LpSolution(INFEASIBLE)
        tableau.driveOutArtificials()

    tableau.setObjective(costs)
    status = tableau.optimize(tableau.artificialStart, iterationCap)
    if status == UNBOUNDED:
        _log.debug("{name} is unbounded", name=lp.name)
        return LpSolution(UNBOUNDED)

    x = tableau.values()
    assignment = {name: float(value) for (name, value) in zip(lp.variables, x)}
    violation = maxRowViolation(lp, assignment)
    if maxRowViolation(lp, assignment, relative=True) > TOLERANCE:
        raise InternalCheckFailed(
            "post-solve feasibility",
            "{} violates a row by {!r}".format(lp.name, violation),
        )
    objectiveValue = float(np.dot(costs, x))
    _log.debug("{name} optimum {value}", name=lp.name, value=objectiveValue)
    return LpSolution(OPTIMAL, objectiveValue, assignment, violation)
