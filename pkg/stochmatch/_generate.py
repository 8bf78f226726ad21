# -*- test-case-name: stochmatch._test.test_generate -*-

"""
Seeded random instances.
"""

import attr
import numpy as np

from ._constraints import Budget, Patience
from ._model import Edge, StochasticGraph

UNIFORM = "uniform"
VANISHING = "vanishing"

PATIENCE = "patience"
BUDGET = "budget"


def _pair(value):
    low, high = value
    if low > high:
        raise ValueError("empty range {}".format(value))
    return (low, high)


@attr.s(frozen=True)
class InstanceParams(object):
    """
    What kind of instance to generate.

    @ivar patience: inclusive range of patience values.
    @ivar weights: range of (offline or edge) weights.
    @ivar probabilities: L{UNIFORM} over C{probabilityRange}, or
        L{VANISHING}: uniform below one over the number of offline vertices.
    @ivar density: chance that each offline/online pair gets an edge.
    @ivar aligned: for vertex-weighted instances, give heavier offline
        vertices higher edge probabilities at every online vertex.
    @ivar unweighted: make every weight 1.
    @ivar constraint: L{PATIENCE} or L{BUDGET}.
    """

    offlineCount = attr.ib()
    onlineCount = attr.ib()
    patience = attr.ib(default=(1, 2), converter=_pair)
    weights = attr.ib(default=(1.0, 10.0), converter=_pair)
    probabilities = attr.ib(
        default=UNIFORM, validator=attr.validators.in_([UNIFORM, VANISHING])
    )
    probabilityRange = attr.ib(default=(0.05, 0.95), converter=_pair)
    density = attr.ib(default=1.0)
    vertexWeighted = attr.ib(default=True)
    aligned = attr.ib(default=False)
    unweighted = attr.ib(default=False)
    constraint = attr.ib(
        default=PATIENCE, validator=attr.validators.in_([PATIENCE, BUDGET])
    )
    budgetRange = attr.ib(default=(1.0, 3.0), converter=_pair)
    costRange = attr.ib(default=(0.5, 2.0), converter=_pair)


def _weight(params, rng):
    if params.unweighted:
        return 1.0
    return float(rng.uniform(*params.weights))


def _probability(params, offlineCount, rng):
    if params.probabilities == VANISHING:
        return float(rng.uniform(0.0, 1.0 / offlineCount))
    return float(rng.uniform(*params.probabilityRange))


def generateRandomInstance(params, seed):
    """
    Generate an instance; the same C{params} and C{seed} always give the
    same instance.
    """
    rng = np.random.default_rng(seed)
    offline = ["u{}".format(i + 1) for i in range(params.offlineCount)]
    online = ["v{}".format(j + 1) for j in range(params.onlineCount)]
    vertexWeights = None
    if params.vertexWeighted:
        vertexWeights = {u: _weight(params, rng) for u in offline}
    quads = []
    for v in online:
        neighbours = [
            u for u in offline if params.density >= 1.0 or rng.random() < params.density
        ]
        probabilities = [
            _probability(params, len(offline), rng) for _ in neighbours
        ]
        if params.aligned and vertexWeights is not None:
            byWeight = sorted(neighbours, key=lambda u: (vertexWeights[u], u))
            ranked = dict(zip(byWeight, sorted(probabilities)))
            probabilities = [ranked[u] for u in neighbours]
        for u, p in zip(neighbours, probabilities):
            if vertexWeights is not None:
                w = vertexWeights[u]
            else:
                w = _weight(params, rng)
            quads.append((u, v, p, w))
    edges = [Edge(i, u, v, p, w) for (i, (u, v, p, w)) in enumerate(quads)]
    constraints = {}
    for v in online:
        if params.constraint == PATIENCE:
            low, high = params.patience
            constraints[v] = Patience(int(rng.integers(low, high + 1)))
        else:
            costs = {
                edge.id: float(rng.uniform(*params.costRange))
                for edge in edges
                if edge.online == v
            }
            constraints[v] = Budget(float(rng.uniform(*params.budgetRange)), costs)
    return StochasticGraph(offline, online, edges, constraints, vertexWeights)
