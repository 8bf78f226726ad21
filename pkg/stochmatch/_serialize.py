# -*- test-case-name: stochmatch._test.test_serialize -*-

"""
Reading and writing the JSON instance format.

An instance document looks like::

    {"offline": ["u1", "u2"], "online": ["v1"],
     "weight_mode": "vertex", "vertex_weights": {"u1": 3, "u2": 4},
     "edges": [{"u": "u1", "v": "v1", "p": 0.8}, ...],
     "constraints": {"v1": {"kind": "patience", "l": 2}}}

Edges are numbered in document order unless they carry an C{"id"}, which
serialization writes only for graphs whose ids skip values (induced
subgraphs).  Budget costs are keyed by the offline endpoint of the edge at the
constrained vertex; explicit strings and families list edges as
C{[u, v]} pairs.
"""

import json
import pkgutil

from ._constraints import (
    Budget,
    CONSTRAINT_KINDS,
    ExplicitFamily,
    ExplicitStrings,
    Patience,
)
from ._errors import InvalidInstance
from ._model import EDGE_WEIGHTED, VERTEX_WEIGHTED, Edge, StochasticGraph

_TOP_LEVEL = {
    "offline",
    "online",
    "weight_mode",
    "vertex_weights",
    "edges",
    "constraints",
    "id",
    "comment",
}


def _require(document, key, path):
    if not isinstance(document, dict):
        raise InvalidInstance(path, "expected an object")
    if key not in document:
        raise InvalidInstance("{}.{}".format(path, key), "missing field")
    return document[key]


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInstance(path, "expected a number, not {!r}".format(value))
    return float(value)


def _vertexList(value, path):
    if not isinstance(value, list):
        raise InvalidInstance(path, "expected a list of vertex ids")
    for i, vertex in enumerate(value):
        if not isinstance(vertex, str):
            raise InvalidInstance(
                "{}[{}]".format(path, i), "vertex ids must be strings"
            )
    return value


def _edgeRef(ref, byPair, path):
    if (
        not isinstance(ref, list)
        or len(ref) != 2
        or not all(isinstance(end, str) for end in ref)
    ):
        raise InvalidInstance(path, "edge references are [u, v] pairs")
    edgeId = byPair.get(tuple(ref))
    if edgeId is None:
        raise InvalidInstance(path, "no edge between {} and {}".format(*ref))
    return edgeId


def _parseConstraint(document, v, byPair, path):
    kind = _require(document, "kind", path)
    if kind not in CONSTRAINT_KINDS:
        raise InvalidInstance(path + ".kind", "unknown kind {!r}".format(kind))
    if kind == Patience.kind:
        limit = _require(document, "l", path)
        if isinstance(limit, bool) or not isinstance(limit, int) or limit < 0:
            raise InvalidInstance(path + ".l", "expected a non-negative integer")
        return Patience(limit)
    if kind == Budget.kind:
        budget = _number(_require(document, "B", path), path + ".B")
        costs = _require(document, "costs", path)
        if not isinstance(costs, dict):
            raise InvalidInstance(path + ".costs", "expected an object")
        edgeCosts = {}
        for u, cost in sorted(costs.items()):
            costPath = "{}.costs.{}".format(path, u)
            edgeCosts[_edgeRef([u, v], byPair, costPath)] = _number(cost, costPath)
        return Budget(budget, edgeCosts)
    members = _require(document, "members", path)
    if not isinstance(members, list):
        raise InvalidInstance(path + ".members", "expected a list")
    parsed = []
    for i, member in enumerate(members):
        memberPath = "{}.members[{}]".format(path, i)
        if not isinstance(member, list):
            raise InvalidInstance(memberPath, "expected a list of edge references")
        parsed.append(
            tuple(
                _edgeRef(ref, byPair, "{}[{}]".format(memberPath, j))
                for (j, ref) in enumerate(member)
            )
        )
    if kind == ExplicitStrings.kind:
        return ExplicitStrings(parsed)
    return ExplicitFamily(parsed)


def parseInstance(text):
    """
    Parse an instance document.

    @param text: the JSON document, as a string or bytes.

    @return: a L{StochasticGraph}, not yet validated (see
        L{stochmatch.validateGraph}).

    @raise InvalidInstance: if the document does not follow the schema.
    """
    try:
        document = json.loads(text)
    except ValueError as e:
        raise InvalidInstance("$", "malformed JSON: {}".format(e))
    if not isinstance(document, dict):
        raise InvalidInstance("$", "expected an object")
    for key in sorted(document):
        if key not in _TOP_LEVEL:
            raise InvalidInstance("$." + key, "unexpected field")
    offline = _vertexList(_require(document, "offline", "$"), "$.offline")
    online = _vertexList(_require(document, "online", "$"), "$.online")
    mode = document.get("weight_mode", EDGE_WEIGHTED)
    if mode not in (EDGE_WEIGHTED, VERTEX_WEIGHTED):
        raise InvalidInstance("$.weight_mode", "unknown mode {!r}".format(mode))
    weights = None
    if mode == VERTEX_WEIGHTED:
        rawWeights = _require(document, "vertex_weights", "$")
        if not isinstance(rawWeights, dict):
            raise InvalidInstance("$.vertex_weights", "expected an object")
        weights = {
            u: _number(w, "$.vertex_weights." + u) for (u, w) in rawWeights.items()
        }
    rawEdges = _require(document, "edges", "$")
    if not isinstance(rawEdges, list):
        raise InvalidInstance("$.edges", "expected a list")
    edges = []
    for i, rawEdge in enumerate(rawEdges):
        path = "$.edges[{}]".format(i)
        u = _require(rawEdge, "u", path)
        v = _require(rawEdge, "v", path)
        if not isinstance(u, str) or not isinstance(v, str):
            raise InvalidInstance(path, "endpoints must be vertex ids")
        p = _number(_require(rawEdge, "p", path), path + ".p")
        if "w" in rawEdge:
            w = _number(rawEdge["w"], path + ".w")
        elif weights is not None:
            if u not in weights:
                raise InvalidInstance("$.vertex_weights." + u, "missing field")
            w = weights[u]
        else:
            raise InvalidInstance(path + ".w", "missing field")
        edgeId = rawEdge.get("id", i)
        if isinstance(edgeId, bool) or not isinstance(edgeId, int) or edgeId < 0:
            raise InvalidInstance(path + ".id", "expected a non-negative integer")
        edges.append(Edge(edgeId, u, v, p, w))
    byPair = {}
    for edge in edges:
        byPair.setdefault((edge.offline, edge.online), edge.id)
    rawConstraints = _require(document, "constraints", "$")
    if not isinstance(rawConstraints, dict):
        raise InvalidInstance("$.constraints", "expected an object")
    constraints = {}
    for v, rawConstraint in rawConstraints.items():
        constraints[v] = _parseConstraint(
            rawConstraint, v, byPair, "$.constraints." + v
        )
    return StochasticGraph(offline, online, edges, constraints, weights)


def _edgeRefOf(g, edgeId):
    edge = g.edge(edgeId)
    return [edge.offline, edge.online]


def _constraintDocument(g, constraint):
    if isinstance(constraint, Patience):
        return {"kind": constraint.kind, "l": constraint.limit}
    if isinstance(constraint, Budget):
        return {
            "kind": constraint.kind,
            "B": constraint.budget,
            "costs": {g.edge(e).offline: cost for (e, cost) in constraint.costs},
        }
    return {
        "kind": constraint.kind,
        "members": [
            [_edgeRefOf(g, e) for e in member] for member in constraint.members
        ],
    }


def instanceDocument(g):
    """
    The JSON-ready document describing C{g}.
    """
    edges = [
        {"u": e.offline, "v": e.online, "p": e.probability, "w": e.weight}
        for e in g.edges
    ]
    if g.edgeIds != tuple(range(len(g.edges))):
        for edge, e in zip(edges, g.edges):
            edge["id"] = e.id
    document = {
        "offline": list(g.offline),
        "online": list(g.online),
        "weight_mode": g.weightMode,
        "edges": edges,
        "constraints": {
            v: _constraintDocument(g, c) for (v, c) in g.constraints.items()
        },
    }
    if g.vertexWeights is not None:
        document["vertex_weights"] = {
            u: float(w) for (u, w) in g.vertexWeights.items()
        }
    return document


def serializeInstance(g):
    """
    Serialize C{g} as canonical JSON: sorted keys, two-space indentation and
    a trailing newline.
    """
    return json.dumps(instanceDocument(g), indent=2, sort_keys=True) + "\n"


def loadInstance(path):
    """
    Parse the instance file at C{path}.
    """
    with open(path, "rb") as f:
        return parseInstance(f.read())


def embeddedInstance(name):
    """
    Parse one of the instances shipped in C{stochmatch/instances}.

    @param name: the file name without its C{.json} suffix.
    """
    try:
        data = pkgutil.get_data("stochmatch", "instances/{}.json".format(name))
    except EnvironmentError:
        data = None
    if data is None:
        raise InvalidInstance(name, "no such embedded instance")
    return parseInstance(data)
