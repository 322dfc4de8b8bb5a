import hashlib
import json
from typing import FrozenSet, NamedTuple

import networkx as nx
import numpy as np

from satsync.errors import DimensionError, ValidationError


class WeightedDigraph:
    """
    Weighted directed graph over nodes 1..N. weights[i - 1, j - 1] = a_ij is the weight of the
    edge from node j to node i.
    """

    def __init__(self, weights):
        weights = np.array(weights, dtype=np.float64)
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1] or weights.shape[0] < 1:
            raise DimensionError(f"weights must be a non-empty square matrix, got shape {weights.shape}")
        if not np.isfinite(weights).all():
            raise ValidationError("weights must be finite")
        negative = np.argwhere(weights < 0.0)
        if len(negative):
            i, j = negative[0]
            raise ValidationError(f"negative weight a_{i + 1},{j + 1} = {weights[i, j]!r}")
        loops = np.flatnonzero(np.diag(weights))
        if len(loops):
            i = loops[0]
            raise ValidationError(f"self-loop at node {i + 1} (a_{i + 1},{i + 1} = {weights[i, i]!r})")
        weights.setflags(write=False)
        self._weights = weights

    @classmethod
    def from_edges(cls, n, edges):
        """
        Build from 1-based (from, to, weight) triples.
        """
        if int(n) != n or n < 1:
            raise ValidationError(f"node count must be a positive integer, got {n!r}")
        n = int(n)
        weights = np.zeros((n, n), dtype=np.float64)
        for edge in edges:
            if len(edge) != 3:
                raise ValidationError(f"edge {edge!r} is not a (from, to, weight) triple")
            j, i, w = edge
            if int(i) != i or int(j) != j or not (1 <= i <= n and 1 <= j <= n):
                raise ValidationError(f"edge {edge!r} references a node outside 1..{n}")
            i, j = int(i), int(j)
            if weights[i - 1, j - 1] != 0.0:
                raise ValidationError(f"duplicate edge {j} -> {i}")
            if i == j:
                raise ValidationError(f"self-loop at node {i}")
            weights[i - 1, j - 1] = float(w)
        return cls(weights)

    @classmethod
    def from_dict(cls, data):
        try:
            return cls.from_edges(data["n"], data["edges"])
        except (KeyError, TypeError) as e:
            raise ValidationError(f"graph must be an object with 'n' and 'edges': {e}") from e

    @property
    def n(self):
        return self._weights.shape[0]

    @property
    def weights(self):
        return self._weights

    def edges(self):
        """
        Canonical (from, to, weight) list, sorted by (to, from).
        """
        return [[int(j) + 1, int(i) + 1, float(self._weights[i, j])] for i, j in zip(*np.nonzero(self._weights))]

    def to_dict(self):
        return {"n": self.n, "edges": self.edges()}

    def to_networkx(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_weighted_edges_from((j, i, w) for j, i, w in self.edges())
        return graph

    def __eq__(self, other):
        return isinstance(other, WeightedDigraph) and np.array_equal(self._weights, other._weights)

    def __hash__(self):
        return hash(graph_hash(self))

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, edges={len(self.edges())})"


class GraphAnalysis(NamedTuple):
    laplacian: np.ndarray
    in_degrees: np.ndarray
    root_set: FrozenSet[int]


def laplacian(g: WeightedDigraph) -> np.ndarray:
    return np.diag(g.weights.sum(axis=1)) - g.weights


def root_set(g: WeightedDigraph) -> FrozenSet[int]:
    """
    Nodes from which every other node is reachable along directed edges.
    """
    graph = g.to_networkx()
    return frozenset(r for r in graph.nodes if len(nx.descendants(graph, r)) == g.n - 1)


def analyze(g: WeightedDigraph) -> GraphAnalysis:
    lap = laplacian(g)
    in_degrees = g.weights.sum(axis=1)
    lap.setflags(write=False)
    in_degrees.setflags(write=False)
    return GraphAnalysis(laplacian=lap, in_degrees=in_degrees, root_set=root_set(g))


def graph_hash(g: WeightedDigraph) -> str:
    """
    SHA-256 of the canonical JSON edge list.
    """
    payload = json.dumps(g.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
