from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import numpy as np

from vnlab.errors import GraphInputError
from vnlab.graph.labels import Namespace, VertexLabel, labels_in
from vnlab.graph.permutation import Obfuscation, Permutation


def pack_upper(A: np.ndarray) -> bytes:
    iu = np.triu_indices(A.shape[0], k=1)
    return np.packbits(A[iu].astype(np.uint8)).tobytes()


def unpack_upper(packed: bytes, n: int) -> np.ndarray:
    A = np.zeros((n, n), dtype=bool)
    if n < 2:
        return A
    iu = np.triu_indices(n, k=1)
    bits = np.unpackbits(np.frombuffer(packed, dtype=np.uint8), count=len(iu[0]))
    A[iu] = bits.astype(bool)
    return A | A.T


def _frozen_features(
    features: np.ndarray | Sequence[Sequence[float]] | None, n: int
) -> np.ndarray | None:
    if features is None:
        return None
    X = np.array(features, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(n, -1) if X.size else np.zeros((n, 0))
    if X.ndim != 2 or X.shape[0] != n:
        raise GraphInputError(f"features must have exactly {n} rows, got shape {X.shape}")
    if X.shape[1] == 0:
        # zero-dimensional feature space is the same as no features
        return None
    X.setflags(write=False)
    return X


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Hollow undirected graph on explicitly labeled vertices.

    ``labels`` are always kept sorted; ``packed`` holds the upper triangle of the
    adjacency matrix (row-major, bit packed) in that label order. ``features`` is an
    optional read-only ``(n, d_f)`` array aligned with ``labels``.
    """

    labels: tuple[VertexLabel, ...]
    packed: bytes
    features: np.ndarray | None = None

    @classmethod
    def from_adjacency(
        cls,
        labels: Sequence[VertexLabel],
        A: np.ndarray | Sequence[Sequence[int]],
        features: np.ndarray | Sequence[Sequence[float]] | None = None,
    ) -> LabeledGraph:
        """Build a graph from a dense adjacency matrix indexed like ``labels``.

        :param labels: vertex labels, one per row of ``A``; any order.
        :param A: symmetric 0/1 matrix with zero diagonal.
        :param features: optional per-vertex feature rows aligned with ``labels``.
        :raises GraphInputError: on duplicate labels, asymmetry, self-loops or shape mismatch.
        """
        labels = tuple(labels)
        n = len(labels)
        if len(set(labels)) != n:
            raise GraphInputError("vertex labels must be unique")
        M = np.asarray(A)
        if M.shape != (n, n):
            raise GraphInputError(f"adjacency shape {M.shape} does not match {n} labels")
        M = M.astype(bool)
        if not np.array_equal(M, M.T):
            raise GraphInputError("adjacency must be symmetric")
        if n and M.diagonal().any():
            raise GraphInputError("adjacency must be hollow (no self-edges)")
        X = _frozen_features(features, n)

        order = sorted(range(n), key=lambda i: labels[i])
        M = M[np.ix_(order, order)]
        if X is not None:
            X = X[order]
            X.setflags(write=False)
        return cls(tuple(labels[i] for i in order), pack_upper(M), X)

    @classmethod
    def empty(cls, labels: Iterable[VertexLabel]) -> LabeledGraph:
        labels = tuple(labels)
        return cls.from_adjacency(labels, np.zeros((len(labels), len(labels)), dtype=bool))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = unpack_upper(self.packed, self.n)
        A.setflags(write=False)
        return A

    @cached_property
    def index(self) -> dict[VertexLabel, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def _hash(self) -> int:
        feats = None if self.features is None else (self.features.shape, self.features.tobytes())
        return hash((self.labels, self.packed, feats))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        if self.labels != other.labels or self.packed != other.packed:
            return False
        if self.features is None or other.features is None:
            return self.features is None and other.features is None
        return np.array_equal(self.features, other.features)

    def __repr__(self) -> str:
        labs = ",".join(str(x) for x in self.labels)
        return f"LabeledGraph(n={self.n}, edges={self.edge_count}, labels=[{labs}])"

    @property
    def has_features(self) -> bool:
        return self.features is not None

    @cached_property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1).astype(np.int64)
        d.setflags(write=False)
        return d

    def position(self, label: VertexLabel) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise GraphInputError(f"unknown vertex label {label}") from None

    def has_edge(self, a: VertexLabel, b: VertexLabel) -> bool:
        return bool(self.adjacency[self.position(a), self.position(b)])

    def degree(self, label: VertexLabel) -> int:
        return int(self.degrees[self.position(label)])

    def neighbors(self, label: VertexLabel) -> tuple[VertexLabel, ...]:
        row = self.adjacency[self.position(label)]
        return tuple(self.labels[j] for j in np.flatnonzero(row))

    def edges(self) -> list[tuple[VertexLabel, VertexLabel]]:
        """Edges as sorted label pairs ``(a, b)`` with ``a < b``."""
        iu, ju = np.nonzero(np.triu(self.adjacency, k=1))
        return [(self.labels[i], self.labels[j]) for i, j in zip(iu, ju)]

    def feature_of(self, label: VertexLabel) -> np.ndarray | None:
        if self.features is None:
            return None
        return self.features[self.position(label)]

    def with_features(
        self, features: np.ndarray | Sequence[Sequence[float]] | None
    ) -> LabeledGraph:
        return LabeledGraph(self.labels, self.packed, _frozen_features(features, self.n))

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        for i, lab in enumerate(self.labels):
            if self.features is None:
                G.add_node(lab)
            else:
                G.add_node(lab, features=tuple(float(x) for x in self.features[i]))
        G.add_edges_from(self.edges())
        return G


def make_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    namespace: Namespace = Namespace.V1,
    features: np.ndarray | Sequence[Sequence[float]] | None = None,
) -> LabeledGraph:
    """Graph on labels ``namespace 1..n`` from 1-based endpoint pairs.

    Duplicate and reversed pairs collapse to a single edge.
    """
    if n < 0:
        raise GraphInputError("n must be >= 0")
    A = np.zeros((n, n), dtype=bool)
    for a, b in edges:
        a, b = int(a), int(b)
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphInputError(f"edge ({a}, {b}) has an endpoint outside [1, {n}]")
        if a == b:
            raise GraphInputError(f"self-loop at vertex {a}")
        A[a - 1, b - 1] = A[b - 1, a - 1] = True
    return LabeledGraph.from_adjacency(labels_in(namespace, range(1, n + 1)), A, features)


def induced_subgraph(g: LabeledGraph, S: Iterable[VertexLabel]) -> LabeledGraph:
    keep = sorted(set(S))
    idx = [g.position(lab) for lab in keep]
    A = g.adjacency[np.ix_(idx, idx)]
    X = None if g.features is None else g.features[idx]
    return LabeledGraph.from_adjacency(keep, A, X)


def relabel(g: LabeledGraph, sigma: Permutation) -> LabeledGraph:
    """Vertex ``x`` of ``g`` becomes ``sigma(x)``; edges and features travel with it."""
    if sigma.domain != frozenset(g.labels):
        raise GraphInputError(
            f"relabeling domain ({len(sigma)} labels) differs from graph labels ({g.n})"
        )
    new_labels = [sigma(lab) for lab in g.labels]
    return LabeledGraph.from_adjacency(new_labels, g.adjacency, g.features)


def permute(g: LabeledGraph, sigma: Permutation) -> LabeledGraph:
    """Conjugate the adjacency of ``g`` by ``sigma``; ``permute(g, id) == g``."""
    return relabel(g, sigma)


def apply_obfuscation(g: LabeledGraph, o: Obfuscation) -> LabeledGraph:
    return relabel(g, o)


def reveal(og: LabeledGraph, o: Obfuscation) -> LabeledGraph:
    """Undo ``apply_obfuscation``."""
    return relabel(og, o.inverse())


def positional_labels(
    g: LabeledGraph, order: Sequence[VertexLabel], namespace: Namespace
) -> Permutation:
    """Map ``order[i]`` to ``namespace`` label ``i + 1``."""
    if len(order) != g.n:
        raise GraphInputError("positional order must list every vertex once")
    return Permutation.from_sequences(order, labels_in(namespace, range(1, g.n + 1)))
