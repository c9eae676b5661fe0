from __future__ import annotations

import itertools
import warnings
from typing import Literal

import numpy as np
from loguru import logger
from scipy.cluster.vq import kmeans2
from scipy.linalg import eigh, orthogonal_procrustes
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from vnlab.errors import SchemeInputError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.schemes.base import PositionalScheme, order_by_score
from vnlab.schemes.tiebreak import TieBreak

Alignment = Literal["identity", "seedless-procrustes", "density", "anti-density"]
ALIGNMENTS: tuple[str, ...] = ("identity", "seedless-procrustes", "density", "anti-density")

_SIGN_EPS = 1e-12


def adjacency_spectral_embedding(g: LabeledGraph, d: int) -> np.ndarray:
    """Rows of ``U |S|^(1/2)`` for the ``d`` eigenvalues of largest magnitude.

    Each column is signed so that the sum of cubed entries is positive (falling back to
    the largest-magnitude entry), which is invariant under vertex reordering.

    :raises SchemeInputError: if ``d`` is not in ``[1, n]``.
    """
    if not 1 <= d <= g.n:
        raise SchemeInputError(f"embedding dimension d={d} must lie in [1, {g.n}]")
    vals, vecs = eigh(g.adjacency.astype(np.float64))
    top = np.argsort(-np.abs(vals), kind="stable")[:d]
    X = vecs[:, top] * np.sqrt(np.abs(vals[top]))
    for c in range(d):
        s = float((X[:, c] ** 3).sum())
        if abs(s) <= _SIGN_EPS:
            s = float(X[int(np.argmax(np.abs(X[:, c]))), c])
        if s < 0:
            X[:, c] = -X[:, c]
    return X


def seedless_procrustes(X1: np.ndarray, X2: np.ndarray, iterations: int = 5) -> np.ndarray:
    """Rotate ``X2`` onto ``X1`` without seeds.

    Every sign pattern of the columns seeds an alternation between a linear assignment
    of rows and an orthogonal Procrustes fit; the pattern with the smallest matched
    distance wins, earliest pattern on ties.
    """
    d = X1.shape[1]
    best: tuple[float, np.ndarray] | None = None
    for signs in itertools.product((1.0, -1.0), repeat=d):
        base = X2 * np.asarray(signs)
        Y = base
        for _ in range(iterations):
            r, c = linear_sum_assignment(cdist(X1, Y))
            R, _ = orthogonal_procrustes(base[c], X1[r])
            Y = base @ R
        r, c = linear_sum_assignment(cdist(X1, Y))
        total = float(cdist(X1, Y)[r, c].sum())
        if best is None or total < best[0] - _SIGN_EPS:
            best = (total, Y)
    assert best is not None
    return best[1]


def density_ordered_centroids(X: np.ndarray, A: np.ndarray, K: int) -> np.ndarray | None:
    """K-means centroids sorted by decreasing within-cluster edge density.

    Initial centroids are the rows at evenly spaced quantiles of the first coordinate.
    ``None`` when there are fewer rows than clusters or a cluster ends up empty.
    """
    n = X.shape[0]
    if K < 1 or n < K:
        return None
    by_first = np.argsort(X[:, 0], kind="stable")
    init = X[by_first[[int((i + 0.5) * n / K) for i in range(K)]]]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        centroids, labels = kmeans2(X, init, minit="matrix", iter=20, missing="warn")
    density = []
    for k in range(K):
        idx = np.flatnonzero(labels == k)
        if idx.size == 0:
            return None
        pairs = idx.size * (idx.size - 1) / 2
        edges = A[np.ix_(idx, idx)].sum() / 2
        density.append(edges / pairs if pairs else 0.0)
    order = sorted(range(K), key=lambda k: (-density[k], k))
    return centroids[order]


class SpectralScheme(PositionalScheme):
    """Nominate by distance between adjacency spectral embeddings.

    ``alignment`` picks how the two embeddings are put in a common frame:
    ``identity`` compares them directly, ``seedless-procrustes`` rotates G2's embedding
    onto G1's, ``density`` maps G1's densest cluster to G2's densest (and so on), and
    ``anti-density`` pairs G1's densest with G2's sparsest.
    """

    def __init__(
        self,
        d: int = 2,
        alignment: Alignment = "seedless-procrustes",
        clusters: int = 2,
        tie_break: TieBreak | None = None,
    ) -> None:
        super().__init__(tie_break)
        if alignment not in ALIGNMENTS:
            raise SchemeInputError(f"unknown alignment {alignment!r}; expected one of {ALIGNMENTS}")
        if d < 1:
            raise SchemeInputError("embedding dimension must be >= 1")
        self.d = d
        self.alignment = alignment
        self.clusters = clusters
        self.name = f"spectral-{alignment}(d={d})"

    def _rank(self, g1: LabeledGraph, h: LabeledGraph, v_star: VertexLabel) -> list[int]:
        if self.d > min(g1.n, h.n):
            raise SchemeInputError(
                f"embedding dimension d={self.d} exceeds graph size {min(g1.n, h.n)}"
            )
        X1 = adjacency_spectral_embedding(g1, self.d)
        X2 = adjacency_spectral_embedding(h, self.d)
        x = X1[g1.position(v_star)]

        if self.alignment == "seedless-procrustes":
            X2 = seedless_procrustes(X1, X2)
        elif self.alignment in ("density", "anti-density"):
            C1 = density_ordered_centroids(X1, g1.adjacency, self.clusters)
            C2 = density_ordered_centroids(X2, h.adjacency, self.clusters)
            if C1 is None or C2 is None:
                logger.warning(
                    "Degenerate {}-means clustering; comparing embeddings unaligned", self.clusters
                )
            else:
                if self.alignment == "anti-density":
                    C2 = C2[::-1]
                R, _ = orthogonal_procrustes(C1, C2)
                x = x @ R

        dist = np.linalg.norm(X2 - x, axis=1)
        return order_by_score(dist.tolist(), descending=False)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "d": self.d,
            "alignment": self.alignment,
            "clusters": self.clusters,
        }
