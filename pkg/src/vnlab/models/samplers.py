from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from vnlab.errors import ModelParameterError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import Namespace, labels_in
from vnlab.graph.pair import NominatablePair
from vnlab.models.rng import RngState, as_generator

_TOL = 1e-12

RngLike = RngState | np.random.Generator | int | None


def _check_probability_matrix(P: np.ndarray, name: str = "P") -> np.ndarray:
    P = np.asarray(P, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ModelParameterError(f"{name} must be a square matrix, got shape {P.shape}")
    if not np.allclose(P, P.T, atol=_TOL, rtol=0.0):
        raise ModelParameterError(f"{name} must be symmetric")
    off = ~np.eye(P.shape[0], dtype=bool)
    if P.size and (np.any(P[off] < -_TOL) or np.any(P[off] > 1 + _TOL)):
        raise ModelParameterError(f"{name} entries must lie in [0, 1]")
    return np.clip(P, 0.0, 1.0)


def _bernoulli_upper(P: np.ndarray, gen: np.random.Generator) -> np.ndarray:
    n = P.shape[0]
    iu = np.triu_indices(n, k=1)
    A = np.zeros((n, n), dtype=bool)
    A[iu] = gen.random(len(iu[0])) < P[iu]
    return A | A.T


def _graph(A: np.ndarray, namespace: Namespace) -> LabeledGraph:
    return LabeledGraph.from_adjacency(labels_in(namespace, range(1, A.shape[0] + 1)), A)


def sample_er(n: int, p: float, rng: RngLike, namespace: Namespace = Namespace.V1) -> LabeledGraph:
    """G(n, p): every pair present independently with probability ``p``."""
    if n < 0:
        raise ModelParameterError("n must be >= 0")
    if not 0.0 <= p <= 1.0:
        raise ModelParameterError(f"p must lie in [0, 1], got {p}")
    return sample_er_matrix(np.full((n, n), float(p)), rng, namespace=namespace)


def sample_er_matrix(
    P: np.ndarray, rng: RngLike, namespace: Namespace = Namespace.V1
) -> LabeledGraph:
    """ER(P): edge ``{i, j}`` present independently with probability ``P[i, j]``.

    The diagonal is ignored.
    """
    P = _check_probability_matrix(P)
    return _graph(_bernoulli_upper(P, as_generator(rng)), namespace)


@dataclass(frozen=True)
class SbmParams:
    """Stochastic block model: ``K`` blocks, edge matrix ``B``, memberships ``b`` in ``1..K``."""

    K: int
    B: np.ndarray
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        B = np.asarray(self.B, dtype=np.float64)
        if self.K < 1:
            raise ModelParameterError("K must be >= 1")
        if B.shape != (self.K, self.K):
            raise ModelParameterError(f"B must be {self.K}x{self.K}, got {B.shape}")
        if not np.allclose(B, B.T, atol=_TOL, rtol=0.0):
            raise ModelParameterError("B must be symmetric")
        if np.any(B < 0.0) or np.any(B > 1.0):
            raise ModelParameterError("B entries must lie in [0, 1]")
        b = tuple(int(x) for x in self.b)
        if any(not 1 <= x <= self.K for x in b):
            raise ModelParameterError(f"block memberships must lie in [1, {self.K}]")
        B.setflags(write=False)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "b", b)

    @classmethod
    def balanced(cls, B: Sequence[Sequence[float]], n: int) -> SbmParams:
        """Contiguous equal blocks: vertex ``i`` in block ``ceil(i K / n)``."""
        B = np.asarray(B, dtype=np.float64)
        K = B.shape[0]
        if n % K:
            raise ModelParameterError(f"n={n} is not divisible by K={K}")
        size = n // K
        return cls(K, B, tuple(i // size + 1 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.b)

    def edge_probabilities(self) -> np.ndarray:
        idx = np.asarray(self.b) - 1
        return self.B[np.ix_(idx, idx)]


def sample_sbm(
    params: SbmParams, rng: RngLike, namespace: Namespace = Namespace.V1
) -> LabeledGraph:
    return sample_er_matrix(params.edge_probabilities(), rng, namespace=namespace)


@dataclass(frozen=True)
class LatentPositions:
    """RDPG latent positions: rows of ``X`` with all pairwise dot products in [0, 1]."""

    X: np.ndarray

    def __post_init__(self) -> None:
        X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        G = X @ X.T
        off = ~np.eye(X.shape[0], dtype=bool)
        if G.size and (np.any(G[off] < -_TOL) or np.any(G[off] > 1 + _TOL)):
            raise ModelParameterError("latent position dot products must lie in [0, 1]")
        X.setflags(write=False)
        object.__setattr__(self, "X", X)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def edge_probabilities(self) -> np.ndarray:
        P = np.clip(self.X @ self.X.T, 0.0, 1.0)
        np.fill_diagonal(P, 0.0)
        return P


def sample_rdpg(
    X: LatentPositions | np.ndarray, rng: RngLike, namespace: Namespace = Namespace.V1
) -> LabeledGraph:
    lp = X if isinstance(X, LatentPositions) else LatentPositions(X)
    return sample_er_matrix(lp.edge_probabilities(), rng, namespace=namespace)


def sample_rdpg_pair(Y: LatentPositions | np.ndarray, n: int, rng: RngLike) -> NominatablePair:
    """G1 ~ RDPG(Y[:n]) and G2 ~ RDPG(Y), conditionally independent given Y.

    Vertices ``1..n`` are the core; G2's vertices ``n+1..m`` are junk.
    """
    lp = Y if isinstance(Y, LatentPositions) else LatentPositions(Y)
    if not 0 <= n <= lp.n:
        raise ModelParameterError(f"n must lie in [0, {lp.n}]")
    gen = as_generator(rng)
    g1 = sample_rdpg(LatentPositions(lp.X[:n]), gen, namespace=Namespace.V1)
    g2 = sample_rdpg(lp, gen, namespace=Namespace.V2)
    return NominatablePair(g1, g2, core_size=n, theta={"model": "rdpg", "Y": lp.X})


def correlation_lower_bound(P: np.ndarray) -> np.ndarray:
    """Smallest feasible edgewise correlation: ``max(-P/(1-P), -(1-P)/P)``.

    Degenerate probabilities (0 or 1) admit any correlation in [-1, 1].
    """
    P = np.asarray(P, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(P < 1.0, -P / np.where(P < 1.0, 1.0 - P, 1.0), -np.inf)
        b = np.where(P > 0.0, -(1.0 - P) / np.where(P > 0.0, P, 1.0), -np.inf)
    lo = np.maximum(a, b)
    degenerate = (P <= 0.0) | (P >= 1.0)
    return np.where(degenerate, -1.0, np.maximum(lo, -1.0))


@dataclass(frozen=True)
class CorrelatedErParams:
    """R-ER(P): matched ER(P) marginals with edgewise correlation ``R``."""

    P: np.ndarray
    R: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        P = _check_probability_matrix(self.P, "P")
        R = np.asarray(self.R, dtype=np.float64)
        if R.ndim == 0:
            R = np.full(P.shape, float(R))
        if R.shape != P.shape:
            raise ModelParameterError(f"R shape {R.shape} differs from P shape {P.shape}")
        if not np.allclose(R, R.T, atol=_TOL, rtol=0.0):
            raise ModelParameterError("R must be symmetric")
        off = ~np.eye(P.shape[0], dtype=bool)
        lo = correlation_lower_bound(P)
        if P.size and (np.any(R[off] > 1.0 + _TOL) or np.any(R[off] < lo[off] - _TOL)):
            bad = np.argwhere(off & ((R > 1.0 + _TOL) | (R < lo - _TOL)))[0]
            i, j = int(bad[0]), int(bad[1])
            raise ModelParameterError(
                f"correlation R[{i},{j}]={R[i, j]:.6g} infeasible for P={P[i, j]:.6g}; "
                f"need R in [{lo[i, j]:.6g}, 1]"
            )
        P.setflags(write=False)
        R.setflags(write=False)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "R", R)

    @classmethod
    def homogeneous(cls, n: int, p: float, rho: float) -> CorrelatedErParams:
        return cls(np.full((n, n), float(p)), np.full((n, n), float(rho)))

    @property
    def n(self) -> int:
        return self.P.shape[0]


def sample_correlated_er(
    params: CorrelatedErParams, rng: RngLike
) -> tuple[LabeledGraph, LabeledGraph]:
    """Draw ``(G1, G2)``: A ~ Bern(P); B ~ Bern(P + R(1-P)) where A=1, else Bern(P(1-R)).

    G1 is labeled in V1 and G2 in V2, ids ``1..n`` in both.
    """
    gen = as_generator(rng)
    P, R = params.P, params.R
    n = params.n
    iu = np.triu_indices(n, k=1)
    p, r = P[iu], R[iu]
    a = gen.random(len(p)) < p
    q = np.where(a, p + r * (1.0 - p), p * (1.0 - r))
    b = gen.random(len(p)) < np.clip(q, 0.0, 1.0)

    A = np.zeros((n, n), dtype=bool)
    B = np.zeros((n, n), dtype=bool)
    A[iu], B[iu] = a, b
    return _graph(A | A.T, Namespace.V1), _graph(B | B.T, Namespace.V2)


def sample_asymmetric_er(
    n: int,
    p: float,
    rng: RngLike,
    namespace: Namespace = Namespace.V1,
    max_tries: int = 10_000,
) -> LabeledGraph:
    """ER(n, p) conditioned on a trivial automorphism group, by rejection."""
    from vnlab.iso.isomorphism import is_asymmetric

    if 1 < n < 6:
        raise ModelParameterError(f"no asymmetric graph has {n} vertices")
    gen = as_generator(rng)
    for attempt in range(1, max_tries + 1):
        g = sample_er(n, p, gen, namespace=namespace)
        if is_asymmetric(g):
            if attempt > 1:
                logger.debug("Asymmetric ER({}, {}) accepted after {} draws", n, p, attempt)
            return g
    raise ModelParameterError(f"no asymmetric ER({n}, {p}) graph within {max_tries} draws")
