from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass
from functools import partial
from typing import Literal

import numpy as np

from vnlab.errors import ModelParameterError
from vnlab.graph.labels import Namespace, VertexLabel
from vnlab.graph.pair import NominatablePair
from vnlab.models.rng import RngState, as_generator
from vnlab.models.samplers import (
    CorrelatedErParams,
    SbmParams,
    sample_correlated_er,
    sample_er,
    sample_sbm,
)

PairSampler = Callable[[np.random.Generator], NominatablePair]


@dataclass(frozen=True)
class ModelFamily(ABC):
    """A sequence of nominatable distributions indexed by the graph size ``n``."""

    @property
    @abstractmethod
    def name(self) -> str: ...

    @abstractmethod
    def sample(self, n: int, rng: RngState | np.random.Generator) -> NominatablePair: ...

    def sampler(self, n: int) -> PairSampler:
        """Picklable one-argument sampler for size ``n``."""
        return partial(self.sample, n)

    def v_star(self, n: int) -> VertexLabel:
        return VertexLabel.v(1)

    def m(self, n: int) -> int:
        return n

    def bayes_reference(self, n: int, k: int) -> float | None:
        """Closed-form Bayes error where one exists."""
        return None

    def check_n(self, n: int) -> None:
        if n < 2:
            raise ModelParameterError("n must be >= 2")


@dataclass(frozen=True)
class IndependentErFamily(ModelFamily):
    p: float = 0.5

    @property
    def name(self) -> str:
        return f"indep-er(p={self.p})"

    def sample(self, n: int, rng: RngState | np.random.Generator) -> NominatablePair:
        self.check_n(n)
        gen = as_generator(rng)
        g1 = sample_er(n, self.p, gen, namespace=Namespace.V1)
        g2 = sample_er(n, self.p, gen, namespace=Namespace.V2)
        return NominatablePair(g1, g2, core_size=n, theta={"model": "indep-er", "p": self.p})

    def bayes_reference(self, n: int, k: int) -> float | None:
        return 1.0 - k / n


@dataclass(frozen=True)
class CorrelatedErFamily(ModelFamily):
    p: float = 0.5
    rho: float = 0.9

    @property
    def name(self) -> str:
        return f"correlated-er(p={self.p},rho={self.rho})"

    def sample(self, n: int, rng: RngState | np.random.Generator) -> NominatablePair:
        self.check_n(n)
        params = CorrelatedErParams.homogeneous(n, self.p, self.rho)
        g1, g2 = sample_correlated_er(params, rng)
        theta = {"model": "correlated-er", "p": self.p, "rho": self.rho}
        return NominatablePair(g1, g2, core_size=n, theta=theta)


def _two_block(p1: float, p2: float, q: float) -> np.ndarray:
    return np.array([[p1, q], [q, p2]], dtype=np.float64)


@dataclass(frozen=True)
class IidSbmFamily(ModelFamily):
    """Independent 2-block SBM graphs with identical parameters and halves as blocks."""

    p1: float = 0.7
    p2: float = 0.3
    q: float = 0.1

    @property
    def name(self) -> str:
        return f"sbm-iid(p1={self.p1},p2={self.p2},q={self.q})"

    def sample(self, n: int, rng: RngState | np.random.Generator) -> NominatablePair:
        self.check_n(n)
        gen = as_generator(rng)
        params = SbmParams.balanced(_two_block(self.p1, self.p2, self.q), n)
        g1 = sample_sbm(params, gen, namespace=Namespace.V1)
        g2 = sample_sbm(params, gen, namespace=Namespace.V2)
        return NominatablePair(g1, g2, core_size=n, theta={"model": "sbm-iid", "b": params.b})

    def bayes_reference(self, n: int, k: int) -> float | None:
        return max(1.0 - 2.0 * k / n, 0.0)


@dataclass(frozen=True)
class BehaviorFlipFamily(ModelFamily):
    """Independent 2-block SBMs; case 2 swaps the within-block densities of G2."""

    p1: float = 0.7
    p2: float = 0.3
    q: float = 0.1
    case: Literal[1, 2] = 1

    def __post_init__(self) -> None:
        if self.case not in (1, 2):
            raise ModelParameterError("case must be 1 or 2")

    @property
    def name(self) -> str:
        return f"behavior-flip-case{self.case}(p1={self.p1},p2={self.p2},q={self.q})"

    def sample(self, n: int, rng: RngState | np.random.Generator) -> NominatablePair:
        self.check_n(n)
        gen = as_generator(rng)
        B1 = _two_block(self.p1, self.p2, self.q)
        B2 = B1 if self.case == 1 else _two_block(self.p2, self.p1, self.q)
        g1 = sample_sbm(SbmParams.balanced(B1, n), gen, namespace=Namespace.V1)
        g2 = sample_sbm(SbmParams.balanced(B2, n), gen, namespace=Namespace.V2)
        theta = {"model": "behavior-flip", "case": self.case}
        return NominatablePair(g1, g2, core_size=n, theta=theta)


FeatureCoding = Literal["first-block", "first-two-blocks"]


def block_features(n: int, coding: FeatureCoding) -> np.ndarray:
    """+1/-1 vertex features on three equal blocks.

    ``first-block`` marks block 1 only; ``first-two-blocks`` marks blocks 1 and 2.
    """
    if n % 3:
        raise ModelParameterError(f"n={n} must be divisible by 3")
    size = n // 3
    block = np.arange(n) // size
    if coding == "first-block":
        x = np.where(block == 0, 1.0, -1.0)
    elif coding == "first-two-blocks":
        x = np.where(block <= 1, 1.0, -1.0)
    else:
        raise ModelParameterError(f"unknown feature coding {coding!r}")
    return x.reshape(n, 1)


@dataclass(frozen=True)
class FeatureFlipFamily(ModelFamily):
    """Independent 3-block SBMs with shared block features; case 2 swaps blocks 1 and 2 of G2."""

    p1: float = 0.7
    p2: float = 0.3
    q: float = 0.1
    case: Literal[1, 2] = 1
    coding: FeatureCoding = "first-block"

    def __post_init__(self) -> None:
        if self.case not in (1, 2):
            raise ModelParameterError("case must be 1 or 2")

    @property
    def name(self) -> str:
        return f"features-flip-case{self.case}-{self.coding}"

    def _B(self, swapped: bool) -> np.ndarray:
        a, b = (self.p2, self.p1) if swapped else (self.p1, self.p2)
        q = self.q
        return np.array([[a, q, q], [q, b, q], [q, q, self.p1]], dtype=np.float64)

    def sample(self, n: int, rng: RngState | np.random.Generator) -> NominatablePair:
        self.check_n(n)
        gen = as_generator(rng)
        X = block_features(n, self.coding)
        g1 = sample_sbm(SbmParams.balanced(self._B(False), n), gen, namespace=Namespace.V1)
        g2 = sample_sbm(SbmParams.balanced(self._B(self.case == 2), n), gen, namespace=Namespace.V2)
        theta = {"model": "features-flip", "case": self.case, "coding": self.coding}
        return NominatablePair(g1.with_features(X), g2.with_features(X), core_size=n, theta=theta)

