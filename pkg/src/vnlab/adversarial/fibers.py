from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from loguru import logger

from vnlab.config import settings
from vnlab.errors import DistributionError, EnumerationCapError
from vnlab.eval.loss import target_rank
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.graph.permutation import Obfuscation
from vnlab.iso.enumeration import enumerate_iso_class
from vnlab.iso.isomorphism import is_asymmetric
from vnlab.models.rng import RngState, as_generator
from vnlab.schemes.base import Scheme


@dataclass(frozen=True)
class RankFiber:
    """Class members ``h`` of ``g2`` on which the scheme ranks ``o(v*)`` at ``k``."""

    k: int
    members: tuple[LabeledGraph, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class FiberDraw:
    graph: LabeledGraph
    attempts: int


def check_asymmetric(*graphs: LabeledGraph) -> None:
    for g in graphs:
        if not is_asymmetric(g):
            raise DistributionError("the adversarial construction needs asymmetric graphs")


def rank_fibers(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    o: Obfuscation,
    v_star: VertexLabel,
    cap: int | None = None,
) -> list[RankFiber]:
    """Partition the isomorphism class of ``g2`` by the rank the scheme gives ``o(v*)``.

    :raises EnumerationCapError: when ``g2`` is larger than ``cap``
        (``settings.fiber_enumeration_cap``); use ``sample_fiber`` instead.
    """
    cap = settings.fiber_enumeration_cap if cap is None else cap
    if g2.n > cap:
        raise EnumerationCapError("rank fiber enumeration", g2.n, cap, "sample fibers instead")
    buckets: dict[int, list[LabeledGraph]] = {k: [] for k in range(1, g2.n + 1)}
    for h in enumerate_iso_class(g2, cap=cap):
        buckets[target_rank(scheme, g1, h, o, v_star)].append(h)
    logger.info(
        "Rank fibers of {}: sizes {}", scheme.name, [len(buckets[k]) for k in sorted(buckets)]
    )
    return [RankFiber(k, tuple(buckets[k])) for k in sorted(buckets)]


def fiber_sizes(
    scheme: Scheme, g1: LabeledGraph, g2: LabeledGraph, o: Obfuscation, v_star: VertexLabel
) -> dict[int, int]:
    return {f.k: len(f) for f in rank_fibers(scheme, g1, g2, o, v_star)}


def random_relabeling(g: LabeledGraph, gen: np.random.Generator) -> LabeledGraph:
    """Uniform relabeling of ``g`` on its own label set."""
    p = gen.permutation(g.n)
    X = None if g.features is None else g.features[p]
    return LabeledGraph.from_adjacency(g.labels, g.adjacency[np.ix_(p, p)], X)


def sample_fiber(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    o: Obfuscation,
    v_star: VertexLabel,
    k: int,
    rng: RngState | np.random.Generator,
    max_tries: int = 1_000_000,
) -> FiberDraw:
    """Uniform member of the rank-``k`` fiber by rejection.

    Relabelings of ``g2`` are drawn uniformly and kept once the scheme ranks ``o(v*)`` at
    ``k``; for a consistent scheme and asymmetric ``g2`` one draw in ``m`` is accepted.
    """
    if not 1 <= k <= g2.n:
        raise DistributionError(f"rank {k} outside [1, {g2.n}]")
    gen = as_generator(rng)
    for attempt in range(1, max_tries + 1):
        h = random_relabeling(g2, gen)
        if target_rank(scheme, g1, h, o, v_star) == k:
            return FiberDraw(h, attempt)
    raise DistributionError(f"no rank-{k} relabeling found in {max_tries} draws")
