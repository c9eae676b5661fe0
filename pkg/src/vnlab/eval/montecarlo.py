from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, TypeVar

import numpy as np
from loguru import logger
from scipy.stats import binomtest

from vnlab.config import settings
from vnlab.errors import SchemeInputError
from vnlab.eval.loss import check_level, target_rank
from vnlab.graph.labels import VertexLabel
from vnlab.graph.pair import NominatablePair
from vnlab.graph.permutation import Obfuscation
from vnlab.models.rng import RngState
from vnlab.schemes.base import Scheme

T = TypeVar("T")

PairSampler = Callable[[np.random.Generator], NominatablePair]


@dataclass(frozen=True)
class ErrorEstimate:
    """Monte Carlo level-k error with a Wilson interval."""

    point: float
    ci_low: float
    ci_high: float
    trials: int
    losses: int
    seed: RngState
    level: float = 0.95

    @property
    def stderr(self) -> float:
        return math.sqrt(self.point * (1.0 - self.point) / self.trials)

    def covers(self, value: float) -> bool:
        return self.ci_low <= value <= self.ci_high


def wilson_interval(successes: int, trials: int, level: float | None = None) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (scipy's ``binomtest``)."""
    if trials < 1:
        raise SchemeInputError("trials must be >= 1")
    level = settings.ci_level if level is None else level
    ci = binomtest(successes, trials).proportion_ci(confidence_level=level, method="wilson")
    point = successes / trials
    return min(max(float(ci.low), 0.0), point), max(min(float(ci.high), 1.0), point)


def _trial_ranks(
    scheme: Scheme,
    sampler: PairSampler,
    v_star: VertexLabel,
    rng: RngState,
    start: int,
    stop: int,
) -> list[int]:
    ranks = []
    for t in range(start, stop):
        gen = rng.child(t).generator()
        pair = sampler(gen)
        o = Obfuscation.random(pair.g2.labels, gen)
        ranks.append(target_rank(scheme, pair.g1, pair.g2, o, v_star, pair.core_size))
    return ranks


def _chunks(trials: int, jobs: int) -> list[tuple[int, int]]:
    size = max(1, math.ceil(trials / (4 * jobs)))
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def map_trials(
    fn: Callable[..., list[T]], trials: int, jobs: int | None = None, *args: Any
) -> list[T]:
    """Run ``fn(*args, start, stop)`` over index chunks and concatenate in index order.

    ``jobs > 1`` spreads the chunks over a process pool; ``fn`` and ``args`` must pickle.
    """
    jobs = settings.default_jobs if jobs is None else jobs
    if jobs <= 1:
        return fn(*args, 0, trials)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *args, a, b) for a, b in _chunks(trials, jobs)]
        return [x for fut in futures for x in fut.result()]


def simulate_ranks(
    scheme: Scheme,
    sampler: PairSampler,
    v_star: VertexLabel,
    trials: int,
    rng: RngState,
    jobs: int | None = None,
) -> list[int]:
    """Rank of ``o(v*)`` for each trial; trial ``t`` uses stream ``rng.child(t)``.

    Each trial draws a pair and then a uniform obfuscation from the same stream. Trials
    are split into index chunks across ``jobs`` worker processes and reassembled in
    index order.
    """
    if trials < 1:
        raise SchemeInputError("trials must be >= 1")
    return map_trials(_trial_ranks, trials, jobs, scheme, sampler, v_star, rng)


def estimate_from_ranks(
    ranks: Sequence[int], k: int, rng: RngState, level: float | None = None
) -> ErrorEstimate:
    level = settings.ci_level if level is None else level
    losses = sum(1 for r in ranks if r > k)
    lo, hi = wilson_interval(losses, len(ranks), level)
    return ErrorEstimate(losses / len(ranks), lo, hi, len(ranks), losses, rng, level)


def mc_errors(
    scheme: Scheme,
    sampler: PairSampler,
    v_star: VertexLabel,
    ks: Sequence[int],
    trials: int,
    rng: RngState,
    jobs: int | None = None,
    m: int | None = None,
) -> dict[int, ErrorEstimate]:
    """Estimates for several levels from one batch of trials.

    Levels are checked against ``m`` before any trial runs. Without ``m`` the size is
    read off the pair drawn for trial 0.
    """
    if m is None:
        m = sampler(rng.child(0).generator()).m
    for k in ks:
        check_level(k, m)
    ranks = simulate_ranks(scheme, sampler, v_star, trials, rng, jobs)
    out = {k: estimate_from_ranks(ranks, k, rng) for k in ks}
    for k, est in out.items():
        logger.debug(
            "{} k={}: {:.4f} [{:.4f}, {:.4f}] over {} trials",
            scheme.name, k, est.point, est.ci_low, est.ci_high, trials,
        )
    return out


def mc_error(
    scheme: Scheme,
    sampler: PairSampler,
    v_star: VertexLabel,
    k: int,
    trials: int,
    rng: RngState,
    jobs: int | None = None,
    m: int | None = None,
) -> ErrorEstimate:
    """Monte Carlo level-``k`` error; reproducible from ``rng`` whatever ``jobs`` is.

    :raises InvalidLevelError: unless ``1 <= k <= m - 1``.
    """
    return mc_errors(scheme, sampler, v_star, [k], trials, rng, jobs, m)[k]
