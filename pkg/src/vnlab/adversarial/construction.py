from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from loguru import logger

from vnlab.adversarial.epsilon import EpsilonSequence
from vnlab.adversarial.fibers import RankFiber, check_asymmetric, rank_fibers, sample_fiber
from vnlab.config import settings
from vnlab.errors import DistributionError
from vnlab.eval.exact import exact_errors
from vnlab.eval.loss import check_level
from vnlab.eval.oracle import bayes_error_oracle
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.graph.pair import NominatablePair
from vnlab.graph.permutation import Obfuscation
from vnlab.models.finite import FiniteDistribution, make_finite_support
from vnlab.models.rng import RngState, as_generator
from vnlab.schemes.base import Scheme
from vnlab.schemes.wrappers import ReversalScheme


def chance_line(m: int, k: int) -> Fraction:
    """Level-``k`` error of ranking uniformly at random: ``1 - k/m``."""
    check_level(k, m)
    return Fraction(m - k, m)


def _sampled_fibers(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    o: Obfuscation,
    v_star: VertexLabel,
    per_fiber: int,
    rng: RngState | np.random.Generator,
) -> list[RankFiber]:
    gen = as_generator(rng)
    fibers = []
    for k in range(1, g2.n + 1):
        draws = [sample_fiber(scheme, g1, g2, o, v_star, k, gen).graph for _ in range(per_fiber)]
        fibers.append(RankFiber(k, tuple(draws)))
    return fibers


def build_adversarial(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    o: Obfuscation,
    v_star: VertexLabel,
    eps: EpsilonSequence,
    samples_per_fiber: int | None = None,
    rng: RngState | np.random.Generator | None = None,
) -> FiniteDistribution:
    """A law on ``{g1} x class(g2)`` where ``scheme`` does worse than chance.

    Fiber ``k`` (members where ``o(v*)`` gets rank ``k``) carries mass ``xi_k`` spread
    evenly over its members, so ``L_k(scheme) = 1 - eps_k`` exactly. Above
    ``settings.fiber_enumeration_cap`` vertices each fiber is represented by
    ``samples_per_fiber`` rejection samples instead of all its members.

    :raises DistributionError: for symmetric inputs, a size mismatch with ``eps`` or an
        empty fiber that should carry mass.
    """
    check_asymmetric(g1, g2)
    m = g2.n
    if eps.m != m:
        raise DistributionError(f"epsilon sequence has length {eps.m}, expected m={m}")
    c = min(g1.n, m)
    if g2.n <= settings.fiber_enumeration_cap:
        fibers = rank_fibers(scheme, g1, g2, o, v_star)
    elif samples_per_fiber:
        fibers = _sampled_fibers(scheme, g1, g2, o, v_star, samples_per_fiber, rng or 0)
    else:
        raise DistributionError(
            f"m={m} is above the fiber enumeration cap; pass samples_per_fiber to sample fibers"
        )

    atoms: list[tuple[NominatablePair, Fraction]] = []
    theta = {"model": "adversarial", "scheme": scheme.name}
    for fiber, xi in zip(fibers, eps.xi):
        if not fiber.members:
            raise DistributionError(f"fiber {fiber.k} is empty but carries mass {xi}")
        share = xi / len(fiber.members)
        atoms.extend((NominatablePair(g1, h, c, theta), share) for h in fiber.members)
    logger.info("Adversarial law against {}: {} atoms, m={}", scheme.name, len(atoms), m)
    return make_finite_support(atoms, v_star)


@dataclass(frozen=True)
class SandwichRow:
    k: int
    eps_k: Fraction
    eps_m_minus_k: Fraction
    chance: Fraction
    scheme_error: Fraction
    reversal_error: Fraction
    bayes_error: Fraction | None

    @property
    def holds(self) -> bool:
        """``L* <= eps_{m-k} < 1 - k/m < 1 - eps_k = L_k(scheme)``."""
        bayes_ok = self.bayes_error is None or self.bayes_error <= self.eps_m_minus_k
        return (
            bayes_ok
            and self.eps_m_minus_k < self.chance < 1 - self.eps_k
            and self.scheme_error == 1 - self.eps_k
            and self.reversal_error == self.eps_m_minus_k
        )


@dataclass(frozen=True)
class AdversarialReport:
    scheme: str
    m: int
    rows: tuple[SandwichRow, ...]
    distribution: FiniteDistribution

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)


def adversarial_report(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    o: Obfuscation,
    v_star: VertexLabel,
    eps: EpsilonSequence,
    with_oracle: bool = True,
    **build_kwargs,
) -> AdversarialReport:
    """Build the adversarial law and tabulate the error sandwich for every ``k`` in ``[1, c-1]``."""
    F = build_adversarial(scheme, g1, g2, o, v_star, eps, **build_kwargs)
    m = F.m
    ours = exact_errors(scheme, F, o)
    rev = exact_errors(ReversalScheme(scheme), F, o)
    rows = []
    for k in range(1, F.core_size):
        rows.append(
            SandwichRow(
                k=k,
                eps_k=eps[k],
                eps_m_minus_k=eps[m - k],
                chance=chance_line(m, k),
                scheme_error=ours[k],
                reversal_error=rev[k],
                bayes_error=bayes_error_oracle(F, k) if with_oracle else None,
            )
        )
    report = AdversarialReport(scheme.name, m, tuple(rows), F)
    if not report.holds:
        logger.warning("Adversarial sandwich fails for {} at m={}", scheme.name, m)
    return report
