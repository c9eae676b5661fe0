from __future__ import annotations

from collections import defaultdict

from loguru import logger

from vnlab.eval.loss import check_level, target_rank
from vnlab.graph.permutation import Obfuscation
from vnlab.models.finite import FiniteDistribution, Mass
from vnlab.schemes.base import Scheme


def rank_distribution(
    scheme: Scheme, F: FiniteDistribution, o: Obfuscation | None = None
) -> dict[int, Mass]:
    """Exact law of the rank of ``o(v*)`` under ``F``; ``o`` defaults to ``u_i -> w_i``."""
    if o is None:
        o = Obfuscation.standard(F.atoms[0][0].g2.labels)
    law: dict[int, Mass] = defaultdict(lambda: F.zero)
    for pair, mass in F.atoms:
        law[target_rank(scheme, pair.g1, pair.g2, o, F.v_star, pair.core_size)] += mass
    logger.debug("Rank law of {} over {} atoms: {} ranks hit", scheme.name, len(F), len(law))
    return dict(sorted(law.items()))


def errors_from_ranks(law: dict[int, Mass], m: int, zero: Mass) -> dict[int, Mass]:
    """``L_k`` for every ``k`` in ``[1, m - 1]`` from a rank law."""
    out: dict[int, Mass] = {}
    for k in range(1, m):
        out[k] = sum((mass for r, mass in law.items() if r > k), start=zero)
    return out


def exact_errors(
    scheme: Scheme, F: FiniteDistribution, o: Obfuscation | None = None
) -> dict[int, Mass]:
    return errors_from_ranks(rank_distribution(scheme, F, o), F.m, F.zero)


def exact_error(
    scheme: Scheme, F: FiniteDistribution, k: int, o: Obfuscation | None = None
) -> Mass:
    """Level-``k`` error of ``scheme`` under ``F``, exact when the masses are rational."""
    check_level(k, F.m)
    return exact_errors(scheme, F, o)[k]
