from vnlab.schemes.base import NominationList, PositionalScheme, Scheme, order_by_score
from vnlab.schemes.baseline import RandomBaselineScheme
from vnlab.schemes.bayes import (
    BayesOptimalScheme,
    BayesOrbitScheme,
    bayes_optimal_orbit_scheme,
    bayes_optimal_scheme,
)
from vnlab.schemes.consistency import check_consistency_criterion, orbit_rank_sets
from vnlab.schemes.matching import (
    GraphMatchingScheme,
    MatchResult,
    exact_match,
    gm_delta,
    relaxed_match,
)
from vnlab.schemes.spectral import (
    ALIGNMENTS,
    SpectralScheme,
    adjacency_spectral_embedding,
    seedless_procrustes,
)
from vnlab.schemes.tiebreak import (
    CanonicalTieBreak,
    FixedTieBreak,
    RepresentativeTieBreak,
    TieBreak,
)
from vnlab.schemes.wrappers import FeatureAwareScheme, ReversalScheme


def gm_scheme(matcher: str = "auto", **kwargs) -> GraphMatchingScheme:
    return GraphMatchingScheme(mode=matcher, **kwargs)


def spectral_scheme(d: int = 2, alignment: str = "seedless-procrustes", **kwargs) -> SpectralScheme:
    return SpectralScheme(d=d, alignment=alignment, **kwargs)


def reversal_scheme(base: Scheme) -> ReversalScheme:
    return ReversalScheme(base)


__all__ = [
    "ALIGNMENTS",
    "BayesOptimalScheme",
    "BayesOrbitScheme",
    "CanonicalTieBreak",
    "FeatureAwareScheme",
    "FixedTieBreak",
    "GraphMatchingScheme",
    "MatchResult",
    "NominationList",
    "PositionalScheme",
    "RandomBaselineScheme",
    "RepresentativeTieBreak",
    "ReversalScheme",
    "Scheme",
    "SpectralScheme",
    "TieBreak",
    "adjacency_spectral_embedding",
    "bayes_optimal_orbit_scheme",
    "bayes_optimal_scheme",
    "check_consistency_criterion",
    "exact_match",
    "gm_delta",
    "gm_scheme",
    "orbit_rank_sets",
    "order_by_score",
    "relaxed_match",
    "reversal_scheme",
    "seedless_procrustes",
    "spectral_scheme",
]
