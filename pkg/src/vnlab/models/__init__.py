from vnlab.models.encoding import encode_one_graph_instance
from vnlab.models.families import (
    BehaviorFlipFamily,
    CorrelatedErFamily,
    FeatureFlipFamily,
    IidSbmFamily,
    IndependentErFamily,
    ModelFamily,
)
from vnlab.models.finite import (
    FiniteDistribution,
    make_finite_support,
    uniform_iso_class_distribution,
)
from vnlab.models.rng import RngState
from vnlab.models.samplers import (
    CorrelatedErParams,
    LatentPositions,
    SbmParams,
    sample_asymmetric_er,
    sample_correlated_er,
    sample_er,
    sample_er_matrix,
    sample_rdpg,
    sample_rdpg_pair,
    sample_sbm,
)

__all__ = [
    "BehaviorFlipFamily",
    "CorrelatedErFamily",
    "CorrelatedErParams",
    "FeatureFlipFamily",
    "FiniteDistribution",
    "IidSbmFamily",
    "IndependentErFamily",
    "LatentPositions",
    "ModelFamily",
    "RngState",
    "SbmParams",
    "encode_one_graph_instance",
    "make_finite_support",
    "sample_asymmetric_er",
    "sample_correlated_er",
    "sample_er",
    "sample_er_matrix",
    "sample_rdpg",
    "sample_rdpg_pair",
    "sample_sbm",
    "uniform_iso_class_distribution",
]
