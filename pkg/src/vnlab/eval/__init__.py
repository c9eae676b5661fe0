from vnlab.eval.curves import ConsistencyCurve, CurvePoint, KRule, consistency_curve
from vnlab.eval.exact import errors_from_ranks, exact_error, exact_errors, rank_distribution
from vnlab.eval.loss import level_k_loss, target_rank
from vnlab.eval.montecarlo import (
    ErrorEstimate,
    estimate_from_ranks,
    mc_error,
    mc_errors,
    map_trials,
    simulate_ranks,
    wilson_interval,
)
from vnlab.eval.oracle import bayes_error_oracle, cell_masses

__all__ = [
    "ConsistencyCurve",
    "CurvePoint",
    "ErrorEstimate",
    "KRule",
    "bayes_error_oracle",
    "cell_masses",
    "consistency_curve",
    "errors_from_ranks",
    "estimate_from_ranks",
    "exact_error",
    "exact_errors",
    "level_k_loss",
    "map_trials",
    "mc_error",
    "mc_errors",
    "rank_distribution",
    "simulate_ranks",
    "target_rank",
    "wilson_interval",
]
