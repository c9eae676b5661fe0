from __future__ import annotations

from vnlab.errors import ScenarioConfigError
from vnlab.scenarios.config import Scenario, parse_scenario

# Smallest asymmetric graphs have six vertices; this one is a 5-path with a
# vertex hung on its middle edge.
ASYMMETRIC_6 = [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (4, 6)]

_BUILTINS: list[dict] = [
    {
        "kind": "curve",
        "name": "indep-er-chance",
        "description": "Independent ER(20, 0.5) pairs: every scheme sits at chance 1 - k/n",
        "models": [{"kind": "indep-er", "p": 0.5}],
        "schemes": [
            {"kind": "random-baseline", "label": "random"},
            {"kind": "spectral", "d": 2, "alignment": "density", "label": "spectral-density"},
        ],
        "n_values": [20],
        "k": {"kind": "fraction", "value": 0.25},
        "trials": 10000,
        "reference_level": 0.999,
    },
    {
        "kind": "curve",
        "name": "correlated-er-curve",
        "description": "Correlated ER (p=0.5, rho=0.9) with graph matching, exact up to n=10",
        "models": [{"kind": "correlated-er", "p": 0.5, "rho": 0.9}],
        "schemes": [{"kind": "gm", "matcher": "auto", "label": "gm"}],
        "n_values": [6, 8, 10, 20, 40],
        "k": {"kind": "constant", "value": 1},
        "trials": 200,
    },
    {
        "kind": "curve",
        "name": "sbm-iid-curve",
        "description": "i.i.d. 2-block SBM, k_n = n/2: density-aligned spectral error approaches 0",
        "models": [{"kind": "sbm-iid", "label": "sbm-iid"}],
        "schemes": [{"kind": "spectral", "alignment": "density", "label": "density"}],
        "n_values": [50, 100, 200],
        "k": {"kind": "fraction", "value": 0.5},
        "trials": 100,
        "checks": [{"scheme": "density", "n": 200, "at_most": 0.1}],
    },
    {
        "kind": "curve",
        "name": "behavior-flip",
        "description": "Block-density swap in G2: density and anti-density alignment trade places",
        "models": [
            {"kind": "behavior-flip", "case": 1, "label": "case1"},
            {"kind": "behavior-flip", "case": 2, "label": "case2"},
        ],
        "schemes": [
            {"kind": "spectral", "alignment": "density", "label": "density"},
            {"kind": "spectral", "alignment": "anti-density", "label": "anti-density"},
        ],
        "n_values": [200],
        "k": {"kind": "fraction", "value": 0.5},
        "trials": 500,
        "checks": [
            {"model": "case1", "scheme": "density", "at_most": 0.05},
            {"model": "case2", "scheme": "density", "at_least": 0.95},
            {"model": "case1", "scheme": "anti-density", "at_least": 0.95},
            {"model": "case2", "scheme": "anti-density", "at_most": 0.05},
        ],
    },
    {
        "kind": "curve",
        "name": "features-flip",
        "description": "Three-block SBM with features: one coding wins, the other fails jointly",
        "models": [
            {
                "kind": "features-flip",
                "case": 1,
                "coding": "first-block",
                "label": "case1-first-block",
            },
            {
                "kind": "features-flip",
                "case": 2,
                "coding": "first-block",
                "label": "case2-first-block",
            },
            {
                "kind": "features-flip",
                "case": 1,
                "coding": "first-two-blocks",
                "label": "case1-first-two",
            },
            {
                "kind": "features-flip",
                "case": 2,
                "coding": "first-two-blocks",
                "label": "case2-first-two",
            },
        ],
        "schemes": [
            {
                "kind": "feature-aware",
                "base": {"kind": "spectral", "d": 3, "alignment": "density", "clusters": 3},
                "label": "features+density",
            }
        ],
        "n_values": [150],
        "k": {"kind": "fraction", "value": 0.3333333333333333},
        "trials": 100,
        "checks": [
            {"model": "case1-first-block", "at_most": 0.0},
            {"model": "case2-first-block", "at_most": 0.0},
        ],
        "joint_checks": [
            {"models": ["case1-first-two", "case2-first-two"], "sum_at_least": 0.75},
        ],
    },
    {
        "kind": "bayes-oracle",
        "name": "bayes-oracle-check",
        "description": "Bayes scheme matches the oracle and beats 100 random consistent schemes",
        "n": 6,
        "edges": ASYMMETRIC_6,
        "schemes": [
            {"kind": "random-baseline", "label": "random"},
            {"kind": "gm", "matcher": "exact", "label": "gm-exact"},
            {"kind": "spectral", "d": 2, "alignment": "seedless-procrustes", "label": "spectral"},
        ],
        "random_schemes": 100,
    },
    {
        "kind": "adversarial",
        "name": "adversarial-demo",
        "description": "Worse-than-chance laws for the random baseline and exact graph matching",
        "n": 6,
        "schemes": [
            {"kind": "random-baseline", "label": "random"},
            {"kind": "gm", "matcher": "exact", "label": "gm-exact"},
        ],
    },
    {
        "kind": "corollary",
        "name": "corollary-sequence",
        "description": "Adversarial sequence n = 6, 7, 8 at k = 1: error near 1, Bayes bound 0.1",
        "scheme": {"kind": "random-baseline", "label": "random"},
        "n_values": [6, 7, 8],
        "eps_target": 0.1,
        "k": {"kind": "constant", "value": 1},
        "floor": 0.99,
    },
    {
        "kind": "gm-recovery",
        "name": "gm-recovery",
        "description": "Exact matching on correlated ER(8, 0.5): identity recovery grows with rho",
        "n": 8,
        "p": 0.5,
        "rhos": [0.0, 0.5, 0.9, 1.0],
        "trials": 200,
    },
    {
        "kind": "sampler-calibration",
        "name": "sampler-calibration",
        "description": "Correlated ER (p=0.5, rho=0.6): E[AB] = 0.40, marginals p within 4 sigma",
        "n": 20,
        "p": 0.5,
        "rho": 0.6,
        "pairs": 600,
    },
]

BUILTIN_SCENARIOS: dict[str, Scenario] = {d["name"]: parse_scenario(d) for d in _BUILTINS}


def list_scenarios() -> list[tuple[str, str]]:
    return [(name, s.description) for name, s in BUILTIN_SCENARIOS.items()]


def get_builtin(name: str) -> Scenario:
    try:
        return BUILTIN_SCENARIOS[name]
    except KeyError:
        known = ", ".join(BUILTIN_SCENARIOS)
        raise ScenarioConfigError(f"unknown builtin scenario {name!r}; known: {known}") from None


def assertion_scenarios() -> list[Scenario]:
    """Builtins that carry pass/fail checks (everything but the bare curves)."""
    return [
        s
        for s in BUILTIN_SCENARIOS.values()
        if s.kind != "curve" or s.checks or s.joint_checks or s.reference_level is not None
    ]
