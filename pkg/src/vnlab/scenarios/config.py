from __future__ import annotations

import tomllib
from pathlib import Path
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator

from vnlab.errors import ScenarioConfigError
from vnlab.eval.curves import KRule
from vnlab.models.families import (
    BehaviorFlipFamily,
    CorrelatedErFamily,
    FeatureFlipFamily,
    IidSbmFamily,
    IndependentErFamily,
    ModelFamily,
)
from vnlab.schemes import (
    FeatureAwareScheme,
    GraphMatchingScheme,
    RandomBaselineScheme,
    ReversalScheme,
    Scheme,
    SpectralScheme,
)


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    label: str | None = None


# ---- models


class IndependentErSpec(_Spec):
    kind: Literal["indep-er"]
    p: float = Field(0.5, ge=0.0, le=1.0)

    def build(self) -> ModelFamily:
        return IndependentErFamily(self.p)


class CorrelatedErSpec(_Spec):
    kind: Literal["correlated-er"]
    p: float = Field(0.5, ge=0.0, le=1.0)
    rho: float = Field(0.9, ge=-1.0, le=1.0)

    def build(self) -> ModelFamily:
        return CorrelatedErFamily(self.p, self.rho)


class SbmIidSpec(_Spec):
    kind: Literal["sbm-iid"]
    p1: float = Field(0.7, ge=0.0, le=1.0)
    p2: float = Field(0.3, ge=0.0, le=1.0)
    q: float = Field(0.1, ge=0.0, le=1.0)

    def build(self) -> ModelFamily:
        return IidSbmFamily(self.p1, self.p2, self.q)


class BehaviorFlipSpec(_Spec):
    kind: Literal["behavior-flip"]
    p1: float = Field(0.7, ge=0.0, le=1.0)
    p2: float = Field(0.3, ge=0.0, le=1.0)
    q: float = Field(0.1, ge=0.0, le=1.0)
    case: Literal[1, 2] = 1

    def build(self) -> ModelFamily:
        return BehaviorFlipFamily(self.p1, self.p2, self.q, self.case)


class FeatureFlipSpec(_Spec):
    kind: Literal["features-flip"]
    p1: float = Field(0.7, ge=0.0, le=1.0)
    p2: float = Field(0.3, ge=0.0, le=1.0)
    q: float = Field(0.1, ge=0.0, le=1.0)
    case: Literal[1, 2] = 1
    coding: Literal["first-block", "first-two-blocks"] = "first-block"

    def build(self) -> ModelFamily:
        return FeatureFlipFamily(self.p1, self.p2, self.q, self.case, self.coding)


ModelSpec = Annotated[
    Union[IndependentErSpec, CorrelatedErSpec, SbmIidSpec, BehaviorFlipSpec, FeatureFlipSpec],
    Field(discriminator="kind"),
]


def model_label(spec: ModelSpec) -> str:
    return spec.label or spec.build().name


# ---- schemes


class RandomBaselineSpec(_Spec):
    kind: Literal["random-baseline"]
    seed: int = 0

    def build(self) -> Scheme:
        return RandomBaselineScheme(self.seed)


class GraphMatchingSpec(_Spec):
    kind: Literal["gm"]
    matcher: Literal["exact", "relaxed", "auto"] = "auto"
    init: Literal["barycenter", "identity"] | None = None
    max_iter: int | None = Field(None, ge=1)
    objective: Literal["convex", "indefinite"] = "convex"

    def build(self) -> Scheme:
        return GraphMatchingScheme(
            mode=self.matcher, init=self.init, max_iter=self.max_iter, objective=self.objective
        )


class SpectralSpec(_Spec):
    kind: Literal["spectral"]
    d: int = Field(2, ge=1)
    alignment: Literal["identity", "seedless-procrustes", "density", "anti-density"] = "density"
    clusters: int = Field(2, ge=1)

    def build(self) -> Scheme:
        return SpectralScheme(self.d, self.alignment, self.clusters)


class ReversalSpec(_Spec):
    kind: Literal["reversal"]
    base: SchemeSpec

    def build(self) -> Scheme:
        return ReversalScheme(self.base.build())


class FeatureAwareSpec(_Spec):
    kind: Literal["feature-aware"]
    base: SchemeSpec

    def build(self) -> Scheme:
        return FeatureAwareScheme(self.base.build())


SchemeSpec = Annotated[
    Union[RandomBaselineSpec, GraphMatchingSpec, SpectralSpec, ReversalSpec, FeatureAwareSpec],
    Field(discriminator="kind"),
]
ReversalSpec.model_rebuild()
FeatureAwareSpec.model_rebuild()


def scheme_label(spec: SchemeSpec) -> str:
    return spec.label or spec.build().name


class KRuleSpec(_Spec):
    kind: Literal["constant", "fraction"] = "constant"
    value: float = 1

    def build(self) -> KRule:
        if self.kind == "constant":
            return KRule.constant(int(self.value))
        return KRule.fraction(self.value)


class LossCheck(_Spec):
    """Bound on the reported loss of matching rows (``None`` matches anything)."""

    model: str | None = None
    scheme: str | None = None
    n: int | None = None
    at_most: float | None = None
    at_least: float | None = None


class JointLossCheck(_Spec):
    """The losses of several models, summed per scheme and size, stay above a floor.

    Fails for any ``(scheme, n)`` cell where one of the models has no row.
    """

    models: list[str] = Field(min_length=2)
    scheme: str | None = None
    n: int | None = None
    sum_at_least: float = Field(ge=0.0)


# ---- scenarios


class _Scenario(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    description: str = ""
    seed: int | None = None
    output: Path | None = None


class CurveScenario(_Scenario):
    """Monte Carlo ``L_{k_n}`` per model, scheme and size."""

    kind: Literal["curve"]
    models: list[ModelSpec] = Field(min_length=1)
    schemes: list[SchemeSpec] = Field(min_length=1)
    n_values: list[int] = Field(min_length=1)
    k: KRuleSpec = KRuleSpec()
    trials: int = Field(100, ge=1)
    checks: list[LossCheck] = Field(default_factory=list)
    joint_checks: list[JointLossCheck] = Field(default_factory=list)
    reference_level: float | None = Field(None, gt=0.0, lt=1.0)

    @field_validator("n_values")
    @classmethod
    def _increasing(cls, v: list[int]) -> list[int]:
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("n_values must be strictly increasing")
        if v[0] < 2:
            raise ValueError("n_values must be >= 2")
        return v


class BayesOracleScenario(_Scenario):
    """Exact errors of the Bayes scheme against the oracle on hand-built laws."""

    kind: Literal["bayes-oracle"]
    n: int = Field(6, ge=3, le=8)
    edges: list[tuple[int, int]]
    schemes: list[SchemeSpec] = Field(default_factory=list)
    random_schemes: int = Field(100, ge=0)


class AdversarialScenario(_Scenario):
    """Adversarial laws against each scheme and the resulting error sandwich."""

    kind: Literal["adversarial"]
    n: int = Field(6, ge=6, le=8)
    p: float = Field(0.5, gt=0.0, lt=1.0)
    schemes: list[SchemeSpec] = Field(min_length=1)
    eps_denominator: int | None = Field(None, ge=2)


class CorollaryScenario(_Scenario):
    kind: Literal["corollary"]
    scheme: SchemeSpec
    n_values: list[int] = Field(min_length=1)
    eps_target: float = Field(0.1, gt=0.0, lt=1.0)
    k: KRuleSpec = KRuleSpec()
    p: float = Field(0.5, gt=0.0, lt=1.0)
    floor: float = Field(0.99, ge=0.0, le=1.0)
    oracle: bool = True


class RecoveryScenario(_Scenario):
    """How often the exact matching of a correlated pair is the identity."""

    kind: Literal["gm-recovery"]
    n: int = Field(8, ge=2, le=10)
    p: float = Field(0.5, gt=0.0, lt=1.0)
    rhos: list[float] = Field(default_factory=lambda: [0.0, 0.5, 0.9, 1.0], min_length=1)
    trials: int = Field(200, ge=1)

    @field_validator("rhos")
    @classmethod
    def _increasing_correlations(cls, v: list[float]) -> list[float]:
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("rhos must be strictly increasing")
        if v[0] < 0.0 or v[-1] > 1.0:
            raise ValueError("rhos must lie in [0, 1]")
        return v


class CalibrationScenario(_Scenario):
    """Edgewise moments of the correlated ER sampler."""

    kind: Literal["sampler-calibration"]
    n: int = Field(20, ge=2)
    p: float = Field(0.5, gt=0.0, lt=1.0)
    rho: float = Field(0.6, ge=-1.0, le=1.0)
    pairs: int = Field(600, ge=1)
    sigmas: float = Field(4.0, gt=0.0)


Scenario = Annotated[
    Union[
        CurveScenario,
        BayesOracleScenario,
        AdversarialScenario,
        CorollaryScenario,
        RecoveryScenario,
        CalibrationScenario,
    ],
    Field(discriminator="kind"),
]

_ADAPTER: TypeAdapter[Scenario] = TypeAdapter(Scenario)


def _describe(err: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(x) for x in e['loc']) or '<root>'}: {e['msg']}" for e in err.errors()
    )


def parse_scenario(data: dict) -> Scenario:
    """Validate a scenario mapping.

    :raises ScenarioConfigError: naming every offending field path.
    """
    try:
        return _ADAPTER.validate_python(data)
    except ValidationError as err:
        raise ScenarioConfigError(_describe(err)) from None


def load_scenario(path: Path | str) -> Scenario:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(
            f"Scenario config not found: {path}. Use `vnlab list` for builtins."
        )
    with path.open("rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as err:
            raise ScenarioConfigError(f"{path}: {err}") from None
    try:
        return parse_scenario(data)
    except ScenarioConfigError as err:
        raise ScenarioConfigError(f"{path}: {err}") from None


def resolved(scenario: Scenario) -> dict:
    """The scenario with every default filled in, JSON-ready."""
    return scenario.model_dump(mode="json")
