from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Literal

from loguru import logger

from vnlab.errors import SchemeInputError
from vnlab.eval.montecarlo import ErrorEstimate, mc_error
from vnlab.models.families import ModelFamily
from vnlab.models.rng import RngState
from vnlab.schemes.base import Scheme

SchemeFamily = Scheme | Callable[[int], Scheme]


@dataclass(frozen=True)
class KRule:
    """Level sequence ``k_n``: a constant, a fraction of ``n``, or any function of ``n``.

    Values are clamped to ``[1, m - 1]``.
    """

    kind: Literal["constant", "fraction", "custom"]
    value: float = 1
    fn: Callable[[int], int] | None = None

    @classmethod
    def constant(cls, k: int) -> KRule:
        return cls("constant", k)

    @classmethod
    def fraction(cls, f: float) -> KRule:
        if not 0 < f < 1:
            raise SchemeInputError(f"fraction {f} must lie in (0, 1)")
        return cls("fraction", f)

    @classmethod
    def custom(cls, fn: Callable[[int], int]) -> KRule:
        return cls("custom", 0, fn)

    def __call__(self, n: int, m: int | None = None) -> int:
        m = n if m is None else m
        if m < 2:
            raise SchemeInputError("a level needs at least two candidates")
        if self.kind == "constant":
            k = int(self.value)
        elif self.kind == "fraction":
            k = math.floor(self.value * n + 1e-9)
        else:
            assert self.fn is not None
            k = int(self.fn(n))
        return min(max(k, 1), m - 1)

    def describe(self) -> str:
        if self.kind == "constant":
            return f"k={int(self.value)}"
        if self.kind == "fraction":
            return f"k={self.value}n"
        return "k=custom"


@dataclass(frozen=True)
class CurvePoint:
    n: int
    m: int
    k: int
    estimate: ErrorEstimate
    bayes_reference: float | None = None


@dataclass(frozen=True)
class ConsistencyCurve:
    scheme: str
    model: str
    k_rule: KRule
    points: tuple[CurvePoint, ...]

    def __post_init__(self) -> None:
        ns = [p.n for p in self.points]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise SchemeInputError("curve sizes must be strictly increasing")

    @property
    def n_values(self) -> list[int]:
        return [p.n for p in self.points]


def consistency_curve(
    scheme_family: SchemeFamily,
    model_family: ModelFamily,
    k_rule: KRule,
    n_values: Sequence[int],
    trials: int,
    rng: RngState,
    jobs: int | None = None,
) -> ConsistencyCurve:
    """Monte Carlo ``L_{k_n}`` for each ``n``, with the closed-form Bayes error when known.

    ``scheme_family`` is a scheme or a function building one per ``n``. Size ``n`` uses
    stream ``rng.child(n)``.
    """
    ns = list(n_values)
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise SchemeInputError("n_values must be strictly increasing")
    points = []
    name = ""
    for n in ns:
        scheme = scheme_family if isinstance(scheme_family, Scheme) else scheme_family(n)
        name = scheme.name
        m = model_family.m(n)
        k = k_rule(n, m)
        sampler = model_family.sampler(n)
        est = mc_error(
            scheme, sampler, model_family.v_star(n), k, trials, rng.child(n), jobs, m
        )
        ref = model_family.bayes_reference(n, k)
        logger.info("{} on {} n={} k={}: {:.4f}", name, model_family.name, n, k, est.point)
        points.append(CurvePoint(n, m, k, est, ref))
    return ConsistencyCurve(name, model_family.name, k_rule, tuple(points))
