from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any

import numpy as np

from vnlab.errors import DistributionError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.graph.pair import NominatablePair
from vnlab.iso.enumeration import enumerate_iso_class
from vnlab.models.rng import RngState, as_generator

Mass = Fraction | float

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class FiniteDistribution:
    """Explicit finite-support law over nominatable pairs, with the vertex of interest.

    Masses are exact ``Fraction`` values when every atom was given one, floats otherwise.
    Use ``make_finite_support`` to build one.
    """

    atoms: tuple[tuple[NominatablePair, Mass], ...]
    v_star: VertexLabel

    @property
    def exact(self) -> bool:
        return all(isinstance(m, Fraction) for _, m in self.atoms)

    @property
    def n(self) -> int:
        return self.atoms[0][0].n

    @property
    def m(self) -> int:
        return self.atoms[0][0].m

    @property
    def core_size(self) -> int:
        return self.atoms[0][0].core_size

    @property
    def zero(self) -> Mass:
        return Fraction(0) if self.exact else 0.0

    @cached_property
    def mass_of(self) -> dict[tuple[LabeledGraph, LabeledGraph], Mass]:
        return {(pair.g1, pair.g2): mass for pair, mass in self.atoms}

    @cached_property
    def _cumulative(self) -> np.ndarray:
        return np.cumsum([float(m) for _, m in self.atoms])

    def sample(self, rng: RngState | np.random.Generator) -> NominatablePair:
        """One atom drawn with probability equal to its mass."""
        u = as_generator(rng).random() * self._cumulative[-1]
        i = int(np.searchsorted(self._cumulative, u, side="right"))
        return self.atoms[min(i, len(self.atoms) - 1)][0]

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)


def make_finite_support(
    atoms: Iterable[tuple[NominatablePair, Any]], v_star: VertexLabel
) -> FiniteDistribution:
    """Validate atoms and masses; repeated pairs are merged and zero masses dropped.

    :raises DistributionError: on negative masses, masses not summing to one, atoms with
        differing shapes or label sets, or a ``v_star`` outside the core.
    """
    merged: dict[tuple[LabeledGraph, LabeledGraph], tuple[NominatablePair, Mass]] = {}
    first: NominatablePair | None = None
    for pair, raw in atoms:
        if isinstance(raw, Fraction | int):
            mass: Mass = Fraction(raw)
        else:
            mass = float(raw)
        if mass < 0:
            raise DistributionError(f"negative mass {mass}")
        if first is None:
            first = pair
        elif (
            pair.g1.labels != first.g1.labels
            or pair.g2.labels != first.g2.labels
            or pair.core_size != first.core_size
        ):
            raise DistributionError("all atoms must share n, m, c and label sets")
        key = (pair.g1, pair.g2)
        if key in merged:
            merged[key] = (merged[key][0], merged[key][1] + mass)
        else:
            merged[key] = (pair, mass)

    if first is None:
        raise DistributionError("a distribution needs at least one atom")
    if not first.is_core(v_star):
        raise DistributionError(f"v_star {v_star} is not a core vertex")

    kept = tuple((pair, mass) for pair, mass in merged.values() if mass != 0)
    if not kept:
        raise DistributionError("all masses are zero")
    total = sum((m for _, m in kept), start=Fraction(0))
    if all(isinstance(m, Fraction) for _, m in kept):
        if total != 1:
            raise DistributionError(f"masses sum to {total}, not 1")
    else:
        kept = tuple((pair, float(mass)) for pair, mass in kept)
        if abs(float(total) - 1.0) > _SUM_TOL:
            raise DistributionError(f"masses sum to {float(total)!r}, not 1")
    return FiniteDistribution(kept, v_star)


def uniform_iso_class_distribution(
    g1: LabeledGraph,
    g2: LabeledGraph,
    v_star: VertexLabel,
    core_size: int | None = None,
    cap: int | None = None,
) -> FiniteDistribution:
    """Uniform law over ``{(g1, h) : h isomorphic to g2}``, exact masses."""
    c = min(g1.n, g2.n) if core_size is None else core_size
    members = enumerate_iso_class(g2, cap=cap)
    w = Fraction(1, len(members))
    theta = {"model": "uniform-iso-class"}
    return make_finite_support(((NominatablePair(g1, h, c, theta), w) for h in members), v_star)
