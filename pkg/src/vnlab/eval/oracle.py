from __future__ import annotations

from fractions import Fraction

from vnlab.errors import DistributionError
from vnlab.eval.loss import check_level
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.iso.isomorphism import find_isomorphism, is_asymmetric
from vnlab.models.finite import FiniteDistribution, Mass


def cell_masses(F: FiniteDistribution) -> list[dict[VertexLabel, Mass]]:
    """Per support cell, the mass landing on each vertex of the cell's representative.

    Cells are found by VF2 isomorphism tests against the first member seen, never through
    canonical forms, so this is a separate route from the Bayes scheme.
    """
    cells: dict[LabeledGraph, list[tuple[LabeledGraph, dict[VertexLabel, Mass]]]] = {}
    for pair, mass in F.atoms:
        u_star = pair.correspondent(F.v_star)
        bucket = cells.setdefault(pair.g1, [])
        for rep, masses in bucket:
            sigma = find_isomorphism(pair.g2, rep)
            if sigma is not None:
                break
        else:
            if not is_asymmetric(pair.g2, respect_features=True):
                raise DistributionError("the Bayes-error oracle needs asymmetric support graphs")
            rep, masses = pair.g2, {x: F.zero for x in pair.g2.labels}
            bucket.append((rep, masses))
            sigma = None
        target = u_star if sigma is None else sigma(u_star)
        masses[target] += mass
    return [masses for bucket in cells.values() for _, masses in bucket]


def bayes_error_oracle(F: FiniteDistribution, k: int) -> Mass:
    """``L*_k``: one minus the mass of the ``k`` heaviest vertices of every cell."""
    check_level(k, F.m)
    captured: Mass = F.zero
    for masses in cell_masses(F):
        top = sorted(masses.values(), reverse=True)[:k]
        captured += sum(top, start=F.zero)
    one: Mass = Fraction(1) if F.exact else 1.0
    return one - captured
