from __future__ import annotations

import numpy as np

from vnlab.errors import SchemeInputError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.schemes.base import NominationList, Scheme, check_scheme_inputs


class ReversalScheme(Scheme):
    """The base scheme's list read bottom-up."""

    def __init__(self, base: Scheme) -> None:
        self.base = base
        self.name = f"reversed-{base.name}"

    def nominate(self, g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel) -> NominationList:
        return self.base.nominate(g1, og2, v_star).reversed()

    def describe(self) -> dict:
        return {"name": self.name, "base": self.base.describe()}


class FeatureAwareScheme(Scheme):
    """Rank by feature distance to ``v*`` first and by the base scheme's rank second.

    Without features on both graphs this is the base scheme unchanged.
    """

    def __init__(self, base: Scheme, decimals: int = 12) -> None:
        self.base = base
        self.decimals = decimals
        self.name = f"features+{base.name}"

    def nominate(self, g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel) -> NominationList:
        check_scheme_inputs(g1, og2, v_star)
        ranked = self.base.nominate(g1, og2, v_star)
        if not (g1.has_features and og2.has_features):
            return ranked
        x = g1.feature_of(v_star)
        Y = og2.features
        if Y.shape[1] != x.shape[0]:
            raise SchemeInputError("feature dimensions of the two graphs differ")
        dist = np.round(np.linalg.norm(Y - x, axis=1), self.decimals)
        order = sorted(ranked.order, key=lambda w: (dist[og2.position(w)], ranked.rank(w)))
        return NominationList(tuple(order))

    def describe(self) -> dict:
        return {"name": self.name, "base": self.base.describe()}
