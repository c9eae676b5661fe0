from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence

from vnlab.errors import SchemeInputError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.iso.canonical import canonical_form, structural_order


class TieBreak(ABC):
    """A total order ``T`` on the obfuscated vertex set, used to break ties."""

    @abstractmethod
    def order(self, og2: LabeledGraph) -> tuple[VertexLabel, ...]: ...


class CanonicalTieBreak(TieBreak):
    """Structural order: canonical positions, Weisfeiler-Lehman hashes above the cap."""

    def order(self, og2: LabeledGraph) -> tuple[VertexLabel, ...]:
        return structural_order(og2)

    def __repr__(self) -> str:
        return "CanonicalTieBreak()"


class FixedTieBreak(TieBreak):
    """A caller-supplied order on W."""

    def __init__(self, T: Sequence[VertexLabel]) -> None:
        self.T = tuple(T)
        if len(set(self.T)) != len(self.T):
            raise SchemeInputError("tie-break order lists a vertex twice")

    def order(self, og2: LabeledGraph) -> tuple[VertexLabel, ...]:
        if set(self.T) != set(og2.labels):
            raise SchemeInputError("tie-break order must cover exactly the obfuscated labels")
        return self.T

    def __repr__(self) -> str:
        return f"FixedTieBreak({', '.join(str(w) for w in self.T)})"


class RepresentativeTieBreak(TieBreak):
    """Ties ordered by the labels of a chosen representative of each isomorphism class.

    ``representatives`` maps a canonical key to one class member labeled in W. A vertex
    of the input takes the label rank of the representative vertex in the same canonical
    position, i.e. the order is carried over by the isomorphism from the representative.
    Classes without a representative fall back to canonical order.
    """

    def __init__(self, representatives: Mapping[tuple, LabeledGraph]) -> None:
        self.representatives = dict(representatives)

    def order(self, og2: LabeledGraph) -> tuple[VertexLabel, ...]:
        cf = canonical_form(og2)
        rep = self.representatives.get(cf.key)
        if rep is None:
            return cf.order
        rep_cf = canonical_form(rep)
        label_rank = {w: i for i, w in enumerate(rep.labels)}
        slot = [label_rank[w] for w in rep_cf.order]
        return tuple(w for _, w in sorted(zip(slot, cf.order)))
