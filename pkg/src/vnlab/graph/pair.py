from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from vnlab.errors import GraphInputError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import Namespace, VertexLabel


@dataclass(frozen=True)
class NominatablePair:
    """A ``(G1, G2)`` draw with ``core_size`` shared vertices.

    Core correspondence is by label id: ``v_i`` in G1 and ``u_i`` in G2 are the same
    vertex for ``i <= core_size``; all other vertices are junk.
    """

    g1: LabeledGraph
    g2: LabeledGraph
    core_size: int
    theta: Any = field(default=None, compare=False)

    def __post_init__(self) -> None:
        c = self.core_size
        if not 0 <= c <= min(self.g1.n, self.g2.n):
            raise GraphInputError(f"core size {c} outside [0, {min(self.g1.n, self.g2.n)}]")
        if any(lab.namespace != Namespace.V1 for lab in self.g1.labels):
            raise GraphInputError("g1 must be labeled in V1")
        if any(lab.namespace != Namespace.V2 for lab in self.g2.labels):
            raise GraphInputError("g2 must be labeled in V2")
        for i in range(1, c + 1):
            if VertexLabel.v(i) not in self.g1.index or VertexLabel.u(i) not in self.g2.index:
                raise GraphInputError(f"core vertex {i} missing from one of the graphs")

    @property
    def n(self) -> int:
        return self.g1.n

    @property
    def m(self) -> int:
        return self.g2.n

    @property
    def core_ids(self) -> range:
        return range(1, self.core_size + 1)

    @property
    def core_v1(self) -> tuple[VertexLabel, ...]:
        return tuple(VertexLabel.v(i) for i in self.core_ids)

    @property
    def core_v2(self) -> tuple[VertexLabel, ...]:
        return tuple(VertexLabel.u(i) for i in self.core_ids)

    @property
    def junk1(self) -> tuple[VertexLabel, ...]:
        return tuple(lab for lab in self.g1.labels if lab.id > self.core_size)

    @property
    def junk2(self) -> tuple[VertexLabel, ...]:
        return tuple(lab for lab in self.g2.labels if lab.id > self.core_size)

    def is_core(self, v: VertexLabel) -> bool:
        return v.namespace == Namespace.V1 and 1 <= v.id <= self.core_size and v in self.g1.index

    def correspondent(self, v: VertexLabel) -> VertexLabel:
        """The G2 vertex matched to core vertex ``v`` of G1."""
        if not self.is_core(v):
            raise GraphInputError(f"{v} is not a core vertex (core size {self.core_size})")
        return VertexLabel.u(v.id)
