from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum


class Namespace(StrEnum):
    """Label sets of the nomination problem: V1 (first graph), V2 (second graph), W (obfuscated)."""

    V1 = "v"
    V2 = "u"
    W = "w"


@dataclass(frozen=True, order=True, slots=True)
class VertexLabel:
    """An opaque integer label tagged with its namespace.

    Labels order by (namespace, id); graphs keep their labels in this order.
    """

    namespace: Namespace
    id: int

    def __str__(self) -> str:
        return f"{self.namespace.value}{self.id}"

    @classmethod
    def v(cls, i: int) -> VertexLabel:
        return cls(Namespace.V1, i)

    @classmethod
    def u(cls, i: int) -> VertexLabel:
        return cls(Namespace.V2, i)

    @classmethod
    def w(cls, i: int) -> VertexLabel:
        return cls(Namespace.W, i)


def labels_in(namespace: Namespace, ids: range | list[int]) -> tuple[VertexLabel, ...]:
    return tuple(VertexLabel(namespace, i) for i in ids)
