from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from vnlab.errors import SchemeInputError
from vnlab.graph.core import LabeledGraph, positional_labels, relabel
from vnlab.graph.labels import Namespace, VertexLabel
from vnlab.schemes.tiebreak import CanonicalTieBreak, TieBreak


@dataclass(frozen=True)
class NominationList:
    """A total order on the obfuscated vertex set; ranks are 1-based positions."""

    order: tuple[VertexLabel, ...]

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise SchemeInputError("a nomination list must list every vertex exactly once")

    @cached_property
    def _rank(self) -> dict[VertexLabel, int]:
        return {w: i + 1 for i, w in enumerate(self.order)}

    def rank(self, w: VertexLabel) -> int:
        try:
            return self._rank[w]
        except KeyError:
            raise SchemeInputError(f"{w} is not in the nomination list") from None

    def at(self, k: int) -> VertexLabel:
        """The rank-``k`` vertex."""
        if not 1 <= k <= len(self.order):
            raise SchemeInputError(f"rank {k} outside [1, {len(self.order)}]")
        return self.order[k - 1]

    def top(self, k: int) -> tuple[VertexLabel, ...]:
        return self.order[:k]

    def reversed(self) -> NominationList:
        return NominationList(tuple(reversed(self.order)))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[VertexLabel]:
        return iter(self.order)


def check_scheme_inputs(g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel) -> None:
    if v_star not in g1.index:
        raise SchemeInputError(f"vertex of interest {v_star} is not a vertex of g1")
    if any(w.namespace != Namespace.W for w in og2.labels):
        raise SchemeInputError("the second graph must carry obfuscated (W) labels")


class Scheme(ABC):
    """Deterministic map ``(g1, o(g2), v*) -> NominationList`` over the obfuscated labels.

    Optional vertex features travel on the graphs themselves.
    """

    name: str = "scheme"

    @abstractmethod
    def nominate(
        self, g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel
    ) -> NominationList: ...

    def __call__(self, g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel) -> NominationList:
        return self.nominate(g1, og2, v_star)

    def describe(self) -> dict[str, Any]:
        return {"name": self.name}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class PositionalScheme(Scheme):
    """Template for schemes that only look at structure.

    ``og2`` is relabeled ``w_1..w_m`` in tie-break order; ``_rank`` sees that positional
    copy and returns an ordering of its positions (0-based). Results are memoized per
    ``(g1, positional copy, v*)`` in a per-process table.
    """

    memo_size: int = 4096

    def __init__(self, tie_break: TieBreak | None = None) -> None:
        self.tie_break = tie_break or CanonicalTieBreak()
        self._memo: dict[tuple[LabeledGraph, LabeledGraph, VertexLabel], tuple[int, ...]] = {}

    @abstractmethod
    def _rank(self, g1: LabeledGraph, h: LabeledGraph, v_star: VertexLabel) -> Sequence[int]: ...

    def nominate(self, g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel) -> NominationList:
        check_scheme_inputs(g1, og2, v_star)
        T = self.tie_break.order(og2)
        h = relabel(og2, positional_labels(og2, T, Namespace.W))
        key = (g1, h, v_star)
        positions = self._memo.get(key)
        if positions is None:
            positions = tuple(int(p) for p in self._rank(g1, h, v_star))
            if sorted(positions) != list(range(og2.n)):
                raise SchemeInputError(f"{self.name} produced an invalid ordering")
            if len(self._memo) >= self.memo_size:
                self._memo.clear()
            self._memo[key] = positions
        return NominationList(tuple(T[p] for p in positions))

    def __getstate__(self) -> dict[str, Any]:
        state = self.__dict__.copy()
        state["_memo"] = {}
        return state


def order_by_score(scores: Sequence[float], descending: bool = True) -> list[int]:
    """Positions sorted by score; equal scores keep position (tie-break) order."""
    sign = -1.0 if descending else 1.0
    return sorted(range(len(scores)), key=lambda i: (sign * scores[i], i))
