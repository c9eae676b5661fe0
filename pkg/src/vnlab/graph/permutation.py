from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from vnlab.errors import GraphInputError
from vnlab.graph.labels import Namespace, VertexLabel


@dataclass(frozen=True)
class Permutation:
    """A bijection between two equal-size label sets.

    When domain and codomain coincide this is an element of the symmetric group on the
    label set; ``compose`` and ``inverse`` stay inside the family. ``pairs`` is kept
    sorted by source label so that equal bijections compare and hash equal.
    """

    pairs: tuple[tuple[VertexLabel, VertexLabel], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted(self.pairs))
        sources = [a for a, _ in pairs]
        targets = [b for _, b in pairs]
        if len(set(sources)) != len(sources):
            raise GraphInputError("permutation maps a label twice")
        if len(set(targets)) != len(targets):
            raise GraphInputError("permutation is not injective")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_mapping(cls, mapping: Mapping[VertexLabel, VertexLabel]) -> Permutation:
        return cls(tuple(mapping.items()))

    @classmethod
    def from_sequences(
        cls, sources: Sequence[VertexLabel], targets: Sequence[VertexLabel]
    ) -> Permutation:
        if len(sources) != len(targets):
            raise GraphInputError(
                f"sequence lengths differ: {len(sources)} sources, {len(targets)} targets"
            )
        return cls(tuple(zip(sources, targets, strict=True)))

    @classmethod
    def identity(cls, labels: Iterable[VertexLabel]) -> Permutation:
        return cls(tuple((a, a) for a in labels))

    @classmethod
    def from_cycles(
        cls, labels: Iterable[VertexLabel], *cycles: Sequence[VertexLabel]
    ) -> Permutation:
        mapping = {a: a for a in labels}
        for cycle in cycles:
            for i, a in enumerate(cycle):
                if a not in mapping:
                    raise GraphInputError(f"cycle label {a} outside the label set")
                mapping[a] = cycle[(i + 1) % len(cycle)]
        return cls.from_mapping(mapping)

    @cached_property
    def mapping(self) -> dict[VertexLabel, VertexLabel]:
        return dict(self.pairs)

    @cached_property
    def domain(self) -> frozenset[VertexLabel]:
        return frozenset(a for a, _ in self.pairs)

    @cached_property
    def codomain(self) -> frozenset[VertexLabel]:
        return frozenset(b for _, b in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __call__(self, label: VertexLabel) -> VertexLabel:
        try:
            return self.mapping[label]
        except KeyError:
            raise GraphInputError(f"label {label} is outside the permutation domain") from None

    def inverse(self) -> Permutation:
        return Permutation(tuple((b, a) for a, b in self.pairs))

    def compose(self, other: Permutation) -> Permutation:
        """Return ``self ∘ other`` (apply ``other`` first)."""
        if other.codomain != self.domain:
            raise GraphInputError("cannot compose: codomain of the inner map differs from domain")
        return Permutation(tuple((a, self.mapping[b]) for a, b in other.pairs))

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def matrix(
        self, row_order: Sequence[VertexLabel], col_order: Sequence[VertexLabel]
    ) -> np.ndarray:
        """Permutation matrix Q with ``Q[i, j] = 1`` iff ``self(row_order[i]) == col_order[j]``."""
        col_index = {b: j for j, b in enumerate(col_order)}
        Q = np.zeros((len(row_order), len(col_order)), dtype=np.int64)
        for i, a in enumerate(row_order):
            Q[i, col_index[self(a)]] = 1
        return Q


@dataclass(frozen=True)
class Obfuscation(Permutation):
    """Bijection from V2 onto an obfuscating set W with W disjoint from V1 and V2."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for a, b in self.pairs:
            if a.namespace == Namespace.W:
                raise GraphInputError(f"obfuscation domain label {a} is already in W")
            if b.namespace != Namespace.W:
                raise GraphInputError(f"obfuscation target {b} is not in the obfuscating set W")

    @classmethod
    def standard(cls, labels: Iterable[VertexLabel]) -> Obfuscation:
        """u_i -> w_i."""
        return cls(tuple((a, VertexLabel(Namespace.W, a.id)) for a in labels))

    @classmethod
    def random(cls, labels: Iterable[VertexLabel], rng: np.random.Generator) -> Obfuscation:
        """Uniform bijection onto {w_1, ..., w_m}."""
        sources = sorted(labels)
        ids = rng.permutation(len(sources)) + 1
        return cls(tuple((a, VertexLabel(Namespace.W, int(i))) for a, i in zip(sources, ids)))

    @property
    def forward(self) -> dict[VertexLabel, VertexLabel]:
        return self.mapping

    @property
    def backward(self) -> dict[VertexLabel, VertexLabel]:
        return {b: a for a, b in self.pairs}
