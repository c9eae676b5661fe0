from __future__ import annotations

import hashlib

import numpy as np

from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.schemes.base import PositionalScheme
from vnlab.schemes.tiebreak import TieBreak


class RandomBaselineScheme(PositionalScheme):
    """A fixed pseudo-random order of W seeded by the structure of ``o(g2)``.

    Two obfuscations of the same graph see the same positional copy and therefore the
    same draw, so the output only depends on labels through the tie-break order.
    """

    name = "random-baseline"

    def __init__(self, seed: int = 0, tie_break: TieBreak | None = None) -> None:
        super().__init__(tie_break)
        self.seed = int(seed)

    def _rank(self, g1: LabeledGraph, h: LabeledGraph, v_star: VertexLabel) -> list[int]:
        digest = hashlib.sha256(h.packed)
        if h.features is not None:
            digest.update(h.features.tobytes())
        entropy = [self.seed, int.from_bytes(digest.digest()[:16], "big"), h.n]
        gen = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
        return gen.permutation(h.n).tolist()

    def describe(self) -> dict:
        return {"name": self.name, "seed": self.seed}
