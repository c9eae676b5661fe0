from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngState:
    """Counter-based random stream identified by ``(seed, stream)``.

    ``stream`` is a tuple of non-negative counters; ``child(i)`` appends one, so every
    Monte Carlo trial gets its own stream no matter which worker runs it.
    """

    seed: int
    stream: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
        if any(s < 0 for s in self.stream):
            raise ValueError("stream counters must be >= 0")

    def child(self, i: int) -> RngState:
        return RngState(self.seed, (*self.stream, int(i)))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        return np.random.Generator(np.random.Philox(ss))

    def __str__(self) -> str:
        if not self.stream:
            return str(self.seed)
        return f"{self.seed}/" + ".".join(str(s) for s in self.stream)


def as_generator(rng: RngState | np.random.Generator | int | None) -> np.random.Generator:
    """Accept an ``RngState``, a numpy generator or a bare seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngState):
        return rng.generator()
    return RngState(0 if rng is None else int(rng)).generator()
