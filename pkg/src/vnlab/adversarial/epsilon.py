from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from vnlab.errors import DistributionError


def as_fraction(x: Fraction | float | int | str) -> Fraction:
    """Exact rational; floats go through their shortest decimal repr, so 0.1 is 1/10."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class EpsilonSequence:
    """Strictly increasing ``eps_1 < ... < eps_m`` with ``0 < eps_i < i/m``.

    ``xi`` is the fiber mass vector: ``xi_i = eps_i - eps_{i-1}`` for ``i < m`` and
    ``xi_m = 1 - eps_{m-1}``.
    """

    eps: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        m = len(self.eps)
        if m < 2:
            raise DistributionError("an epsilon sequence needs m >= 2")
        for i, e in enumerate(self.eps, start=1):
            if not 0 < e < Fraction(i, m):
                raise DistributionError(f"eps_{i} = {e} must lie in (0, {i}/{m})")
        if any(b <= a for a, b in zip(self.eps, self.eps[1:])):
            raise DistributionError("eps must be strictly increasing")

    @classmethod
    def of(cls, values) -> EpsilonSequence:
        return cls(tuple(as_fraction(v) for v in values))

    @classmethod
    def linear(cls, m: int, denominator: int) -> EpsilonSequence:
        """``eps_i = i / denominator``; needs ``denominator > m``."""
        return cls(tuple(Fraction(i, denominator) for i in range(1, m + 1)))

    @classmethod
    def default(cls, m: int) -> EpsilonSequence:
        return cls.linear(m, 2 * m * m)

    @classmethod
    def targeted(cls, m: int, k: int, eps_target: Fraction | float) -> EpsilonSequence:
        """Quadratic ramp reaching ``eps_target`` at ``i = m - k``, then a shallow linear tail.

        Small ``eps_1`` makes the target scheme's level-1 error ``1 - eps_1`` close to one
        while the reversed scheme's level-``k`` error stays at ``eps_target``.
        """
        if not 1 <= k <= m - 1:
            raise DistributionError(f"k={k} outside [1, {m - 1}]")
        target = as_fraction(eps_target)
        top = m - k
        if not 0 < target < Fraction(top, m):
            raise DistributionError(f"eps_target {target} must lie in (0, {top}/{m})")
        step = (1 - target) / (2 * m)
        eps = [target * Fraction(i, top) ** 2 for i in range(1, top + 1)]
        eps += [target + (i - top) * step for i in range(top + 1, m + 1)]
        return cls(tuple(eps))

    @property
    def m(self) -> int:
        return len(self.eps)

    def __getitem__(self, i: int) -> Fraction:
        """1-based ``eps_i``; ``eps_0 = 0``."""
        if i == 0:
            return Fraction(0)
        if not 1 <= i <= self.m:
            raise IndexError(f"eps index {i} outside [0, {self.m}]")
        return self.eps[i - 1]

    @property
    def xi(self) -> tuple[Fraction, ...]:
        m = self.m
        return tuple(self[i] - self[i - 1] for i in range(1, m)) + (1 - self[m - 1],)
