from vnlab.adversarial.construction import (
    AdversarialReport,
    SandwichRow,
    adversarial_report,
    build_adversarial,
    chance_line,
)
from vnlab.adversarial.epsilon import EpsilonSequence, as_fraction
from vnlab.adversarial.fibers import FiberDraw, RankFiber, fiber_sizes, rank_fibers, sample_fiber
from vnlab.adversarial.sequence import SequenceReport, SequenceRow, universal_inconsistency_sequence

__all__ = [
    "AdversarialReport",
    "EpsilonSequence",
    "FiberDraw",
    "RankFiber",
    "SandwichRow",
    "SequenceReport",
    "SequenceRow",
    "adversarial_report",
    "as_fraction",
    "build_adversarial",
    "chance_line",
    "fiber_sizes",
    "rank_fibers",
    "sample_fiber",
    "universal_inconsistency_sequence",
]
