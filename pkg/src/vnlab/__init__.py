"""Vertex Nomination Lab.

Graph pairs, nomination schemes and their level-k errors. Scenarios, the CLI and plots sit
on top of the engine packages and never the other way round.
"""

__all__ = [
    "adversarial",
    "config",
    "eval",
    "graph",
    "iso",
    "models",
    "schemes",
]
