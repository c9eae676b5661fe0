from __future__ import annotations

from loguru import logger

from vnlab.errors import SchemeInputError
from vnlab.graph.core import LabeledGraph, apply_obfuscation
from vnlab.graph.labels import VertexLabel
from vnlab.graph.permutation import Obfuscation
from vnlab.iso.isomorphism import automorphism_orbits
from vnlab.schemes.base import Scheme


def orbit_rank_sets(
    scheme: Scheme, g1: LabeledGraph, g2: LabeledGraph, v_star: VertexLabel, o: Obfuscation
) -> dict[frozenset[VertexLabel], frozenset[int]]:
    """Ranks taken by each automorphism orbit of ``g2`` when it is observed through ``o``.

    Orbits only merge vertices with identical features when ``g2`` carries features.
    """
    ranked = scheme.nominate(g1, apply_obfuscation(g2, o), v_star)
    orbits = automorphism_orbits(g2, respect_features=True).orbits
    return {orb: frozenset(ranked.rank(o(u)) for u in orb) for orb in orbits}


def check_consistency_criterion(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    v_star: VertexLabel,
    o1: Obfuscation,
    o2: Obfuscation,
) -> bool:
    """True when every orbit of ``g2`` receives the same set of ranks under ``o1`` and ``o2``."""
    if o1.domain != o2.domain or o1.codomain != o2.codomain:
        raise SchemeInputError("both obfuscations must map the same labels onto the same W")
    first = orbit_rank_sets(scheme, g1, g2, v_star, o1)
    second = orbit_rank_sets(scheme, g1, g2, v_star, o2)
    for orb, ranks in first.items():
        if second[orb] != ranks:
            logger.debug(
                "{} breaks label independence: orbit {} ranks {} vs {}",
                scheme.name,
                sorted(str(u) for u in orb),
                sorted(ranks),
                sorted(second[orb]),
            )
            return False
    return True
