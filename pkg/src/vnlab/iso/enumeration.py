from __future__ import annotations

from collections.abc import Iterator
from itertools import permutations

import numpy as np
from loguru import logger

from vnlab.config import settings
from vnlab.errors import EnumerationCapError
from vnlab.graph.core import LabeledGraph, pack_upper


def iter_relabelings(g: LabeledGraph) -> Iterator[tuple[tuple[int, ...], LabeledGraph]]:
    """Every relabeling of ``g`` on its own label set, with repeats.

    Yields ``(p, h)`` where the vertex at position ``i`` of ``h`` is the vertex at
    position ``p[i]`` of ``g``.
    """
    A = g.adjacency
    X = g.features
    for p in permutations(range(g.n)):
        idx = list(p)
        packed = pack_upper(A[np.ix_(idx, idx)])
        feats = None
        if X is not None:
            feats = X[idx]
            feats.setflags(write=False)
        yield p, LabeledGraph(g.labels, packed, feats)


def enumerate_iso_class(g: LabeledGraph, cap: int | None = None) -> list[LabeledGraph]:
    """All distinct labeled graphs on ``labels(g)`` isomorphic to ``g``.

    The class has ``n! / |Aut(g)|`` members; order follows the lexicographic order of
    the generating position permutations.

    :raises EnumerationCapError: if ``g`` has more vertices than ``cap``.
    """
    cap = settings.enumeration_cap if cap is None else cap
    if g.n > cap:
        raise EnumerationCapError(
            "isomorphism class enumeration", g.n, cap, "use sampled fibers or raise the cap"
        )
    seen: set[LabeledGraph] = set()
    members: list[LabeledGraph] = []
    for _, h in iter_relabelings(g):
        if h not in seen:
            seen.add(h)
            members.append(h)
    logger.debug("Enumerated {} members of a {}-vertex isomorphism class", len(members), g.n)
    return members
