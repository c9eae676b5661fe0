from __future__ import annotations

from collections.abc import Mapping, Sequence

import numpy as np

from vnlab.errors import GraphInputError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import Namespace, VertexLabel, labels_in
from vnlab.graph.pair import NominatablePair


def encode_one_graph_instance(
    g: LabeledGraph,
    blocks: Sequence[Sequence[VertexLabel]],
    seeds: Sequence[Sequence[VertexLabel]] | Mapping[int, Sequence[VertexLabel]],
) -> NominatablePair:
    """Encode a one-graph nomination instance as a graph pair.

    G1 is ``g`` plus one label vertex per block, joined to that block's seeds; G2 is ``g``
    induced on the nonseed vertices, which form the core. Nonseeds keep their relative
    order and take ids ``1..c``, seeds follow, label vertices come last.

    :param g: the observed graph.
    :param blocks: partition of ``labels(g)`` into ``K`` blocks.
    :param seeds: seed set per block (a list aligned with ``blocks`` or a block-index map).
    :raises GraphInputError: if ``blocks`` is not a partition or seeds overlap or stray.
    """
    K = len(blocks)
    if K < 1:
        raise GraphInputError("at least one block is required")
    covered = [x for blk in blocks for x in blk]
    if len(covered) != len(set(covered)) or set(covered) != set(g.labels):
        raise GraphInputError("blocks must partition the vertex set")
    if isinstance(seeds, Mapping):
        seed_sets = [list(seeds.get(k, ())) for k in range(K)]
    else:
        if len(seeds) > K:
            raise GraphInputError("more seed sets than blocks")
        seed_sets = [list(s) for s in seeds] + [[] for _ in range(K - len(seeds))]

    block_of = {x: k for k, blk in enumerate(blocks) for x in blk}
    all_seeds: list[VertexLabel] = []
    for k, S in enumerate(seed_sets):
        for s in S:
            if s not in block_of:
                raise GraphInputError(f"seed {s} is not a vertex of the graph")
            if block_of[s] != k:
                raise GraphInputError(f"seed {s} is not in block {k + 1}")
        all_seeds.extend(S)
    if len(all_seeds) != len(set(all_seeds)):
        raise GraphInputError("seed sets overlap")

    seed_set = set(all_seeds)
    nonseeds = [x for x in g.labels if x not in seed_set]
    seeds_sorted = [x for x in g.labels if x in seed_set]
    c, n = len(nonseeds), g.n
    old_order = nonseeds + seeds_sorted
    pos = [g.position(x) for x in old_order]

    A1 = np.zeros((n + K, n + K), dtype=bool)
    A1[:n, :n] = g.adjacency[np.ix_(pos, pos)]
    new_id = {x: i for i, x in enumerate(old_order)}
    for k, S in enumerate(seed_sets):
        for s in S:
            A1[new_id[s], n + k] = A1[n + k, new_id[s]] = True

    g1 = LabeledGraph.from_adjacency(labels_in(Namespace.V1, range(1, n + K + 1)), A1)
    A2 = g.adjacency[np.ix_(pos[:c], pos[:c])]
    g2 = LabeledGraph.from_adjacency(labels_in(Namespace.V2, range(1, c + 1)), A2)

    theta = {
        "model": "one-graph",
        "relabel": {x: VertexLabel.v(new_id[x] + 1) for x in old_order},
        "label_vertices": tuple(VertexLabel.v(n + k + 1) for k in range(K)),
        "seed_blocks": {
            VertexLabel.v(new_id[s] + 1): k + 1 for k, S in enumerate(seed_sets) for s in S
        },
    }
    return NominatablePair(g1, g2, core_size=c, theta=theta)
