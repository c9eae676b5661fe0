from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from vnlab.config import settings
from vnlab.errors import EnumerationCapError
from vnlab.graph.core import LabeledGraph, permute
from vnlab.graph.labels import VertexLabel
from vnlab.graph.permutation import Permutation


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative of the isomorphism class of a graph.

    ``key`` is label free: ``(n, colours, bits)`` where ``bits`` is the column-major
    upper triangle of the adjacency in canonical order. ``order[i]`` is the input vertex
    placed at canonical position ``i``; ``canonical_graph`` carries the input's sorted
    labels in canonical positions and ``witness`` maps input labels onto it.
    """

    key: tuple
    order: tuple[VertexLabel, ...]
    canonical_graph: LabeledGraph
    witness: Permutation

    def position(self, label: VertexLabel) -> int:
        return self.order.index(label)


def _colours(g: LabeledGraph) -> list[tuple[float, ...]]:
    if g.features is None:
        return [()] * g.n
    return [tuple(float(x) for x in row) for row in g.features]


def _minimal_orders(g: LabeledGraph) -> list[tuple[int, ...]]:
    """All position orders whose column-major adjacency string is lexicographically smallest.

    Orders are restricted to colour-nondecreasing placements. A prefix that is not minimal
    cannot complete to a minimal string, so only minimal prefixes are kept per level.
    """
    n = g.n
    A = g.adjacency
    col = _colours(g)
    slots = sorted(col)
    states: list[tuple[int, ...]] = [()]
    for j in range(n):
        want = slots[j]
        best: tuple[bool, ...] | None = None
        nxt: list[tuple[int, ...]] = []
        for order in states:
            used = set(order)
            for x in range(n):
                if x in used or col[x] != want:
                    continue
                column = tuple(bool(A[p, x]) for p in order)
                if best is None or column < best:
                    best = column
                    nxt = [order + (x,)]
                elif column == best:
                    nxt.append(order + (x,))
        states = nxt
    return states


@lru_cache(maxsize=65536)
def _canonical(g: LabeledGraph) -> CanonicalForm:
    orders = _minimal_orders(g)
    order_idx = orders[0]
    A = g.adjacency
    bits = tuple(
        bool(A[order_idx[i], order_idx[j]]) for j in range(g.n) for i in range(j)
    )
    colours = tuple(sorted(_colours(g))) if g.has_features else ()
    order = tuple(g.labels[i] for i in order_idx)
    witness = Permutation.from_sequences(order, g.labels)
    return CanonicalForm(
        key=(g.n, colours, bits),
        order=order,
        canonical_graph=permute(g, witness),
        witness=witness,
    )


def canonical_form(g: LabeledGraph, cap: int | None = None) -> CanonicalForm:
    """Canonical form by pruned search over placements.

    :param g: input graph; feature vectors act as vertex colours when present.
    :param cap: largest vertex count accepted (defaults to ``settings.enumeration_cap``).
    :raises EnumerationCapError: if ``g`` has more vertices than ``cap``.
    """
    cap = settings.enumeration_cap if cap is None else cap
    if g.n > cap:
        raise EnumerationCapError("canonical form", g.n, cap, "raise VNLAB_ENUMERATION_CAP")
    return _canonical(g)


def canonical_key(g: LabeledGraph, cap: int | None = None) -> tuple:
    return canonical_form(g, cap=cap).key


def structural_order(g: LabeledGraph, cap: int | None = None) -> tuple[VertexLabel, ...]:
    """A vertex order that depends on structure only, as far as it can.

    Canonical placement up to ``cap`` vertices; above it, vertices sort by degree and
    Weisfeiler-Lehman neighbourhood hashes, with the label as the last resort.
    """
    cap = settings.enumeration_cap if cap is None else cap
    if g.n <= cap:
        return canonical_form(g, cap=cap).order

    G = g.to_networkx()
    node_attr = None
    if g.has_features:
        for _, data in G.nodes(data=True):
            data["colour"] = repr(data.pop("features"))
        node_attr = "colour"
    hashes = nx.weisfeiler_lehman_subgraph_hashes(G, iterations=3, node_attr=node_attr)
    return tuple(sorted(g.labels, key=lambda x: (g.degree(x), tuple(hashes[x]), x)))
