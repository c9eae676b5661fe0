from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher

from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.graph.permutation import Permutation


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of a vertex set into automorphism orbits, sorted by smallest member."""

    orbits: tuple[frozenset[VertexLabel], ...]

    @cached_property
    def _lookup(self) -> dict[VertexLabel, frozenset[VertexLabel]]:
        return {x: orb for orb in self.orbits for x in orb}

    def orbit_of(self, label: VertexLabel) -> frozenset[VertexLabel]:
        return self._lookup[label]

    def is_trivial(self) -> bool:
        return all(len(orb) == 1 for orb in self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)


def _features_equal(a: dict, b: dict) -> bool:
    return a.get("features") == b.get("features") and a.get("pin") == b.get("pin")


def _nx(g: LabeledGraph, respect_features: bool) -> nx.Graph:
    G = g.to_networkx()
    if not respect_features:
        for _, data in G.nodes(data=True):
            data.pop("features", None)
    return G


def _matcher(G: nx.Graph, H: nx.Graph, with_attrs: bool) -> GraphMatcher:
    if with_attrs:
        return GraphMatcher(G, H, node_match=_features_equal)
    return GraphMatcher(G, H)


def find_isomorphism(
    g: LabeledGraph, h: LabeledGraph, respect_features: bool = True
) -> Permutation | None:
    """Some ``sigma`` with ``permute(g, sigma) == h``, or ``None`` when ``g`` and ``h`` differ.

    With ``respect_features`` the map must also carry every feature vector onto an
    identical one.
    """
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    if respect_features and g.has_features != h.has_features:
        return None
    if not np.array_equal(np.sort(g.degrees), np.sort(h.degrees)):
        return None
    with_attrs = respect_features and g.has_features
    gm = _matcher(_nx(g, respect_features), _nx(h, respect_features), with_attrs)
    if not gm.is_isomorphic():
        return None
    return Permutation.from_mapping(gm.mapping)


def automorphism_orbits(g: LabeledGraph, respect_features: bool = False) -> OrbitPartition:
    """Exact orbits of ``Aut(g)`` acting on the vertices.

    ``respect_features`` restricts to automorphisms that keep every vertex on an
    identical feature vector (the tightened orbit sets used for featured graphs).
    """
    use_feats = respect_features and g.has_features
    G = _nx(g, use_feats)
    parent = {x: x for x in g.labels}

    def find(x: VertexLabel) -> VertexLabel:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: VertexLabel, b: VertexLabel) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for i, a in enumerate(g.labels):
        for b in g.labels[i + 1 :]:
            if find(a) == find(b) or g.degree(a) != g.degree(b):
                continue
            if use_feats and not np.array_equal(g.feature_of(a), g.feature_of(b)):
                continue
            G1, G2 = G.copy(), G.copy()
            G1.nodes[a]["pin"] = True
            G2.nodes[b]["pin"] = True
            gm = GraphMatcher(G1, G2, node_match=_features_equal)
            if gm.is_isomorphic():
                for x, y in gm.mapping.items():
                    union(x, y)

    groups: dict[VertexLabel, set[VertexLabel]] = {}
    for x in g.labels:
        groups.setdefault(find(x), set()).add(x)
    orbits = sorted((frozenset(s) for s in groups.values()), key=min)
    return OrbitPartition(tuple(orbits))


def is_asymmetric(g: LabeledGraph, respect_features: bool = False) -> bool:
    return automorphism_orbits(g, respect_features=respect_features).is_trivial()


def automorphism_count(g: LabeledGraph, respect_features: bool = False) -> int:
    """``|Aut(g)|``, by exhaustive VF2 enumeration."""
    use_feats = respect_features and g.has_features
    G = _nx(g, use_feats)
    return sum(1 for _ in _matcher(G, G, use_feats).isomorphisms_iter())
