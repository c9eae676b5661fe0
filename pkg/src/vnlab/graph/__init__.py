from vnlab.graph.core import (
    LabeledGraph,
    apply_obfuscation,
    induced_subgraph,
    make_graph,
    permute,
    reveal,
)
from vnlab.graph.labels import Namespace, VertexLabel, labels_in
from vnlab.graph.pair import NominatablePair
from vnlab.graph.permutation import Obfuscation, Permutation

__all__ = [
    "LabeledGraph",
    "Namespace",
    "NominatablePair",
    "Obfuscation",
    "Permutation",
    "VertexLabel",
    "apply_obfuscation",
    "induced_subgraph",
    "labels_in",
    "make_graph",
    "permute",
    "reveal",
]
