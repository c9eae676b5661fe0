import numpy as np
import pytest

from vnlab.graph import LabeledGraph, Namespace, labels_in, make_graph
from vnlab.iso import canonical_form
from vnlab.scenarios.catalog import ASYMMETRIC_6


def v2_copy(g: LabeledGraph) -> LabeledGraph:
    """The same adjacency on u_1..u_n."""
    labels = labels_in(Namespace.V2, range(1, g.n + 1))
    return LabeledGraph.from_adjacency(labels, g.adjacency, g.features)


@pytest.fixture
def asym6():
    return make_graph(6, ASYMMETRIC_6)


@pytest.fixture
def canonical_pair():
    """An asymmetric g1 in canonical position order and its V2 twin."""
    g1 = canonical_form(make_graph(6, ASYMMETRIC_6)).canonical_graph
    return g1, v2_copy(g1)


@pytest.fixture
def gen():
    return np.random.default_rng(20190101)
