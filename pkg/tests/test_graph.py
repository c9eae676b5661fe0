import numpy as np
import pytest

from vnlab.errors import GraphInputError
from vnlab.graph import (
    LabeledGraph,
    Namespace,
    NominatablePair,
    Obfuscation,
    Permutation,
    VertexLabel,
    apply_obfuscation,
    induced_subgraph,
    labels_in,
    make_graph,
    permute,
    reveal,
)

v, u, w = VertexLabel.v, VertexLabel.u, VertexLabel.w


def test_make_graph_path_and_edge_membership():
    g = make_graph(3, [(1, 2), (2, 3)])
    assert g.n == 3
    assert g.edge_count == 2
    assert g.has_edge(v(1), v(2))
    assert g.has_edge(v(2), v(1))
    assert not g.has_edge(v(1), v(3))
    assert g.degree(v(2)) == 2


def test_duplicate_and_reversed_pairs_collapse():
    g = make_graph(3, [(1, 2), (2, 1), (1, 2)])
    assert g.edge_count == 1


def test_self_loop_rejected():
    with pytest.raises(GraphInputError):
        make_graph(3, [(1, 1)])


def test_out_of_range_endpoint_rejected():
    with pytest.raises(GraphInputError):
        make_graph(3, [(1, 4)])


def test_asymmetric_matrix_rejected():
    with pytest.raises(GraphInputError):
        LabeledGraph.from_adjacency(labels_in(Namespace.V1, range(1, 3)), [[0, 1], [0, 0]])


def test_empty_graph_has_no_edges():
    g = LabeledGraph.empty(labels_in(Namespace.V1, range(1, 5)))
    assert g.n == 4
    assert g.edge_count == 0


def test_equality_is_by_labels_and_edges():
    a = make_graph(3, [(1, 2)])
    b = LabeledGraph.from_adjacency([v(3), v(2), v(1)], [[0, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert a == b
    assert hash(a) == hash(b)
    assert a != make_graph(3, [(2, 3)])


def test_labels_stay_sorted_with_multi_digit_ids():
    g = make_graph(12, [(1, 12)])
    assert g.labels[0] == v(1)
    assert g.labels[-1] == v(12)
    assert g.has_edge(v(1), v(12))


def test_permute_identity_is_noop():
    g = make_graph(4, [(1, 2), (3, 4)])
    assert permute(g, Permutation.identity(g.labels)) == g


def test_permute_moves_edges_with_vertices():
    g = make_graph(3, [(1, 2)])
    sigma = Permutation.from_cycles(g.labels, [v(1), v(3)])
    h = permute(g, sigma)
    assert h.has_edge(v(3), v(2))
    assert not h.has_edge(v(1), v(2))


def test_permutation_compose_and_inverse():
    labels = labels_in(Namespace.V1, range(1, 4))
    a = Permutation.from_cycles(labels, [v(1), v(2), v(3)])
    assert a.compose(a.inverse()).is_identity()
    assert a.compose(a)(v(1)) == v(3)


def test_permutation_rejects_non_injective_map():
    with pytest.raises(GraphInputError):
        Permutation(((v(1), v(2)), (v(2), v(2))))


def test_obfuscation_round_trip():
    g2 = make_graph(5, [(1, 2), (2, 3), (4, 5)], Namespace.V2)
    o = Obfuscation.random(g2.labels, np.random.default_rng(3))
    og2 = apply_obfuscation(g2, o)
    assert all(x.namespace == Namespace.W for x in og2.labels)
    assert og2.edge_count == g2.edge_count
    assert reveal(og2, o) == g2


def test_standard_obfuscation_maps_u_i_to_w_i():
    o = Obfuscation.standard(labels_in(Namespace.V2, range(1, 4)))
    assert o(u(2)) == w(2)


def test_obfuscation_targets_must_be_in_w():
    with pytest.raises(GraphInputError):
        Obfuscation(((u(1), v(1)),))


def test_relabeling_domain_must_match():
    g = make_graph(3, [(1, 2)])
    with pytest.raises(GraphInputError):
        permute(g, Permutation.identity(labels_in(Namespace.V1, range(1, 3))))


def test_features_follow_relabeling():
    X = [[1.0], [2.0], [3.0]]
    g = make_graph(3, [(1, 2)], Namespace.V2, features=X)
    o = Obfuscation(((u(1), w(3)), (u(2), w(1)), (u(3), w(2))))
    og = apply_obfuscation(g, o)
    assert og.feature_of(w(3))[0] == 1.0
    assert og.feature_of(w(1))[0] == 2.0


def test_feature_row_count_checked():
    with pytest.raises(GraphInputError):
        make_graph(3, [], features=[[1.0], [2.0]])


def test_zero_width_features_mean_no_features():
    g = make_graph(2, [], features=np.zeros((2, 0)))
    assert not g.has_features


def test_induced_subgraph_keeps_labels():
    g = make_graph(4, [(1, 2), (2, 3), (3, 4)])
    h = induced_subgraph(g, [v(2), v(3), v(4)])
    assert h.labels == (v(2), v(3), v(4))
    assert h.edge_count == 2


def test_to_networkx_matches_edges():
    g = make_graph(4, [(1, 2), (3, 4)])
    G = g.to_networkx()
    assert G.number_of_nodes() == 4
    assert G.has_edge(v(3), v(4))


def test_pair_correspondent_and_junk():
    g1 = make_graph(4, [(1, 2)])
    g2 = make_graph(5, [(1, 2)], Namespace.V2)
    pair = NominatablePair(g1, g2, core_size=3)
    assert pair.correspondent(v(2)) == u(2)
    assert pair.junk1 == (v(4),)
    assert pair.junk2 == (u(4), u(5))
    with pytest.raises(GraphInputError):
        pair.correspondent(v(4))


def test_pair_core_size_bounded():
    g1 = make_graph(3, [])
    g2 = make_graph(3, [], Namespace.V2)
    with pytest.raises(GraphInputError):
        NominatablePair(g1, g2, core_size=4)


def test_pair_namespaces_enforced():
    g = make_graph(3, [])
    with pytest.raises(GraphInputError):
        NominatablePair(g, g, core_size=3)
