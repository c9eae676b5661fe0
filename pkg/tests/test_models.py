import numpy as np
import pytest

from vnlab.errors import GraphInputError, ModelParameterError
from vnlab.graph import Namespace, VertexLabel, make_graph
from vnlab.iso import is_asymmetric
from vnlab.models import (
    BehaviorFlipFamily,
    CorrelatedErFamily,
    CorrelatedErParams,
    FeatureFlipFamily,
    IidSbmFamily,
    IndependentErFamily,
    LatentPositions,
    RngState,
    SbmParams,
    encode_one_graph_instance,
    sample_asymmetric_er,
    sample_correlated_er,
    sample_er,
    sample_er_matrix,
    sample_rdpg,
    sample_rdpg_pair,
    sample_sbm,
)

v, u = VertexLabel.v, VertexLabel.u


def test_rng_state_is_reproducible_and_streams_differ():
    a = RngState(7).child(3).generator().random(4)
    b = RngState(7).child(3).generator().random(4)
    c = RngState(7).child(4).generator().random(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_rng_state_rejects_negative_seed():
    with pytest.raises(ValueError):
        RngState(-1)


def test_rng_state_str():
    assert str(RngState(5)) == "5"
    assert str(RngState(5).child(1).child(2)) == "5/1.2"


def test_er_extremes():
    assert sample_er(6, 0.0, 1).edge_count == 0
    assert sample_er(6, 1.0, 1).edge_count == 15


def test_er_rejects_bad_probability():
    with pytest.raises(ModelParameterError):
        sample_er(5, 1.5, 0)


def test_er_density_roughly_p():
    g = sample_er(200, 0.3, RngState(1))
    density = g.edge_count / (200 * 199 / 2)
    assert abs(density - 0.3) < 0.02


def test_er_matrix_follows_the_probabilities():
    P = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    g = sample_er_matrix(P, RngState(4))
    assert np.array_equal(g.adjacency, P)


def test_rdpg_from_orthogonal_positions():
    g = sample_rdpg(np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]), RngState(4))
    assert g.edge_count == 1
    assert g.adjacency[0, 1]


def test_sbm_cliques_when_q_zero():
    params = SbmParams.balanced([[1.0, 0.0], [0.0, 1.0]], 6)
    g = sample_sbm(params, 0)
    assert g.edge_count == 6
    assert g.has_edge(v(1), v(3))
    assert not g.has_edge(v(3), v(4))


def test_sbm_validates_memberships():
    with pytest.raises(ModelParameterError):
        SbmParams(2, [[0.5, 0.1], [0.1, 0.5]], (1, 3))
    with pytest.raises(ModelParameterError):
        SbmParams.balanced([[0.5, 0.1], [0.1, 0.5]], 5)


def test_correlated_er_rho_one_gives_identical_graphs():
    g1, g2 = sample_correlated_er(CorrelatedErParams.homogeneous(12, 0.4, 1.0), RngState(3))
    assert g1.packed == g2.packed
    assert g1.labels[0] == v(1)
    assert g2.labels[0] == u(1)


def test_correlated_er_infeasible_correlation():
    with pytest.raises(ModelParameterError):
        CorrelatedErParams.homogeneous(4, 0.9, -0.9)


def test_correlated_er_moments():
    n, p, rho = 40, 0.5, 0.6
    params = CorrelatedErParams.homogeneous(n, p, rho)
    iu = np.triu_indices(n, k=1)
    a, b = [], []
    for i in range(50):
        g1, g2 = sample_correlated_er(params, RngState(9).child(i))
        a.append(g1.adjacency[iu])
        b.append(g2.adjacency[iu])
    A = np.concatenate(a).astype(float)
    B = np.concatenate(b).astype(float)
    assert abs(A.mean() - p) < 0.02
    assert abs(B.mean() - p) < 0.02
    assert abs((A * B).mean() - (p**2 + rho * p * (1 - p))) < 0.02


def test_rdpg_pair_has_junk_vertices():
    Y = np.full((8, 1), 0.6)
    pair = sample_rdpg_pair(Y, 5, RngState(2))
    assert pair.g1.n == 5
    assert pair.g2.n == 8
    assert pair.core_size == 5


def test_latent_positions_checked():
    with pytest.raises(ModelParameterError):
        LatentPositions(np.full((3, 1), 1.5))


def test_asymmetric_er_sampler():
    g = sample_asymmetric_er(7, 0.5, RngState(4))
    assert g.n == 7
    assert is_asymmetric(g)


def test_asymmetric_er_refuses_impossible_sizes():
    with pytest.raises(ModelParameterError):
        sample_asymmetric_er(5, 0.5, 0)


@pytest.mark.parametrize(
    "family",
    [
        IndependentErFamily(0.5),
        CorrelatedErFamily(0.5, 0.9),
        IidSbmFamily(),
        BehaviorFlipFamily(case=2),
        FeatureFlipFamily(case=1, coding="first-two-blocks"),
    ],
)
def test_families_sample_nominatable_pairs(family):
    pair = family.sample(12, RngState(0))
    assert pair.n == 12
    assert pair.m == family.m(12)
    assert pair.core_size == 12
    assert pair.is_core(family.v_star(12))


def test_family_sampler_is_reproducible():
    f = IidSbmFamily()
    s = f.sampler(20)
    assert s(RngState(5).generator()).g2 == s(RngState(5).generator()).g2


def test_bayes_references():
    assert IndependentErFamily().bayes_reference(20, 5) == pytest.approx(0.75)
    assert IidSbmFamily().bayes_reference(20, 5) == pytest.approx(0.5)
    assert IidSbmFamily().bayes_reference(20, 10) == 0.0
    assert CorrelatedErFamily().bayes_reference(20, 5) is None


def test_feature_flip_features():
    pair = FeatureFlipFamily(case=2, coding="first-block").sample(9, RngState(1))
    assert pair.g1.feature_of(v(1))[0] == 1.0
    assert pair.g1.feature_of(v(4))[0] == -1.0
    assert pair.g2.feature_of(u(3))[0] == 1.0


def test_feature_flip_needs_three_blocks():
    with pytest.raises(ModelParameterError):
        FeatureFlipFamily().sample(10, RngState(1))


def test_family_case_validated():
    with pytest.raises(ModelParameterError):
        BehaviorFlipFamily(case=3)


def test_one_graph_encoding():
    g = make_graph(4, [(1, 2), (2, 3), (3, 4)])
    pair = encode_one_graph_instance(g, [[v(1), v(2)], [v(3), v(4)]], [[v(1)], [v(4)]])
    assert pair.core_size == 2
    assert pair.g1.n == 6
    assert pair.g2.n == 2
    # nonseeds v2, v3 become v1, v2; seeds v1, v4 become v3, v4; label vertices v5, v6
    assert pair.g1.has_edge(v(1), v(2))
    assert pair.g1.has_edge(v(3), v(5))
    assert pair.g1.has_edge(v(4), v(6))
    assert pair.g1.edge_count == 5
    assert pair.g2.has_edge(u(1), u(2))
    assert pair.theta["relabel"][v(4)] == v(4)


def test_one_graph_encoding_checks_partition():
    g = make_graph(3, [(1, 2)])
    with pytest.raises(GraphInputError):
        encode_one_graph_instance(g, [[v(1)], [v(2)]], [[v(1)]])
    with pytest.raises(GraphInputError):
        encode_one_graph_instance(g, [[v(1), v(2)], [v(3)]], [[v(3)]])
