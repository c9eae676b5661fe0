from fractions import Fraction

import pytest
from conftest import v2_copy

from vnlab.adversarial import (
    EpsilonSequence,
    adversarial_report,
    as_fraction,
    build_adversarial,
    chance_line,
    fiber_sizes,
    rank_fibers,
    sample_fiber,
    universal_inconsistency_sequence,
)
from vnlab.errors import DistributionError, EnumerationCapError
from vnlab.eval import KRule, target_rank
from vnlab.graph import Obfuscation, VertexLabel, make_graph
from vnlab.models import RngState
from vnlab.schemes import RandomBaselineScheme, gm_scheme

v = VertexLabel.v


@pytest.fixture
def setup(asym6):
    g2 = v2_copy(asym6)
    return asym6, g2, Obfuscation.standard(g2.labels)


def test_epsilon_validation():
    with pytest.raises(DistributionError):
        EpsilonSequence.of([Fraction(1, 2)])
    with pytest.raises(DistributionError):
        EpsilonSequence.of([Fraction(1, 4), Fraction(1, 8), Fraction(1, 3)])
    with pytest.raises(DistributionError):
        EpsilonSequence.of([Fraction(1, 2), Fraction(2, 3)])  # eps_1 must stay under 1/2
    with pytest.raises(DistributionError):
        EpsilonSequence.linear(4, 4)


def test_linear_sequence_and_fiber_masses():
    eps = EpsilonSequence.linear(6, 12)
    assert eps[0] == 0
    assert eps[3] == Fraction(1, 4)
    assert eps.xi == (Fraction(1, 12),) * 5 + (Fraction(7, 12),)
    assert sum(eps.xi) == 1


def test_as_fraction_uses_the_decimal():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("3/7") == Fraction(3, 7)


def test_targeted_sequence_hits_the_target():
    eps = EpsilonSequence.targeted(8, 3, Fraction(1, 10))
    assert eps[5] == Fraction(1, 10)
    assert eps.m == 8
    with pytest.raises(DistributionError):
        EpsilonSequence.targeted(8, 3, Fraction(5, 8))


def test_chance_line():
    assert chance_line(6, 2) == Fraction(2, 3)


def test_fibers_split_the_class_evenly(setup):
    g1, g2, o = setup
    sizes = fiber_sizes(RandomBaselineScheme(), g1, g2, o, v(1))
    assert sizes == {k: 120 for k in range(1, 7)}


def test_adversarial_atom_masses(setup):
    g1, g2, o = setup
    F = build_adversarial(RandomBaselineScheme(), g1, g2, o, v(1), EpsilonSequence.linear(6, 12))
    assert len(F) == 720
    masses = sorted({m for _, m in F.atoms})
    assert masses == [Fraction(1, 1440), Fraction(7, 1440)]


@pytest.mark.parametrize(
    "scheme", [RandomBaselineScheme(seed=5), gm_scheme("exact")], ids=lambda s: s.name
)
def test_sandwich_holds(setup, scheme):
    g1, g2, o = setup
    eps = EpsilonSequence.linear(6, 12)
    report = adversarial_report(scheme, g1, g2, o, v(1), eps)
    assert report.holds
    for row in report.rows:
        assert row.scheme_error == 1 - eps[row.k]
        assert row.reversal_error == eps[6 - row.k]
        assert row.bayes_error <= row.reversal_error


def test_construction_needs_asymmetric_graphs():
    g1 = make_graph(4, [(1, 2), (2, 3), (3, 4)])
    g2 = v2_copy(g1)
    with pytest.raises(DistributionError):
        build_adversarial(
            RandomBaselineScheme(), g1, g2, Obfuscation.standard(g2.labels), v(1),
            EpsilonSequence.linear(4, 8),
        )


def test_construction_checks_sequence_length(setup):
    g1, g2, o = setup
    with pytest.raises(DistributionError):
        build_adversarial(RandomBaselineScheme(), g1, g2, o, v(1), EpsilonSequence.linear(5, 10))


def test_sample_fiber_lands_on_the_requested_rank(setup):
    g1, g2, o = setup
    scheme = RandomBaselineScheme(seed=2)
    draw = sample_fiber(scheme, g1, g2, o, v(1), 4, RngState(8))
    assert target_rank(scheme, g1, draw.graph, o, v(1)) == 4
    assert draw.attempts >= 1


def test_fiber_enumeration_cap(setup):
    g1, g2, o = setup
    with pytest.raises(EnumerationCapError):
        rank_fibers(RandomBaselineScheme(), g1, g2, o, v(1), cap=5)


def test_inconsistency_sequence_keeps_the_gap():
    report = universal_inconsistency_sequence(
        RandomBaselineScheme(),
        [6, 7],
        Fraction(1, 10),
        KRule.constant(1),
        RngState(20190101),
        with_oracle=False,
    )
    assert [r.n for r in report.rows] == [6, 7]
    for r in report.rows:
        assert r.reversal_error == Fraction(1, 10)
        assert r.bayes_bound == Fraction(1, 10)
        assert r.scheme_error > Fraction(9, 10)
    assert report.gap_holds(Fraction(9, 10))
