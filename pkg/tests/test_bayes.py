from fractions import Fraction

import pytest
from conftest import v2_copy

from vnlab.errors import DistributionError, SchemeInputError, UndefinedConditionalError
from vnlab.eval import bayes_error_oracle, exact_errors, rank_distribution
from vnlab.graph import (
    Namespace,
    NominatablePair,
    Obfuscation,
    Permutation,
    VertexLabel,
    apply_obfuscation,
    make_graph,
    permute,
)
from vnlab.iso import canonical_form
from vnlab.models import make_finite_support, uniform_iso_class_distribution
from vnlab.schemes import (
    BayesOptimalScheme,
    CanonicalTieBreak,
    RandomBaselineScheme,
    bayes_optimal_orbit_scheme,
    bayes_optimal_scheme,
    gm_scheme,
)

v, u, w = VertexLabel.v, VertexLabel.u, VertexLabel.w


@pytest.fixture
def three_atoms(asym6):
    """u_1 placed in three different roles with masses 1/2, 1/3, 1/6."""
    g2 = v2_copy(asym6)
    members = [
        g2,
        permute(g2, Permutation.from_cycles(g2.labels, [u(1), u(2)])),
        permute(g2, Permutation.from_cycles(g2.labels, [u(1), u(3)])),
    ]
    masses = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]
    return make_finite_support(
        [(NominatablePair(asym6, h, 6), m) for h, m in zip(members, masses)], v(1)
    )


def test_uniform_class_error_is_one_minus_k_over_n(asym6):
    F = uniform_iso_class_distribution(asym6, v2_copy(asym6), v(1))
    errors = exact_errors(bayes_optimal_scheme(F), F)
    assert errors == {k: 1 - Fraction(k, 6) for k in range(1, 6)}
    assert all(bayes_error_oracle(F, k) == errors[k] for k in range(1, 6))


def test_any_scheme_is_blind_on_the_uniform_class(asym6):
    F = uniform_iso_class_distribution(asym6, v2_copy(asym6), v(1))
    law = rank_distribution(RandomBaselineScheme(seed=2), F)
    assert law == {r: Fraction(1, 6) for r in range(1, 7)}


def test_single_atom_has_zero_error(asym6):
    F = make_finite_support([(NominatablePair(asym6, v2_copy(asym6), 6), 1)], v(3))
    assert set(exact_errors(bayes_optimal_scheme(F), F).values()) == {Fraction(0)}
    assert bayes_error_oracle(F, 1) == 0


def test_three_atom_law(three_atoms):
    F = three_atoms
    errors = exact_errors(bayes_optimal_scheme(F), F)
    assert errors[1] == Fraction(1, 2)
    assert errors[2] == Fraction(1, 6)
    assert errors[3] == 0
    assert all(bayes_error_oracle(F, k) == errors[k] for k in range(1, 6))


def test_bayes_beats_other_schemes(three_atoms):
    F = three_atoms
    best = exact_errors(bayes_optimal_scheme(F), F)
    for scheme in (RandomBaselineScheme(seed=1), RandomBaselineScheme(seed=7), gm_scheme("exact")):
        other = exact_errors(scheme, F)
        assert all(best[k] <= other[k] for k in best)


def test_conditional_law(three_atoms, asym6):
    scheme = BayesOptimalScheme(three_atoms)
    g2 = v2_copy(asym6)
    og2 = apply_obfuscation(g2, Obfuscation.standard(g2.labels))
    cond = scheme.conditional(asym6, og2)
    assert sorted(cond.values(), reverse=True) == [
        Fraction(1, 2), Fraction(1, 3), Fraction(1, 6), 0, 0, 0
    ]
    assert cond[w(1)] == Fraction(1, 2)
    assert cond[w(2)] == Fraction(1, 3)
    assert cond[w(3)] == Fraction(1, 6)


def test_list_does_not_depend_on_the_obfuscation(three_atoms, asym6, gen):
    scheme = bayes_optimal_scheme(three_atoms)
    g2 = v2_copy(asym6)
    for _ in range(5):
        o = Obfuscation.random(g2.labels, gen)
        ranked = scheme(asym6, apply_obfuscation(g2, o), v(1))
        assert ranked.top(3) == (o(u(1)), o(u(2)), o(u(3)))


def test_conditional_outside_support(three_atoms):
    path = make_graph(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)], Namespace.V2)
    og2 = apply_obfuscation(path, Obfuscation.standard(path.labels))
    with pytest.raises(UndefinedConditionalError):
        BayesOptimalScheme(three_atoms).conditional(three_atoms.atoms[0][0].g1, og2)


def test_representatives_leave_errors_unchanged(three_atoms, asym6, gen):
    g2 = v2_copy(asym6)
    rep = apply_obfuscation(g2, Obfuscation.random(g2.labels, gen))
    reps = {canonical_form(rep).key: rep}
    plain = exact_errors(bayes_optimal_scheme(three_atoms), three_atoms)
    scheme = bayes_optimal_scheme(three_atoms, representatives=reps)
    assert exact_errors(scheme, three_atoms) == plain


def test_representatives_and_tie_break_are_exclusive(three_atoms):
    with pytest.raises(SchemeInputError):
        bayes_optimal_scheme(three_atoms, tie_break=CanonicalTieBreak(), representatives={})


def _p3_uniform():
    g1 = make_graph(3, [(1, 2), (2, 3)])
    g2 = make_graph(3, [(1, 2), (2, 3)], Namespace.V2)
    return g1, g2, uniform_iso_class_distribution(g1, g2, v(1))


def test_flat_scheme_refuses_symmetric_support():
    _, _, F = _p3_uniform()
    with pytest.raises(SchemeInputError):
        bayes_optimal_scheme(F)
    with pytest.raises(DistributionError):
        bayes_error_oracle(F, 1)


def test_orbit_scheme_on_a_path():
    g1, g2, F = _p3_uniform()
    assert len(F) == 3
    scheme = bayes_optimal_orbit_scheme(F)
    og2 = apply_obfuscation(g2, Obfuscation.standard(g2.labels))
    masses = scheme.orbit_masses(g1, og2)
    assert masses == {frozenset({w(1), w(3)}): Fraction(2, 3), frozenset({w(2)}): Fraction(1, 3)}
    ranked = scheme(g1, og2, v(1))
    assert ranked.at(2) == w(2)
    assert {ranked.at(1), ranked.at(3)} == {w(1), w(3)}


def test_complete_graph_is_a_single_atom():
    g1 = make_graph(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])
    g2 = make_graph(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)], Namespace.V2)
    F = uniform_iso_class_distribution(g1, g2, v(2))
    assert len(F) == 1
    scheme = bayes_optimal_orbit_scheme(F)
    og2 = apply_obfuscation(g2, Obfuscation.standard(g2.labels))
    assert list(scheme.orbit_masses(g1, og2).values()) == [1]
    assert len(rank_distribution(scheme, F)) == 1
