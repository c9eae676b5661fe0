import json

import pandas as pd
import pytest

from vnlab.errors import ScenarioConfigError
from vnlab.scenarios import (
    BUILTIN_SCENARIOS,
    COLUMNS,
    assertion_scenarios,
    get_builtin,
    list_scenarios,
    load_scenario,
    parse_scenario,
    run_scenario,
    write_result,
)
from vnlab.scenarios.catalog import ASYMMETRIC_6
from vnlab.scenarios.evaluator import (
    joint_losses,
    loss_bounds,
    nonincreasing,
    reference_covered,
    strictly_increasing,
)
from vnlab.viz import load_results

SMALL_CURVE = {
    "kind": "curve",
    "name": "small-curve",
    "models": [{"kind": "indep-er", "p": 0.5, "label": "er"}],
    "schemes": [
        {"kind": "random-baseline", "label": "random"},
        {"kind": "spectral", "d": 2, "alignment": "identity", "label": "ase"},
    ],
    "n_values": [6, 8],
    "k": {"kind": "fraction", "value": 0.5},
    "trials": 40,
    "seed": 7,
    "checks": [{"scheme": "random", "at_most": 1.0}],
}


def test_builtin_catalog():
    assert set(BUILTIN_SCENARIOS) == {
        "indep-er-chance",
        "correlated-er-curve",
        "sbm-iid-curve",
        "behavior-flip",
        "features-flip",
        "bayes-oracle-check",
        "adversarial-demo",
        "corollary-sequence",
        "gm-recovery",
        "sampler-calibration",
    }
    names = {s.name for s in assertion_scenarios()}
    assert "correlated-er-curve" not in names
    assert {"indep-er-chance", "bayes-oracle-check", "gm-recovery"} <= names
    assert all(description for _, description in list_scenarios())


def test_unknown_builtin():
    with pytest.raises(ScenarioConfigError, match="unknown builtin"):
        get_builtin("nope")


@pytest.mark.parametrize(
    "patch, field",
    [
        ({"colour": "blue"}, "colour"),
        ({"n_values": [8, 6]}, "n_values"),
        ({"n_values": [1]}, "n_values"),
        ({"trials": 0}, "trials"),
        ({"models": [{"kind": "lattice"}]}, "models"),
    ],
)
def test_invalid_configs_name_the_field(patch, field):
    with pytest.raises(ScenarioConfigError, match=field):
        parse_scenario({**SMALL_CURVE, **patch})


def test_unknown_scenario_kind():
    with pytest.raises(ScenarioConfigError):
        parse_scenario({"kind": "dance", "name": "x"})


def test_nested_scheme_specs():
    s = parse_scenario(
        {
            **SMALL_CURVE,
            "schemes": [{"kind": "reversal", "base": {"kind": "gm", "matcher": "exact"}}],
        }
    )
    assert s.schemes[0].build().name == "reversed-gm-exact"


def test_load_scenario_from_toml(tmp_path):
    path = tmp_path / "s.toml"
    path.write_text(
        """
kind = "curve"
name = "from-toml"
n_values = [6]
trials = 5

[[models]]
kind = "indep-er"
p = 0.3

[[schemes]]
kind = "random-baseline"
"""
    )
    s = load_scenario(path)
    assert s.name == "from-toml"
    assert s.models[0].p == 0.3
    assert s.k.kind == "constant"


def test_load_scenario_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_scenario(tmp_path / "missing.toml")
    bad = tmp_path / "bad.toml"
    bad.write_text("kind = \n")
    with pytest.raises(ScenarioConfigError, match="bad.toml"):
        load_scenario(bad)


def test_small_curve_rows_and_checks():
    result = run_scenario(parse_scenario(SMALL_CURVE))
    df = result.frame()
    assert list(df.columns) == COLUMNS
    assert len(df) == 4
    assert set(df["k"]) == {3, 4}
    assert (df["ci_low"] <= df["loss"]).all() and (df["loss"] <= df["ci_high"]).all()
    assert df["bayes_ref"].tolist() == pytest.approx([0.5, 0.5, 0.5, 0.5])
    assert result.passed
    assert result.resolved["seed"] == 7


def test_seed_precedence():
    s = parse_scenario(SMALL_CURVE)
    a = run_scenario(s, trials_override=5)
    b = run_scenario(s, seed=7, trials_override=5)
    c = run_scenario(s, seed=8, trials_override=5)
    assert a.rows == b.rows
    assert a.resolved["trials_override"] == 5
    assert a.rows[0]["seed"] != c.rows[0]["seed"]


def test_trials_override_must_be_positive():
    with pytest.raises(ScenarioConfigError):
        run_scenario(parse_scenario(SMALL_CURVE), trials_override=0)


def test_output_is_byte_identical_across_jobs(tmp_path):
    s = parse_scenario(SMALL_CURVE)
    one = write_result(run_scenario(s, jobs=1), tmp_path / "one.csv", deterministic=True)
    two = write_result(run_scenario(s, jobs=2), tmp_path / "two.csv", deterministic=True)
    assert one.read_bytes() == two.read_bytes()


def test_write_result_files(tmp_path):
    result = run_scenario(parse_scenario(SMALL_CURVE), trials_override=5)
    path = write_result(result, tmp_path / "out" / "r.csv")
    first = path.read_text().splitlines()[0]
    assert first.startswith("# small-curve")
    df = load_results(path)
    assert len(df) == 4
    sidecar = json.loads((tmp_path / "out" / "r.csv.resolved.json").read_text())
    assert sidecar["name"] == "small-curve"
    assert sidecar["trials_override"] == 5

    write_result(result, tmp_path / "d.csv", deterministic=True)
    assert not (tmp_path / "d.csv").read_text().startswith("#")


def test_loss_checks():
    rows = [
        {"model": "a", "scheme": "x", "n": 6, "loss": 0.2},
        {"model": "a", "scheme": "y", "n": 6, "loss": 0.9},
    ]
    checks = parse_scenario({**SMALL_CURVE, "checks": [
        {"scheme": "x", "at_most": 0.25},
        {"scheme": "y", "at_least": 0.95},
        {"scheme": "z", "at_most": 1.0},
    ]}).checks
    outcomes = loss_bounds(rows, checks)
    assert [o.passed for o in outcomes] == [True, False, False]


def test_joint_losses():
    rows = [
        {"model": "c1", "scheme": "x", "n": 150, "loss": 0.0},
        {"model": "c2", "scheme": "x", "n": 150, "loss": 0.9},
        {"model": "c1", "scheme": "y", "n": 150, "loss": 0.1},
        {"model": "c2", "scheme": "y", "n": 150, "loss": 0.2},
        {"model": "c1", "scheme": "z", "n": 150, "loss": 1.0},
    ]
    checks = parse_scenario({**SMALL_CURVE, "joint_checks": [
        {"models": ["c1", "c2"], "sum_at_least": 0.75},
        {"models": ["c1", "c3"], "scheme": "q", "sum_at_least": 0.5},
    ]}).joint_checks
    outcomes = joint_losses(rows, checks)
    assert [o.passed for o in outcomes] == [True, False, False, False]
    assert outcomes[3].detail == "no rows matched"
    assert "missing c2" in outcomes[2].detail


def test_joint_checks_need_two_models():
    with pytest.raises(ScenarioConfigError, match="joint_checks"):
        parse_scenario({**SMALL_CURVE, "joint_checks": [{"models": ["a"], "sum_at_least": 1}]})


def test_features_flip_checks_both_codings():
    s = get_builtin("features-flip")
    bounded = {c.model for c in s.checks}
    assert bounded == {"case1-first-block", "case2-first-block"}
    [joint] = s.joint_checks
    assert joint.models == ["case1-first-two", "case2-first-two"]
    assert joint.sum_at_least == 0.75
    assert {m.label for m in s.models} >= set(joint.models)
    assert s in assertion_scenarios()


def test_reference_coverage():
    rows = [
        {
            "model": "a",
            "scheme": "x",
            "n": 20,
            "k": 5,
            "trials": 100,
            "loss": 0.74,
            "bayes_ref": 0.75,
        }
    ]
    assert all(o.passed for o in reference_covered(rows, 0.99))
    rows[0]["loss"] = 0.3
    assert not any(o.passed for o in reference_covered(rows, 0.99))


def test_nonincreasing():
    assert nonincreasing("x", [3, 2, 2, 1]).passed
    assert not nonincreasing("x", [1, 2]).passed


def test_strictly_increasing():
    assert strictly_increasing("x", [0.01, 0.2, 0.9]).passed
    assert not strictly_increasing("x", [0.02, 0.02, 0.5]).passed
    assert strictly_increasing("x", [0.3]).passed


def test_recovery_builtin_sweeps_correlation():
    s = get_builtin("gm-recovery")
    assert (s.n, s.p, s.trials) == (8, 0.5, 200)
    assert s.rhos == [0.0, 0.5, 0.9, 1.0]


@pytest.mark.parametrize("rhos", [[0.9, 0.5], [0.5, 0.5], [0.0, 1.5], []])
def test_recovery_correlations_validated(rhos):
    with pytest.raises(ScenarioConfigError, match="rhos"):
        parse_scenario({"kind": "gm-recovery", "name": "rec", "rhos": rhos})


def test_reduced_bayes_oracle_scenario():
    s = parse_scenario(
        {
            "kind": "bayes-oracle",
            "name": "oracle-small",
            "n": 6,
            "edges": ASYMMETRIC_6,
            "schemes": [
                {"kind": "random-baseline", "label": "random"},
                {"kind": "gm", "matcher": "exact", "label": "gm"},
            ],
            "random_schemes": 3,
        }
    )
    result = run_scenario(s)
    failed = [c.name for c in result.checks if not c.passed]
    assert failed == []
    laws = set(result.frame()["model"])
    assert laws == {"uniform", "three-atom", "random-weights", "position-tilted", "single-atom"}
    uniform = result.frame().query("model == 'uniform' and scheme == 'bayes-optimal'")
    assert uniform["loss"].tolist() == pytest.approx([5 / 6, 4 / 6, 3 / 6, 2 / 6, 1 / 6])
    assert (uniform["trials"] == 0).all()


def test_oracle_scenario_needs_an_asymmetric_graph():
    s = parse_scenario(
        {"kind": "bayes-oracle", "name": "sym", "n": 4, "edges": [(1, 2), (2, 3), (3, 4)]}
    )
    with pytest.raises(ScenarioConfigError):
        run_scenario(s)


def test_adversarial_scenario_rows():
    s = parse_scenario(
        {
            "kind": "adversarial",
            "name": "adv-small",
            "n": 6,
            "schemes": [{"kind": "random-baseline", "label": "random"}],
            "eps_denominator": 12,
        }
    )
    result = run_scenario(s)
    assert result.passed
    df = result.frame()
    assert set(df["scheme"]) == {"random", "reversed-random"}
    assert df.query("scheme == 'random' and k == 1")["loss"].item() == pytest.approx(11 / 12)
    reversed_k1 = df.query("scheme == 'reversed-random' and k == 1")["loss"].item()
    assert reversed_k1 == pytest.approx(5 / 12)


def test_small_recovery_and_calibration():
    rec = run_scenario(
        parse_scenario(
            {"kind": "gm-recovery", "name": "rec", "n": 6, "rhos": [0.0, 1.0], "trials": 10}
        )
    )
    assert rec.passed
    assert rec.frame()["loss"].tolist()[-1] == 0.0

    cal = run_scenario(
        parse_scenario({"kind": "sampler-calibration", "name": "cal", "n": 10, "pairs": 100})
    )
    assert cal.passed
    assert set(cal.frame()["scheme"]) == {"E[A]", "E[B]", "E[AB]"}


def test_corollary_scenario():
    s = parse_scenario(
        {
            "kind": "corollary",
            "name": "cor",
            "scheme": {"kind": "random-baseline"},
            "n_values": [6],
            "oracle": False,
        }
    )
    result = run_scenario(s)
    assert result.passed
    assert len(result.rows) == 2


@pytest.mark.slow
@pytest.mark.parametrize("name", [s.name for s in assertion_scenarios()])
def test_builtin_acceptance(name, tmp_path):
    result = run_scenario(get_builtin(name), jobs=2)
    write_result(result, tmp_path / f"{name}.csv", deterministic=True)
    failed = [(c.name, c.detail) for c in result.checks if not c.passed]
    assert failed == []
    assert not pd.read_csv(tmp_path / f"{name}.csv").empty
