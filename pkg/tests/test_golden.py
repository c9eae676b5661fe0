"""Seed-fixed results compared exactly against ``tests/golden``.

Exact scenarios have hand-derived values. Monte Carlo values are written once with
``VNLAB_RECORD_GOLDEN=1 pytest tests/test_golden.py`` and committed; a missing file
is a failure, not a skip.
"""

import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

from vnlab.scenarios import get_builtin, parse_scenario, run_scenario

GOLDEN = Path(__file__).parent / "golden"
RECORD = os.environ.get("VNLAB_RECORD_GOLDEN") == "1"
SEED = 20190101

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
}


def _ratio(x: float) -> str:
    return str(Fraction(x).limit_denominator(10**6))


def _check_golden(name: str, got: dict[str, str]) -> None:
    path = GOLDEN / f"{name}.json"
    if RECORD:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(got, indent=2, sort_keys=True) + "\n")
        return
    if not path.exists():
        pytest.fail(
            f"golden file {path} is missing; record it with "
            f"VNLAB_RECORD_GOLDEN=1 pytest tests/test_golden.py and commit it"
        )
    assert got == json.loads(path.read_text())


def _losses(result, key: str, **where) -> dict[str, str]:
    rows = [r for r in result.rows if all(r[c] == v for c, v in where.items())]
    assert rows
    return {f"{r['scheme']}@{r[key]}": _ratio(r["loss"]) for r in rows}


def test_adversarial_demo_errors():
    result = run_scenario(get_builtin("adversarial-demo"), seed=SEED)
    assert result.passed
    _check_golden("adversarial_demo", _losses(result, "k"))


def test_corollary_sequence_errors():
    s = get_builtin("corollary-sequence").model_copy(
        update={"n_values": [6, 7], "oracle": False}
    )
    result = run_scenario(s, seed=SEED)
    assert result.passed
    _check_golden("corollary_sequence", _losses(result, "n"))


def test_uniform_law_errors_are_chance_for_every_scheme():
    s = get_builtin("bayes-oracle-check").model_copy(update={"random_schemes": 3})
    result = run_scenario(s, seed=SEED)
    assert result.passed
    _check_golden("bayes_oracle_uniform", _losses(result, "k", model="uniform"))


def test_small_curve():
    result = run_scenario(parse_scenario(SMALL_CURVE))
    _check_golden("small_curve", _losses(result, "n"))


@pytest.mark.slow
def test_recovery_rate_at_high_correlation():
    result = run_scenario(get_builtin("gm-recovery"), seed=SEED, jobs=2)
    assert result.passed
    [row] = [r for r in result.rows if r["model"] == "correlated-er(p=0.5,rho=0.9)"]
    assert row["trials"] == 200
    _check_golden("gm_recovery_rho_0_9", {"recovered": _ratio(1.0 - row["loss"])})


@pytest.mark.slow
def test_behavior_flip_losses():
    result = run_scenario(get_builtin("behavior-flip"), seed=SEED, jobs=2)
    assert result.passed
    got = {f"{r['model']}/{r['scheme']}": _ratio(r["loss"]) for r in result.rows}
    _check_golden("behavior_flip", got)
