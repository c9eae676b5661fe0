from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger

from vnlab.adversarial import EpsilonSequence, adversarial_report, universal_inconsistency_sequence
from vnlab.config import settings
from vnlab.errors import ScenarioConfigError
from vnlab.eval.exact import exact_errors
from vnlab.eval.montecarlo import map_trials, mc_errors, wilson_interval
from vnlab.eval.oracle import bayes_error_oracle
from vnlab.graph.core import LabeledGraph, apply_obfuscation, make_graph
from vnlab.graph.labels import Namespace, VertexLabel, labels_in
from vnlab.graph.pair import NominatablePair
from vnlab.graph.permutation import Obfuscation
from vnlab.iso.canonical import canonical_form
from vnlab.iso.enumeration import enumerate_iso_class
from vnlab.iso.isomorphism import is_asymmetric
from vnlab.models.finite import (
    FiniteDistribution,
    make_finite_support,
    uniform_iso_class_distribution,
)
from vnlab.models.rng import RngState
from vnlab.models.samplers import CorrelatedErParams, sample_asymmetric_er, sample_correlated_er
from vnlab.scenarios import evaluator
from vnlab.scenarios.config import (
    AdversarialScenario,
    BayesOracleScenario,
    CalibrationScenario,
    CorollaryScenario,
    CurveScenario,
    RecoveryScenario,
    Scenario,
    model_label,
    resolved,
    scheme_label,
)
from vnlab.scenarios.evaluator import CheckOutcome
from vnlab.schemes import RandomBaselineScheme, bayes_optimal_scheme, exact_match

COLUMNS = [
    "scenario",
    "model",
    "scheme",
    "n",
    "m",
    "c",
    "k",
    "trials",
    "seed",
    "loss",
    "ci_low",
    "ci_high",
    "bayes_ref",
]


@dataclass
class ScenarioResult:
    name: str
    rows: list[dict] = field(default_factory=list)
    checks: list[CheckOutcome] = field(default_factory=list)
    resolved: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=COLUMNS)


def _row(name: str, **values) -> dict:
    row = {col: None for col in COLUMNS}
    row["scenario"] = name
    row.update(values)
    for col in ("loss", "ci_low", "ci_high", "bayes_ref"):
        if row[col] is not None:
            row[col] = float(row[col])
    return row


def _exact_row(name: str, model: str, scheme: str, n: int, m: int, c: int, k: int, seed, loss, ref):
    return _row(
        name, model=model, scheme=scheme, n=n, m=m, c=c, k=k, trials=0, seed=str(seed),
        loss=loss, ci_low=loss, ci_high=loss, bayes_ref=ref,
    )


# ---- curve


def _run_curve(s: CurveScenario, rng: RngState, jobs: int | None, trials: int) -> ScenarioResult:
    out = ScenarioResult(s.name)
    k_rule = s.k.build()
    for mi, mspec in enumerate(s.models):
        family = mspec.build()
        mlabel = model_label(mspec)
        for sspec in s.schemes:
            scheme = sspec.build()
            slabel = scheme_label(sspec)
            for n in s.n_values:
                m = family.m(n)
                k = k_rule(n, m)
                # schemes share the stream of a (model, n) cell, so they see the same draws
                stream = rng.child(mi).child(n)
                logger.info("{} / {} at n={} (k={}, {} trials)", mlabel, slabel, n, k, trials)
                sampler, v_star = family.sampler(n), family.v_star(n)
                est = mc_errors(scheme, sampler, v_star, [k], trials, stream, jobs, m)[k]
                out.rows.append(
                    _row(
                        s.name, model=mlabel, scheme=slabel, n=n, m=m, c=min(n, m), k=k,
                        trials=trials, seed=str(stream), loss=est.point, ci_low=est.ci_low,
                        ci_high=est.ci_high, bayes_ref=family.bayes_reference(n, k),
                    )
                )
    out.checks.extend(evaluator.loss_bounds(out.rows, s.checks))
    out.checks.extend(evaluator.joint_losses(out.rows, s.joint_checks))
    if s.reference_level is not None:
        out.checks.extend(evaluator.reference_covered(out.rows, s.reference_level))
    return out


# ---- bayes oracle


def _law(
    g1: LabeledGraph, weighted: list[tuple[LabeledGraph, int]], v_star: VertexLabel, name: str
):
    total = sum(w for _, w in weighted)
    c = min(g1.n, weighted[0][0].n)
    theta = {"model": name}
    return make_finite_support(
        ((NominatablePair(g1, h, c, theta), Fraction(w, total)) for h, w in weighted), v_star
    )


def oracle_laws(
    g1: LabeledGraph, g2: LabeledGraph, v_star: VertexLabel, gen: np.random.Generator
) -> dict[str, FiniteDistribution]:
    """Hand-built laws on ``{g1} x class(g2)`` with exact masses."""
    members = enumerate_iso_class(g2)
    u_star = VertexLabel.u(v_star.id)
    laws = {"uniform": uniform_iso_class_distribution(g1, g2, v_star)}
    picks = gen.choice(len(members), size=min(3, len(members)), replace=False)
    laws["three-atom"] = _law(
        g1, [(members[int(i)], w) for i, w in zip(picks, (3, 2, 1))], v_star, "three-atom"
    )
    weights = gen.integers(1, 11, size=len(members))
    laws["random-weights"] = _law(
        g1, [(h, int(w)) for h, w in zip(members, weights)], v_star, "random-weights"
    )
    laws["position-tilted"] = _law(
        g1,
        [(h, 1 + canonical_form(h).position(u_star)) for h in members],
        v_star,
        "position-tilted",
    )
    laws["single-atom"] = _law(
        g1, [(members[int(gen.integers(len(members)))], 1)], v_star, "single-atom"
    )
    return laws


def _run_oracle(s: BayesOracleScenario, rng: RngState) -> ScenarioResult:
    out = ScenarioResult(s.name)
    g1 = make_graph(s.n, s.edges, Namespace.V1)
    g2 = make_graph(s.n, s.edges, Namespace.V2)
    if not is_asymmetric(g1):
        raise ScenarioConfigError(f"{s.name}: the graph given by 'edges' must be asymmetric")
    v_star = VertexLabel.v(1)
    gen = rng.child(0).generator()
    named = [(scheme_label(sp), sp.build()) for sp in s.schemes]
    randoms = [RandomBaselineScheme(seed=i + 1) for i in range(s.random_schemes)]
    o = Obfuscation.standard(g2.labels)
    n, m = g1.n, g2.n
    members = enumerate_iso_class(g2)

    for law_name, F in oracle_laws(g1, g2, v_star, gen).items():
        logger.info("Law {}: {} atoms", law_name, len(F))
        bayes = exact_errors(bayes_optimal_scheme(F), F, o)
        rep = apply_obfuscation(
            members[int(gen.integers(len(members)))], Obfuscation.random(g2.labels, gen)
        )
        by_rep = exact_errors(
            bayes_optimal_scheme(F, representatives={canonical_form(g2).key: rep}), F, o
        )
        oracle = {k: bayes_error_oracle(F, k) for k in range(1, m)}
        seed = rng.child(0)
        for k in range(1, m):
            out.rows.append(
                _exact_row(
                    s.name, law_name, "bayes-optimal", n, m, F.core_size, k, seed,
                    bayes[k], oracle[k],
                )
            )
            out.checks.append(
                evaluator.equal(f"{law_name}: bayes == oracle at k={k}", bayes[k], oracle[k])
            )
        out.checks.append(
            evaluator.equal(
                f"{law_name}: bayes errors independent of representatives", by_rep, bayes
            )
        )
        out.checks.append(
            evaluator.nonincreasing(f"{law_name}: bayes error in k", list(bayes.values()))
        )

        for label, scheme in named:
            errs = exact_errors(scheme, F, o)
            for k in range(1, m):
                out.rows.append(
                    _exact_row(
                        s.name, law_name, label, n, m, F.core_size, k, seed, errs[k], oracle[k]
                    )
                )
            worst = min(errs[k] - bayes[k] for k in range(1, m))
            out.checks.append(evaluator.at_most(f"{law_name}: bayes <= {label}", 0, worst))
        if randoms:
            best = {k: min(exact_errors(r, F, o)[k] for r in randoms) for k in range(1, m)}
            label = f"random-consistent(best of {len(randoms)})"
            for k in range(1, m):
                out.rows.append(
                    _exact_row(
                        s.name, law_name, label, n, m, F.core_size, k, seed, best[k], oracle[k]
                    )
                )
            gap = min(best[k] - bayes[k] for k in range(1, m))
            out.checks.append(evaluator.at_most(f"{law_name}: bayes <= {label}", 0, gap))
    return out


# ---- adversarial constructions


def _run_adversarial(s: AdversarialScenario, rng: RngState) -> ScenarioResult:
    out = ScenarioResult(s.name)
    gen = rng.child(0).generator()
    g1 = sample_asymmetric_er(s.n, s.p, gen, Namespace.V1)
    g2 = sample_asymmetric_er(s.n, s.p, gen, Namespace.V2)
    eps = (
        EpsilonSequence.default(s.n)
        if s.eps_denominator is None
        else EpsilonSequence.linear(s.n, s.eps_denominator)
    )
    o = Obfuscation.standard(g2.labels)
    for sspec in s.schemes:
        label = scheme_label(sspec)
        report = adversarial_report(sspec.build(), g1, g2, o, VertexLabel.v(1), eps)
        c = report.distribution.core_size
        for r in report.rows:
            for scheme, loss in ((label, r.scheme_error), (f"reversed-{label}", r.reversal_error)):
                out.rows.append(
                    _exact_row(
                        s.name, "adversarial", scheme, s.n, s.n, c, r.k, rng, loss, r.bayes_error
                    )
                )
        failing = [r.k for r in report.rows if not r.holds]
        out.checks.append(
            CheckOutcome(
                f"sandwich holds for {label}",
                report.holds,
                f"failing k: {failing}" if failing else "",
            )
        )
    return out


def _run_corollary(s: CorollaryScenario, rng: RngState) -> ScenarioResult:
    out = ScenarioResult(s.name)
    label = scheme_label(s.scheme)
    report = universal_inconsistency_sequence(
        s.scheme.build(), s.n_values, s.eps_target, s.k.build(), rng, p=s.p, with_oracle=s.oracle
    )
    for r in report.rows:
        ref = r.bayes_error if r.bayes_error is not None else r.bayes_bound
        for scheme, loss in ((label, r.scheme_error), (f"reversed-{label}", r.reversal_error)):
            out.rows.append(
                _exact_row(
                    s.name, "adversarial-sequence", scheme, r.n, r.m, r.n, r.k,
                    rng.child(r.n), loss, ref,
                )
            )
    detail = ", ".join(f"n={r.n}: {float(r.scheme_error):.4f}" for r in report.rows)
    out.checks.append(
        CheckOutcome(
            f"error >= {s.floor} with Bayes bound {s.eps_target}", report.gap_holds(s.floor), detail
        )
    )
    return out


# ---- sampler diagnostics


def _recovery_hits(n: int, p: float, rho: float, rng: RngState, start: int, stop: int) -> list[int]:
    hits = []
    for t in range(start, stop):
        gen = rng.child(t).generator()
        if rho >= 1.0:
            # identical graphs: only an asymmetric draw has a unique best matching
            g1 = sample_asymmetric_er(n, p, gen, Namespace.V1)
            g2 = LabeledGraph.from_adjacency(labels_in(Namespace.V2, range(1, n + 1)), g1.adjacency)
        else:
            g1, g2 = sample_correlated_er(CorrelatedErParams.homogeneous(n, p, rho), gen)
        hits.append(int(exact_match(g1, g2).assignment == tuple(range(n))))
    return hits


def _run_recovery(
    s: RecoveryScenario, rng: RngState, jobs: int | None, trials: int
) -> ScenarioResult:
    out = ScenarioResult(s.name)
    rates = []
    for i, rho in enumerate(s.rhos):
        stream = rng.child(i)
        hits = sum(map_trials(_recovery_hits, trials, jobs, s.n, s.p, rho, stream))
        misses = trials - hits
        lo, hi = wilson_interval(misses, trials)
        rates.append(hits / trials)
        out.rows.append(
            _row(
                s.name, model=f"correlated-er(p={s.p},rho={rho})", scheme="exact-match", n=s.n,
                m=s.n, c=s.n, k=1, trials=trials, seed=str(stream), loss=misses / trials,
                ci_low=lo, ci_high=hi,
            )
        )
        logger.info("rho={}: identity recovered in {}/{} trials", rho, hits, trials)
    below_one = [r for rho, r in zip(s.rhos, rates) if rho < 1.0]
    out.checks.append(evaluator.strictly_increasing("recovery increases with rho", below_one))
    if s.rhos and s.rhos[-1] >= 1.0:
        out.checks.append(evaluator.equal("identity always recovered at rho=1", rates[-1], 1.0))
    return out


def _run_calibration(s: CalibrationScenario, rng: RngState) -> ScenarioResult:
    out = ScenarioResult(s.name)
    params = CorrelatedErParams.homogeneous(s.n, s.p, s.rho)
    iu = np.triu_indices(s.n, k=1)
    a, b = [], []
    for i in range(s.pairs):
        g1, g2 = sample_correlated_er(params, rng.child(i).generator())
        a.append(g1.adjacency[iu])
        b.append(g2.adjacency[iu])
    A = np.concatenate(a).astype(np.float64)
    B = np.concatenate(b).astype(np.float64)
    N = A.size
    targets = {
        "E[A]": (A, s.p),
        "E[B]": (B, s.p),
        "E[AB]": (A * B, s.p**2 + s.rho * s.p * (1.0 - s.p)),
    }
    for label, (x, target) in targets.items():
        mean = float(x.mean())
        se = float(np.sqrt(target * (1.0 - target) / N))
        out.rows.append(
            _row(
                s.name, model=f"correlated-er(p={s.p},rho={s.rho})", scheme=label, n=s.n, m=s.n,
                c=s.n, k=0, trials=s.pairs, seed=str(rng), loss=mean,
                ci_low=mean - s.sigmas * se, ci_high=mean + s.sigmas * se, bayes_ref=target,
            )
        )
        out.checks.append(
            CheckOutcome(
                f"{label} within {s.sigmas} sigma of {target:.4f}",
                abs(mean - target) <= s.sigmas * se,
                f"{mean:.4f} (se {se:.4f})",
            )
        )
    return out


# ---- entry points


def run_scenario(
    scenario: Scenario,
    seed: int | None = None,
    jobs: int | None = None,
    trials_override: int | None = None,
) -> ScenarioResult:
    """Run one scenario; the seed resolves as argument, then config, then settings."""
    seed = seed if seed is not None else scenario.seed
    seed = settings.default_seed if seed is None else seed
    if trials_override is not None and trials_override < 1:
        raise ScenarioConfigError("trials override must be >= 1")
    rng = RngState(seed)
    logger.info("Running scenario {} ({}) with seed {}", scenario.name, scenario.kind, seed)

    runners: dict[type, Callable[[], ScenarioResult]] = {
        CurveScenario: lambda: _run_curve(scenario, rng, jobs, trials_override or scenario.trials),
        BayesOracleScenario: lambda: _run_oracle(scenario, rng),
        AdversarialScenario: lambda: _run_adversarial(scenario, rng),
        CorollaryScenario: lambda: _run_corollary(scenario, rng),
        RecoveryScenario: lambda: _run_recovery(
            scenario, rng, jobs, trials_override or scenario.trials
        ),
        CalibrationScenario: lambda: _run_calibration(scenario, rng),
    }
    result = runners[type(scenario)]()
    result.resolved = {**resolved(scenario), "seed": seed, "trials_override": trials_override}
    failed = [c.name for c in result.checks if not c.passed]
    if failed:
        logger.warning(
            "Scenario {}: {} of {} checks failed", scenario.name, len(failed), len(result.checks)
        )
    else:
        logger.info("Scenario {}: all {} checks passed", scenario.name, len(result.checks))
    return result


def default_output(scenario: Scenario) -> Path:
    if scenario.output is not None:
        return Path(scenario.output)
    return Path(settings.data_dir) / "processed" / f"{scenario.name}.csv"


def write_result(result: ScenarioResult, path: Path | str, deterministic: bool = False) -> Path:
    """Write the rows as CSV and the resolved config next to it as ``<path>.resolved.json``.

    Unless ``deterministic``, the CSV starts with a ``#`` comment line holding the run time.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        if not deterministic:
            fh.write(f"# {result.name} generated {datetime.now(timezone.utc).isoformat()}\n")
        result.frame().to_csv(fh, index=False)
    sidecar = path.with_name(path.name + ".resolved.json")
    sidecar.write_text(json.dumps(result.resolved, indent=2, sort_keys=True) + "\n")
    logger.info("Saved {} rows to {}", len(result.rows), path)
    return path
