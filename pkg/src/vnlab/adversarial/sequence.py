from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from vnlab.adversarial.construction import adversarial_report
from vnlab.adversarial.epsilon import EpsilonSequence, as_fraction
from vnlab.errors import DistributionError
from vnlab.eval.curves import KRule
from vnlab.graph.labels import Namespace, VertexLabel
from vnlab.graph.permutation import Obfuscation
from vnlab.models.rng import RngState
from vnlab.models.samplers import sample_asymmetric_er
from vnlab.schemes.base import Scheme


@dataclass(frozen=True)
class SequenceRow:
    n: int
    m: int
    k: int
    scheme_error: Fraction
    bayes_bound: Fraction
    reversal_error: Fraction
    bayes_error: Fraction | None


@dataclass(frozen=True)
class SequenceReport:
    scheme: str
    eps_target: Fraction
    rows: tuple[SequenceRow, ...]

    def gap_holds(self, floor: Fraction | float) -> bool:
        """Scheme error at least ``floor`` while the reversal stays within the target."""
        return all(
            r.scheme_error >= floor and r.reversal_error <= self.eps_target for r in self.rows
        )


def universal_inconsistency_sequence(
    scheme_rule: Scheme | Callable[[int], Scheme],
    n_values: Sequence[int],
    eps_target: Fraction | float,
    k_rule: KRule,
    rng: RngState,
    p: float = 0.5,
    with_oracle: bool = True,
    samples_per_fiber: int | None = None,
) -> SequenceReport:
    """Adversarial laws of growing size against one scheme rule.

    For each ``n = m`` an asymmetric pair is drawn from stream ``rng.child(n)``, ``eps`` is
    shaped so that ``eps_{m - k_n}`` equals ``eps_target``, and the scheme's exact
    ``L_{k_n}`` is reported next to that Bayes bound. Every law uses ``c = n`` and the
    labels ``v_1..v_n``, so the cores are nested.
    """
    target = as_fraction(eps_target)
    ns = list(n_values)
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DistributionError("n_values must be strictly increasing")
    rows = []
    name = ""
    for n in ns:
        scheme = scheme_rule if isinstance(scheme_rule, Scheme) else scheme_rule(n)
        name = scheme.name
        gen = rng.child(n).generator()
        g1 = sample_asymmetric_er(n, p, gen, namespace=Namespace.V1)
        g2 = sample_asymmetric_er(n, p, gen, namespace=Namespace.V2)
        k = k_rule(n, n)
        eps = EpsilonSequence.targeted(n, k, target)
        report = adversarial_report(
            scheme,
            g1,
            g2,
            Obfuscation.standard(g2.labels),
            VertexLabel.v(1),
            eps,
            with_oracle=with_oracle,
            samples_per_fiber=samples_per_fiber,
            rng=rng.child(n).child(1),
        )
        row = next(r for r in report.rows if r.k == k)
        rows.append(
            SequenceRow(
                n=n,
                m=n,
                k=k,
                scheme_error=row.scheme_error,
                bayes_bound=row.eps_m_minus_k,
                reversal_error=row.reversal_error,
                bayes_error=row.bayes_error,
            )
        )
        logger.info(
            "n={} k={}: L(scheme)={} bound={}",
            n,
            k,
            float(row.scheme_error),
            float(row.eps_m_minus_k),
        )
    return SequenceReport(name, target, tuple(rows))
