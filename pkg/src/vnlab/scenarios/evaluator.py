from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from vnlab.eval.montecarlo import wilson_interval
from vnlab.scenarios.config import JointLossCheck, LossCheck


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


def _matches(row: Mapping, check: LossCheck) -> bool:
    return (
        (check.model is None or row["model"] == check.model)
        and (check.scheme is None or row["scheme"] == check.scheme)
        and (check.n is None or row["n"] == check.n)
    )


def loss_bounds(rows: Sequence[Mapping], checks: Iterable[LossCheck]) -> list[CheckOutcome]:
    """Every row selected by a check must respect its bounds; a check selecting nothing fails."""
    out = []
    for check in checks:
        selected = [r for r in rows if _matches(r, check)]
        label = f"loss[{check.model or '*'}/{check.scheme or '*'}/n={check.n or '*'}]"
        if not selected:
            out.append(CheckOutcome(label, False, "no rows matched"))
            continue
        bad = [
            r
            for r in selected
            if (check.at_most is not None and r["loss"] > check.at_most)
            or (check.at_least is not None and r["loss"] < check.at_least)
        ]
        bounds = f">= {check.at_least}" if check.at_least is not None else f"<= {check.at_most}"
        detail = ", ".join(f"{r['loss']:.4f}" for r in selected)
        out.append(CheckOutcome(f"{label} {bounds}", not bad, detail))
    return out


def joint_losses(rows: Sequence[Mapping], checks: Iterable[JointLossCheck]) -> list[CheckOutcome]:
    """Per ``(scheme, n)``, the listed models' losses sum to at least ``sum_at_least``."""
    out = []
    for check in checks:
        cells: dict[tuple, dict[str, float]] = {}
        for r in rows:
            if r["model"] not in check.models:
                continue
            if (check.scheme is not None and r["scheme"] != check.scheme) or (
                check.n is not None and r["n"] != check.n
            ):
                continue
            cells.setdefault((r["scheme"], r["n"]), {})[r["model"]] = r["loss"]
        label = f"joint[{'+'.join(check.models)}/{check.scheme or '*'}/n={check.n or '*'}]"
        if not cells:
            out.append(CheckOutcome(label, False, "no rows matched"))
            continue
        for (scheme, n), losses in cells.items():
            name = f"{label} {scheme} n={n} sum >= {check.sum_at_least}"
            missing = [m for m in check.models if m not in losses]
            if missing:
                out.append(CheckOutcome(name, False, f"missing {', '.join(missing)}"))
                continue
            total = sum(losses[m] for m in check.models)
            detail = " + ".join(f"{losses[m]:.4f}" for m in check.models) + f" = {total:.4f}"
            out.append(CheckOutcome(name, total >= check.sum_at_least, detail))
    return out


def reference_covered(rows: Sequence[Mapping], level: float) -> list[CheckOutcome]:
    """The Wilson interval at ``level`` of each Monte Carlo row covers its Bayes reference."""
    out = []
    for r in rows:
        if r.get("bayes_ref") is None or not r["trials"]:
            continue
        losses = round(r["loss"] * r["trials"])
        lo, hi = wilson_interval(losses, r["trials"], level)
        ok = lo <= r["bayes_ref"] <= hi
        name = f"reference[{r['model']}/{r['scheme']}/n={r['n']}]"
        out.append(CheckOutcome(name, ok, f"{r['bayes_ref']:.4f} in [{lo:.4f}, {hi:.4f}]"))
    return out


def nonincreasing(name: str, values: Sequence) -> CheckOutcome:
    ok = all(b <= a for a, b in zip(values, values[1:]))
    return CheckOutcome(name, ok, " >= ".join(str(v) for v in values))


def strictly_increasing(name: str, values: Sequence) -> CheckOutcome:
    ok = all(b > a for a, b in zip(values, values[1:]))
    return CheckOutcome(name, ok, " < ".join(f"{v:.4f}" for v in values))


def equal(name: str, got, want) -> CheckOutcome:
    return CheckOutcome(name, got == want, f"{got} vs {want}")


def at_most(name: str, got, bound) -> CheckOutcome:
    return CheckOutcome(name, got <= bound, f"{got} <= {bound}")
