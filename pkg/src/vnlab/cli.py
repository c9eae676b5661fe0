"""``vnlab`` command line: run, list, plot and verify scenarios."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from loguru import logger
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from vnlab.config import settings
from vnlab.scenarios import (
    ScenarioResult,
    assertion_scenarios,
    default_output,
    get_builtin,
    list_scenarios,
    load_scenario,
    run_scenario,
    write_result,
)
from vnlab.scenarios.catalog import BUILTIN_SCENARIOS
from vnlab.scenarios.config import Scenario

console = Console()


def _resolve(target: str) -> Scenario:
    if target in BUILTIN_SCENARIOS:
        return get_builtin(target)
    path = Path(target)
    if path.suffix == ".toml" or path.exists():
        return load_scenario(path)
    return get_builtin(target)


def _print_checks(result: ScenarioResult) -> None:
    if not result.checks:
        return
    table = Table(title=f"{result.name}: checks")
    table.add_column("check")
    table.add_column("result")
    table.add_column("detail", overflow="fold")
    for c in result.checks:
        mark = "[green]pass[/]" if c.passed else "[red]FAIL[/]"
        table.add_row(escape(c.name), mark, escape(c.detail))
    console.print(table)


def _cell(v) -> str:
    if v is None or (isinstance(v, float) and v != v):
        return ""
    return f"{v:.4f}" if isinstance(v, float) else escape(str(v))


def _print_rows(result: ScenarioResult, limit: int = 30) -> None:
    df = result.frame()
    table = Table(title=f"{result.name}: {len(df)} rows")
    cols = ["model", "scheme", "n", "k", "trials", "loss", "ci_low", "ci_high", "bayes_ref"]
    for col in cols:
        table.add_column(col)
    for rec in df.head(limit).to_dict("records"):
        table.add_row(*(_cell(rec[c]) for c in cols))
    console.print(table)
    if len(df) > limit:
        console.print(f"... {len(df) - limit} more rows in the CSV")


def _execute(scenario: Scenario, args: argparse.Namespace, output: Path | None) -> ScenarioResult:
    result = run_scenario(
        scenario, seed=args.seed, jobs=args.jobs, trials_override=args.trials_override
    )
    path = output or default_output(scenario)
    write_result(result, path, deterministic=args.deterministic)
    _print_rows(result)
    _print_checks(result)
    console.print(f"Wrote {path}")
    return result


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _resolve(args.scenario)
    seed = scenario.seed if args.seed is None else args.seed
    console.print_json(json.dumps({**scenario.model_dump(mode="json"), "seed": seed}))
    result = _execute(scenario, args, Path(args.output) if args.output else None)
    return 0 if result.passed else 1


def cmd_list(args: argparse.Namespace) -> int:
    table = Table(title="Builtin scenarios")
    table.add_column("name")
    table.add_column("kind")
    table.add_column("description")
    for name, description in list_scenarios():
        table.add_row(name, BUILTIN_SCENARIOS[name].kind, description)
    console.print(table)
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    from vnlab.viz.plots import emit_plot

    path = emit_plot(args.csv, args.svg)
    console.print(f"Wrote {path}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    out_dir = Path(args.output) if args.output else Path(settings.data_dir) / "processed"
    summary = Table(title="Verification")
    summary.add_column("scenario")
    summary.add_column("checks")
    summary.add_column("result")
    failed = 0
    for scenario in assertion_scenarios():
        result = _execute(scenario, args, out_dir / f"{scenario.name}.csv")
        ok = result.passed
        failed += not ok
        mark = "[green]pass[/]" if ok else "[red]FAIL[/]"
        summary.add_row(scenario.name, str(len(result.checks)), mark)
    console.print(summary)
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for trials")
    common.add_argument(
        "--trials-override", type=int, default=None, help="replace every trial count"
    )
    common.add_argument("--deterministic", action="store_true", help="omit the timestamp line")
    common.add_argument(
        "--log-level", default=None, help=f"loguru level (default {settings.log_level})"
    )

    ap = argparse.ArgumentParser(prog="vnlab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="run a builtin scenario or a TOML config")
    run.add_argument("scenario", help="builtin name or path to a .toml file")
    run.add_argument("--output", default=None, help="CSV path (default data/processed/<name>.csv)")
    run.set_defaults(fn=cmd_run)

    ls = sub.add_parser("list", parents=[common], help="list builtin scenarios")
    ls.set_defaults(fn=cmd_list)

    plot = sub.add_parser("plot", parents=[common], help="plot a results CSV to SVG")
    plot.add_argument("csv")
    plot.add_argument("svg")
    plot.set_defaults(fn=cmd_plot)

    verify = sub.add_parser("verify", parents=[common], help="run every builtin with checks")
    verify.add_argument("--output", default=None, help="output directory for the CSVs")
    verify.set_defaults(fn=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logger.remove()
    logger.add(sys.stderr, level=(args.log_level or settings.log_level).upper())
    try:
        return args.fn(args)
    except FileNotFoundError as err:
        console.print(f"[red]error:[/] {escape(str(err))}")
        return 2
    except ValueError as err:
        console.print(f"[red]error:[/] {escape(str(err))}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
