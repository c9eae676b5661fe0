from __future__ import annotations

from pathlib import Path

import pandas as pd
from loguru import logger

from vnlab.config import settings
from vnlab.scenarios import BUILTIN_SCENARIOS, run_scenario, write_result


def main() -> None:
    """Run every builtin scenario and collect a check summary.

    Each scenario writes ``{data_dir}/processed/<name>.csv`` plus its resolved config;
    the pass/fail table of all checks goes to ``scenario_checks.csv``.

    :raises ValueError: If a builtin scenario fails validation or its inputs are refused.
    """
    out_dir = Path(settings.data_dir) / "processed"
    out_dir.mkdir(parents=True, exist_ok=True)

    logger.info("Running {} scenarios (seed={})", len(BUILTIN_SCENARIOS), settings.default_seed)

    check_rows: list[dict] = []
    for name, scenario in BUILTIN_SCENARIOS.items():
        result = run_scenario(scenario)
        write_result(result, out_dir / f"{name}.csv", deterministic=True)
        for c in result.checks:
            check_rows.append(
                {"scenario": name, "check": c.name, "passed": c.passed, "detail": c.detail}
            )

    df_checks = pd.DataFrame(check_rows, columns=["scenario", "check", "passed", "detail"])
    out_checks = out_dir / "scenario_checks.csv"
    df_checks.to_csv(out_checks, index=False)

    failed = int((~df_checks["passed"]).sum()) if not df_checks.empty else 0
    logger.info("Saved {} checks to {} ({} failed)", len(df_checks), out_checks, failed)


if __name__ == "__main__":
    main()
