from vnlab.scenarios.catalog import (
    BUILTIN_SCENARIOS,
    assertion_scenarios,
    get_builtin,
    list_scenarios,
)
from vnlab.scenarios.config import Scenario, load_scenario, parse_scenario, resolved
from vnlab.scenarios.evaluator import CheckOutcome
from vnlab.scenarios.runner import (
    COLUMNS,
    ScenarioResult,
    default_output,
    run_scenario,
    write_result,
)

__all__ = [
    "BUILTIN_SCENARIOS",
    "COLUMNS",
    "CheckOutcome",
    "Scenario",
    "ScenarioResult",
    "assertion_scenarios",
    "default_output",
    "get_builtin",
    "list_scenarios",
    "load_scenario",
    "parse_scenario",
    "resolved",
    "run_scenario",
    "write_result",
]
