from __future__ import annotations

from pathlib import Path


class GraphInputError(ValueError):
    """Malformed graph input: self-loop, out-of-range endpoint, unknown label, domain mismatch."""


class EdgeListParseError(ValueError):
    def __init__(self, message: str, path: Path | str | None = None, line: int | None = None):
        self.path = None if path is None else Path(path)
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(f"{where}{message}")


class EnumerationCapError(ValueError):
    """A vertex count exceeds a configured enumeration cap."""

    def __init__(self, what: str, size: int, cap: int, hint: str = ""):
        self.size = size
        self.cap = cap
        msg = f"{what}: {size} vertices exceeds the configured cap of {cap}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)


class ModelParameterError(ValueError):
    """Invalid random graph model parameters."""


class DistributionError(ValueError):
    """Invalid finite-support distribution."""


class UndefinedConditionalError(ValueError):
    """The input pair lies outside the support, so the conditional is undefined."""


class SchemeInputError(ValueError):
    """Invalid input to a nomination scheme or loss."""


class ScenarioConfigError(ValueError):
    """Scenario configuration failed validation."""


class InvalidLevelError(SchemeInputError):
    """A level k outside ``[1, m - 1]``."""
