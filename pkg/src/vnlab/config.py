from __future__ import annotations

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime configuration.

    Configure via environment variables (``VNLAB_*``) or a local .env (not committed).
    """

    model_config = SettingsConfigDict(env_prefix="VNLAB_", extra="ignore")

    project_root: Path = Field(default_factory=lambda: Path(__file__).resolve().parents[2])

    # Data paths
    data_dir: Path = Field(default_factory=lambda: Path("data"))

    # Exact computations
    enumeration_cap: int = 8  # vertices; 8! labelings
    exact_match_cap: int = 10
    fiber_enumeration_cap: int = 8

    # Frank-Wolfe relaxation
    fw_max_iter: int = 100
    fw_tol: float = 1e-6
    fw_init: str = "barycenter"  # barycenter, identity

    # Experiments
    default_seed: int = 20190101
    default_jobs: int = 1
    ci_level: float = 0.95

    log_level: str = "INFO"


settings = Settings()
