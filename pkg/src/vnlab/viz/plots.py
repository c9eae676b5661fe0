from __future__ import annotations

from pathlib import Path

import pandas as pd
from loguru import logger

from vnlab.errors import ScenarioConfigError

REQUIRED = ("model", "scheme", "n", "k", "loss", "ci_low", "ci_high")


def load_results(csv_path: Path | str) -> pd.DataFrame:
    """Read a scenario CSV, skipping ``#`` comment lines."""
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise FileNotFoundError(f"Results not found: {csv_path}. Run `vnlab run` first.")
    df = pd.read_csv(csv_path, comment="#")
    missing = [c for c in REQUIRED if c not in df.columns]
    if missing:
        raise ScenarioConfigError(f"{csv_path}: missing columns {missing}")
    return df


def emit_plot(csv_path: Path | str, svg_path: Path | str) -> Path:
    """Error curves with their confidence bands, one line per model and scheme.

    The x axis is ``n`` when the file holds several sizes and ``k`` otherwise. Rows with
    a Bayes reference get it as a dashed line in the same colour.
    """
    df = load_results(csv_path)
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as err:
        raise ImportError(
            "plotting needs matplotlib: pip install 'vertex-nomination-lab[viz]'"
        ) from err

    x = "n" if df["n"].nunique() > 1 else "k"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (model, scheme), grp in df.groupby(["model", "scheme"], sort=False):
        grp = grp.sort_values(x)
        (line,) = ax.plot(grp[x], grp["loss"], marker="o", label=f"{model} / {scheme}")
        ax.fill_between(grp[x], grp["ci_low"], grp["ci_high"], color=line.get_color(), alpha=0.2)
        if "bayes_ref" in grp and grp["bayes_ref"].notna().any():
            ax.plot(grp[x], grp["bayes_ref"], linestyle="--", color=line.get_color(), linewidth=1)
    ax.set_xlabel(x)
    ax.set_ylabel("level-k error")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(fontsize="small")
    title = df["scenario"].iloc[0] if "scenario" in df and len(df) else ""
    ax.set_title(str(title))

    svg_path = Path(svg_path)
    svg_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(svg_path, format="svg", bbox_inches="tight")
    plt.close(fig)
    logger.info("Saved plot to {}", svg_path)
    return svg_path
