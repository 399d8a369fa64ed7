import functools
from collections.abc import Mapping
from pathlib import Path

import pandas as pd
import structlog
from pandas import DataFrame

from kerbil.metrics import FRAME, NRMSE

LOGGER = structlog.get_logger()


@functools.cache
def _figure():
    # Optional dependency, installed with the `plots` extra.
    # The non-interactive backend needs no display.
    import matplotlib

    matplotlib.use("Agg")

    from matplotlib.figure import Figure

    return Figure


def read_metrics(path: str | Path) -> DataFrame:
    "Read a frame-wise metrics CSV. The trailing aggregate line is skipped."

    return pd.read_csv(path, comment="#", na_values=["nan"])


def plot_nrmse(curves: Mapping[str, DataFrame], out: str | Path) -> Path:
    """
    Plot frame-wise NRMSE curves into one PNG.

    Parameters:
        curves: Label to metrics table, as read by `read_metrics`.
        out: The output file.

    Returns:
        The written path.
    """

    figure = _figure()(figsize=(6, 3.5), dpi=100)
    ax = figure.add_subplot()

    for label, frame in curves.items():
        ax.plot(frame[FRAME], frame[NRMSE], marker=".", label=label)

    ax.set_xlabel("Frame")
    ax.set_ylabel("NRMSE")
    ax.set_ylim(bottom=0)
    ax.grid(alpha=0.3)
    ax.legend(loc="upper right")
    figure.tight_layout()

    out = Path(out)
    figure.savefig(out, format="png")
    LOGGER.info("Plotted NRMSE", out=str(out), curves=list(curves))
    return out
