"""Figure rendering for report output.

Uses the Agg backend so rendering works headless; figures are written to
files, never shown interactively.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_rank_lines(
    lambdas,
    values_by_ticker: dict[str, list[float]],
    metric_label: str,
    path: str,
) -> None:
    """Plot each ticker's metric value across the preference grid.

    lambdas: increasing grid of preference weights.
    values_by_ticker: ticker -> one value per grid point.
    """
    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    for ticker in sorted(values_by_ticker):
        ax.plot(lambdas, values_by_ticker[ticker], marker="o",
                markersize=3, linewidth=1.2, label=ticker)
    ax.set_xlabel("preference weight $\\lambda$")
    ax.set_ylabel(metric_label)
    ax.set_title(f"{metric_label} across the ESG preference grid")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
