"""Figure and CSV rendering for homotopy weight tracks.

Renders the (t, weight) series that the harness and the track command emit:
one line per atom, weight against homotopy time.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_weight_series(plot_data: dict, png_path) -> None:
    """plot_data: {"t":[...], "weights":{point:[w0,...]}}; BOTTOM plots as a gap."""
    t = plot_data["t"]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for point, series in sorted(plot_data["weights"].items()):
        ys = [w if w != float("-inf") else None for w in series]
        ax.plot(t, ys, marker=".", markersize=3, linewidth=1.2, label=point)
    ax.set_xlabel("t")
    ax.set_ylabel("atom weight")
    ax.set_title("atom weights along the homotopy")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def write_weight_csv(plot_data: dict, csv_path) -> None:
    """Delimited companion of the figure: t plus one weight column per atom."""
    points = sorted(plot_data["weights"])
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + points)
        for k, t in enumerate(plot_data["t"]):
            writer.writerow([t] + [plot_data["weights"][p][k] for p in points])


def render_report_plots(report: dict, plot_dir) -> list[str]:
    """Render every plot payload in a report; returns the written paths."""
    out = []
    plot_dir = Path(plot_dir)
    plot_dir.mkdir(parents=True, exist_ok=True)
    payload = report.get("plot")
    if payload:
        suite = report["scenario"]["suite"]
        png = plot_dir / f"{suite}_track.png"
        csv_path = plot_dir / f"{suite}_track.csv"
        plot_weight_series(payload, png)
        write_weight_csv(payload, csv_path)
        out += [str(png), str(csv_path)]
    return out
