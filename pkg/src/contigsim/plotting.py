"""Per-strategy series files and figures for benchmark runs.

Each strategy gets ``<name>.dat`` with one row per run::

    # run makespan moves moved_mass
    1 3475 58938 898531

Columns are separated by single spaces so gnuplot, numpy.loadtxt and
similar tools read them directly. The figures plot each metric against
the run index, one line per strategy.
"""

from __future__ import annotations

import os
from typing import Mapping, Sequence

METRICS = ("makespan", "moves", "moved_mass")
DAT_HEADER = "# run " + " ".join(METRICS)


def safe_name(strategy: str) -> str:
    """File stem for a strategy name (``localshift:8`` -> ``localshift-8``)."""
    return strategy.replace(":", "-")


def write_series(out_dir: str, series: Mapping[str, Sequence[tuple[int, int, int]]]) -> list[str]:
    """Write one ``.dat`` file per strategy; rows are (makespan, moves, moved_mass)."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for strategy, rows in series.items():
        path = os.path.join(out_dir, safe_name(strategy) + ".dat")
        with open(path, "w", newline="\n", encoding="ascii") as fh:
            fh.write(DAT_HEADER + "\n")
            for run, row in enumerate(rows, start=1):
                fh.write(f"{run} " + " ".join(str(v) for v in row) + "\n")
        paths.append(path)
    return paths


def render_figures(out_dir: str, series: Mapping[str, Sequence[tuple[int, int, int]]]) -> list[str]:
    """Render makespan, moves and moved-mass figures as PNG files."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(out_dir, exist_ok=True)
    paths = []
    labels = {"makespan": "makespan", "moves": "moves", "moved_mass": "moved mass"}
    for col, metric in enumerate(METRICS):
        fig, ax = plt.subplots(figsize=(5, 3.5))
        for strategy, rows in series.items():
            xs = range(1, len(rows) + 1)
            ax.plot(xs, [r[col] for r in rows], marker="o", markersize=3, label=strategy)
        ax.set_xlabel("run")
        ax.set_ylabel(labels[metric])
        if metric != "makespan":
            ax.set_yscale("symlog")
        ax.legend(fontsize=7)
        fig.tight_layout()
        path = os.path.join(out_dir, metric + ".png")
        # fixed metadata keeps repeated renders byte-identical
        fig.savefig(path, dpi=100, metadata={"Software": None})
        plt.close(fig)
        paths.append(path)
    return paths
