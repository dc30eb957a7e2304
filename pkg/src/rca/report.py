"""Delimited census output plus rendered summary figures."""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

CENSUS_FIELDS = ("rule", "neighborhood", "inverse_neighborhood", "bn", "bound", "slack")


def _fmt_offsets(offsets) -> str:
    return "{" + " ".join(str(o) for o in offsets) + "}"


def write_census_csv(rows: list[dict], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CENSUS_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(
                {
                    "rule": row["rule"],
                    "neighborhood": _fmt_offsets(row["neighborhood"]),
                    "inverse_neighborhood": _fmt_offsets(row["inverse_neighborhood"]),
                    "bn": _fmt_offsets(row["bn"]),
                    "bound": _fmt_offsets(row["bound"]),
                    "slack": _fmt_offsets(row["slack"]),
                }
            )


def render_census_figure(rows: list[dict], path: str) -> None:
    """Bar chart of |BN| against the upper-bound size per reversible rule."""
    labels = [str(row["rule"]) for row in rows]
    bn_sizes = [len(row["bn"]) for row in rows]
    bound_sizes = [len(row["bound"]) for row in rows]
    x = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(rows) + 2.0), 3.5))
    ax.bar([i - 0.2 for i in x], bound_sizes, width=0.4, label="bound size", color="#bbbbbb")
    ax.bar([i + 0.2 for i in x], bn_sizes, width=0.4, label="BN size", color="#336699")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_xlabel("rule number")
    ax.set_ylabel("offset count")
    ax.set_title("block neighborhood vs. upper bound")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_census_report(rows: list[dict], outdir: str) -> tuple[str, str]:
    """Write census.csv and census_bn.png into `outdir`; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, "census.csv")
    fig_path = os.path.join(outdir, "census_bn.png")
    write_census_csv(rows, csv_path)
    render_census_figure(rows, fig_path)
    return csv_path, fig_path
