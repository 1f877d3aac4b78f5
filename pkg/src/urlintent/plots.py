"""Figures written next to the delimited reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .annotations import Distribution  # noqa: E402
from .corpus import DistributionTable  # noqa: E402
from .evaluation import Comparison  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.fontsize": 8,
    "legend.frameon": False,
    "savefig.dpi": 150,
}
# no timestamps in the file so reruns are byte-stable
_PNG_META = {"Software": None}


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata=_PNG_META)
    plt.close(fig)
    return path


def plot_distribution_table(table: DistributionTable, path: str | Path) -> Path:
    """One panel per property; horizontal stacked bars per intent group."""
    with plt.rc_context(STYLE):
        sections = [s for s in table.sections if s.rows]
        fig, axes = plt.subplots(len(sections), 1, figsize=(6, 1.2 + 1.1 * len(sections) * 2), squeeze=False)
        for ax, sec in zip(axes[:, 0], sections):
            groups = [g for g, _, _ in sec.rows][::-1]
            data = np.array([p for _, _, p in sec.rows][::-1])
            left = np.zeros(len(groups))
            colors = plt.cm.viridis(np.linspace(0.15, 0.9, len(sec.columns)))
            for j, col in enumerate(sec.columns):
                ax.barh(groups, data[:, j], left=left, color=colors[j], label=col)
                left += data[:, j]
            ax.set_xlim(0, 100)
            ax.set_xlabel("% of tweets")
            ax.set_title(f"intentions vs. {sec.title}")
            ax.legend(ncol=len(sec.columns), loc="lower center", bbox_to_anchor=(0.5, 1.08))
        fig.tight_layout()
        return _save(fig, path)


def plot_intention_distribution(dist: Distribution, path: str | Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        labels = list(dist.shares)
        values = [dist.shares[k] for k in labels]
        if values:
            ax.pie(values, labels=[f"{k}\n{v:.1f}%" for k, v in zip(labels, values)], startangle=90, counterclock=False)
        ax.set_title(f"Intentions (n={dist.n_items}); NC-UN {dist.nc_un_percent:.1f}%")
        return _save(fig, path)


def plot_comparison(comparison: Comparison, path: str | Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5, 3))
        names = [r.name for r in comparison.rows]
        x = np.arange(2)
        width = 0.8 / max(len(names), 1)
        for i, r in enumerate(comparison.rows):
            bars = ax.bar(x + i * width, [r.ndcg, r.map], width, label=r.name)
            ax.bar_label(bars, fmt="%.4f", fontsize=7)
        ax.set_xticks(x + width * (len(names) - 1) / 2, [f"nDCG@{comparison.k}", "MAP"])
        ax.set_ylim(0, 1.08)
        ax.legend(ncol=min(len(names), 3), loc="upper center", bbox_to_anchor=(0.5, -0.12))
        return _save(fig, path)
