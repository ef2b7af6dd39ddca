"""Figures for verification reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence


def plot_replay_trace(lengths: Sequence[int], path: str | Path, title: str = "") -> Path:
    """Word length after each replay move, written as an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 3.2), dpi=120)
    ax.plot(range(len(lengths)), lengths, marker="o", markersize=3, linewidth=1.2)
    ax.set_xlabel("move")
    ax.set_ylabel("word length (letters)")
    ax.set_ylim(bottom=0)
    if title:
        ax.set_title(title, fontsize=10)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path
