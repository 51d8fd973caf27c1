"""Matplotlib renderings of signature lattices and triangular graphs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .classify import LatticeReport, format_signature  # noqa: E402
from .graph import TriGraph  # noqa: E402
from .tableau import vertices  # noqa: E402


def _layers(report: LatticeReport) -> dict:
    """Place each signature on the level given by its size, spread horizontally."""
    by_size: dict = {}
    for s in report.signatures:
        by_size.setdefault(len(s), []).append(s)
    pos = {}
    for size, sigs in by_size.items():
        for k, s in enumerate(sigs):
            pos[s] = (k - (len(sigs) - 1) / 2, size)
    return pos


def plot_lattice(report: LatticeReport, path: Path, title: str | None = None) -> Path:
    pos = _layers(report)
    width = max([len([s for s in pos if len(s) == k]) for k in {len(s) for s in pos}] or [1])
    height = max([len(s) for s in pos] or [0]) + 1
    fig, ax = plt.subplots(figsize=(max(4.0, 2.6 * width), max(3.0, 1.6 * height)))
    for lo, hi in report.covers():
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=1, zorder=1)
    maxi = set(report.maximal())
    for s, (x, y) in pos.items():
        edges = format_signature(report.n, s).replace(", ", "\n") or "(empty)"
        face = "#f4d35e" if s in maxi else ("#9ad1d4" if not s else "white")
        ax.text(
            x, y, f"{report.label(s)}  [{report.counts[s]}]\n{edges}",
            ha="center", va="center", fontsize=7, zorder=2,
            bbox=dict(boxstyle="round", fc=face, ec="0.3"),
        )
    xs = [p[0] for p in pos.values()] or [0]
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(-0.7, height - 0.3)
    ax.set_ylabel("number of down edges")
    ax.set_xticks([])
    ax.set_yticks(range(height))
    for side in ("top", "right", "bottom"):
        ax.spines[side].set_visible(False)
    ax.set_title(title or f"signatures in the radius-{report.radius} window ({report.window_size} tableaux)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_graph(g: TriGraph, path: Path, highlight=(), title: str | None = None) -> Path:
    n = g.n
    xy = {(i, j): (2 * j - i, i) for i, j in vertices(n)}
    fig, ax = plt.subplots(figsize=(1.3 * n + 1, 1.0 * n + 0.5))
    marked = set(highlight)
    for a, b in g.sorted_arrows():
        (x0, y0), (x1, y1) = xy[a], xy[b]
        ax.annotate(
            "", xy=(x1, y1), xytext=(x0, y0),
            arrowprops=dict(arrowstyle="->", color="crimson" if (a, b) in marked else "0.2", shrinkA=12, shrinkB=12),
        )
    for v, (x, y) in xy.items():
        ax.text(x, y, f"({v[0]},{v[1]})", ha="center", va="center", fontsize=8)
    ax.set_xlim(-n, n + 1)
    ax.set_ylim(0.4, n + 0.6)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)
