"""Matplotlib figures for the verification reports.

Figures are written straight to files; nothing here opens a window.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .geometry import GeometricGraph  # noqa: E402
from .reduction import HardnessInstance, backbone_path  # noqa: E402


def _style_axes(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(labelsize=9)


def plot_instance(inst: HardnessInstance, path, graph: GeometricGraph | None = None, title: str | None = None):
    g = graph if graph is not None else backbone_path(inst)
    xy = [p.xy for p in inst.points]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for i, j in g.sorted_edges():
        ax.plot([xy[i][0], xy[j][0]], [xy[i][1], xy[j][1]], color="0.35", lw=1.0, zorder=1)
    for gm in inst.gadgets:
        (x0, y0), (x1, y1) = xy[gm.base_left], xy[gm.base_right]
        ax.plot([x0, x1], [y0, y1], color="tab:red", lw=2.5, ls="--", zorder=2)
    ax.scatter([p[0] for p in xy], [p[1] for p in xy], s=10, color="k", zorder=3)
    for key, label in (("p", "p"), ("q", "q"), ("p_prime", "p'"), ("q_prime", "q'")):
        if key in inst.endpoints:
            x, y = xy[inst.endpoints[key]]
            ax.annotate(label, (x, y), xytext=(4, 4), textcoords="offset points", color="tab:blue")
    ax.set_aspect("equal")
    ax.set_title(title or f"{inst.regime}, t = {inst.t}, n = {len(inst.gadgets)}", fontsize=11)
    _style_axes(ax)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)


def plot_margins(sweeps, path):
    """One histogram panel per lemma of log10 inequality margins, coloured by t."""
    lemmas = sorted({s.lemma for s in sweeps}, key=[s.lemma for s in sweeps].index)
    fig, axes = plt.subplots(1, len(lemmas), figsize=(3.2 * len(lemmas), 3.0), squeeze=False)
    for ax, lemma in zip(axes[0], lemmas):
        for s in (s for s in sweeps if s.lemma == lemma):
            margins = [r[-2] for r in s.rows]
            vals = [math.log10(m) for m in margins if m > 0]
            if vals:
                ax.hist(vals, bins=40, histtype="step", label=f"t={s.t:g}")
        ax.set_title(lemma, fontsize=10)
        ax.set_xlabel("log10 margin", fontsize=9)
        _style_axes(ax)
    axes[0][0].set_ylabel("samples", fontsize=9)
    axes[0][-1].legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)


def plot_pair_ratios(g: GeometricGraph, t: float, path):
    """Sorted pairwise stretch ratios of ``g`` against the bound t."""
    from .metrics import _dijkstra
    from .geometry import distance

    adj = g.adjacency()
    ratios = []
    for i in range(g.n - 1):
        d = _dijkstra(adj, i)
        ratios.extend(d[j] / distance(g.points[i], g.points[j]) for j in range(i + 1, g.n))
    ratios.sort()
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(range(len(ratios)), ratios, lw=1.2)
    ax.axhline(t, color="tab:red", ls="--", lw=1, label=f"t = {t:g}")
    ax.set_xlabel("pair rank", fontsize=9)
    ax.set_ylabel("graph / Euclidean distance", fontsize=9)
    ax.legend(fontsize=8, frameon=False)
    _style_axes(ax)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)
