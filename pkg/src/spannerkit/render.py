"""Deterministic SVG drawings of geometric graphs and reduction instances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import GeometricGraph, Point2
from .reduction import HardnessInstance


@dataclass(frozen=True)
class SvgStyle:
    width: int = 800
    margin: int = 30
    point_radius: float = 3.0
    edge_color: str = "#444444"
    point_color: str = "#000000"
    base_color: str = "#d62728"
    label_color: str = "#1f77b4"
    font_size: int = 12


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(
    points: Sequence[Point2],
    edges: Sequence[tuple[int, int]] = (),
    *,
    bases: Sequence[tuple[int, int]] = (),
    labels: dict[int, str] | None = None,
    style: SvgStyle | None = None,
) -> str:
    """SVG text for the drawing; identical inputs give identical bytes.

    The y-axis is flipped so larger y is drawn higher.  ``bases`` are drawn
    as highlighted segments under the edges whether or not they are edges.
    """
    style = style or SvgStyle()
    xy = [p.xy for p in points]
    if xy:
        xs, ys = [p[0] for p in xy], [p[1] for p in xy]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = x1 = y0 = y1 = 0.0
    span = max(x1 - x0, y1 - y0) or 1.0
    inner = style.width - 2 * style.margin
    scale = inner / span
    height = int(round((y1 - y0) * scale)) + 2 * style.margin

    def sx(x):
        return style.margin + (x - x0) * scale

    def sy(y):
        return style.margin + (y1 - y) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" height="{height}" '
        f'viewBox="0 0 {style.width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if bases:
        out.append(f'<g stroke="{style.base_color}" stroke-width="3" stroke-dasharray="4 3">')
        for i, j in sorted(bases):
            out.append(
                f'<line x1="{_fmt(sx(xy[i][0]))}" y1="{_fmt(sy(xy[i][1]))}" '
                f'x2="{_fmt(sx(xy[j][0]))}" y2="{_fmt(sy(xy[j][1]))}"/>'
            )
        out.append("</g>")
    if edges:
        out.append(f'<g stroke="{style.edge_color}" stroke-width="1.5">')
        for i, j in sorted((min(e), max(e)) for e in edges):
            out.append(
                f'<line x1="{_fmt(sx(xy[i][0]))}" y1="{_fmt(sy(xy[i][1]))}" '
                f'x2="{_fmt(sx(xy[j][0]))}" y2="{_fmt(sy(xy[j][1]))}"/>'
            )
        out.append("</g>")
    out.append(f'<g fill="{style.point_color}">')
    for x, y in xy:
        out.append(f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="{_fmt(style.point_radius)}"/>')
    out.append("</g>")
    if labels:
        out.append(f'<g fill="{style.label_color}" font-family="sans-serif" font-size="{style.font_size}">')
        for k in sorted(labels):
            x, y = xy[k]
            out.append(f'<text x="{_fmt(sx(x) + 6)}" y="{_fmt(sy(y) - 6)}">{labels[k]}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_graph_svg(g: GeometricGraph, style: SvgStyle | None = None) -> str:
    return render_svg(g.points, g.sorted_edges(), style=style)


def render_instance_svg(
    inst: HardnessInstance, graph: GeometricGraph | None = None, style: SvgStyle | None = None
) -> str:
    """Instance drawing with gadget bases highlighted and p, q, p', q' labelled.

    ``graph`` defaults to the backbone path.
    """
    from .reduction import backbone_path

    g = graph if graph is not None else backbone_path(inst)
    names = {"p": "p", "q": "q", "p_prime": "p'", "q_prime": "q'"}
    labels = {inst.endpoints[k]: v for k, v in names.items() if k in inst.endpoints}
    bases = [(gm.base_left, gm.base_right) for gm in inst.gadgets]
    return render_svg(inst.points, g.sorted_edges(), bases=bases, labels=labels, style=style)
