"""Arc-diagram SVG of a linear layout: vertices on a line, edges as arcs."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .layout import LinearLayout

# tab20-like palette; channels beyond it cycle
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
    "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
)


def render_svg(layout: LinearLayout, *, spacing: float = 40.0, margin: float = 30.0) -> str:
    order = layout.order
    pos = layout.position
    n = len(order)
    channels = sorted(set(layout.flat.values()))
    color = {ch: PALETTE[i % len(PALETTE)] for i, ch in enumerate(channels)}
    span = max((abs(pos[u] - pos[v]) for u, v in layout.flat), default=1)
    arc_height = span * spacing / 2
    width = 2 * margin + max(n - 1, 0) * spacing + 160
    axis_y = margin + arc_height
    legend_h = 18 * len(channels)
    height = axis_y + margin + 20 + max(legend_h - arc_height, 0)

    def x(v: int) -> float:
        return margin + pos[v] * spacing

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
        f'<title>{escape(str(layout.kind.value))} layout, {len(channels)} channels</title>',
        f'<line x1="{margin:.1f}" y1="{axis_y:.1f}" x2="{margin + max(n - 1, 0) * spacing:.1f}" '
        f'y2="{axis_y:.1f}" stroke="#999" stroke-width="1"/>',
        '<g fill="none" stroke-width="1.5">',
    ]
    for (u, v), ch in sorted(layout.flat.items(), key=lambda item: (item[1], item[0])):
        a, b = sorted((x(u), x(v)))
        r = (b - a) / 2
        out.append(
            f'<path d="M {a:.1f} {axis_y:.1f} A {r:.1f} {r:.1f} 0 0 1 {b:.1f} {axis_y:.1f}" '
            f'stroke="{color[ch]}" data-edge="{u}-{v}" data-channel="{ch}"/>'
        )
    out.append("</g>")
    out.append('<g fill="#222" font-family="sans-serif" font-size="10" text-anchor="middle">')
    for v in order:
        out.append(f'<circle cx="{x(v):.1f}" cy="{axis_y:.1f}" r="3.5"/>')
        out.append(f'<text x="{x(v):.1f}" y="{axis_y + 15:.1f}">{v}</text>')
    out.append("</g>")
    lx = margin + max(n - 1, 0) * spacing + 30
    out.append('<g font-family="sans-serif" font-size="11">')
    for i, ch in enumerate(channels):
        y = margin + 18 * i
        out.append(f'<rect x="{lx:.1f}" y="{y:.1f}" width="12" height="12" fill="{color[ch]}"/>')
        out.append(f'<text x="{lx + 18:.1f}" y="{y + 10:.1f}">channel {ch}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
