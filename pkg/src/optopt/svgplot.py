"""Regret-curve SVG emission with no plotting dependency.

Draws one chart from a CurveSummary: per algorithm, the mean log10
regret as a polyline over evaluation index with a +-1 standard
deviation band behind it, plus axes, tick labels, a legend, and a
dashed floor line where the regret clamp (-16) falls inside the view.
The document is assembled with xml.etree.ElementTree, so the output is
well-formed XML by construction.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

WIDTH = 860
HEIGHT = 520
MARGIN_LEFT = 72
MARGIN_RIGHT = 168
MARGIN_TOP = 42
MARGIN_BOTTOM = 58
CLAMP_FLOOR = -16.0

ALGORITHM_COLORS = {
    "soo": "#d62728",
    "bamsoo": "#1f77b4",
    "gpucb": "#2ca02c",
}
FALLBACK_COLORS = ("#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi]."""
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * span:
        ticks.append(round(v, 12))
        v += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


class _Scale:
    def __init__(self, lo: float, hi: float, out_lo: float, out_hi: float):
        self.lo = lo
        self.hi = hi
        self.out_lo = out_lo
        self.out_hi = out_hi

    def __call__(self, v: float) -> float:
        frac = (v - self.lo) / (self.hi - self.lo) if self.hi > self.lo else 0.5
        return self.out_lo + frac * (self.out_hi - self.out_lo)


def _color_for(algorithm: str, index: int) -> str:
    return ALGORITHM_COLORS.get(algorithm, FALLBACK_COLORS[index % len(FALLBACK_COLORS)])


def write_regret_svg(summary, path, title: str = "") -> None:
    """Render a CurveSummary to an SVG file."""
    xs = list(summary.eval_index)
    algorithms = list(summary.curves)
    if not xs or not algorithms:
        raise ValueError("summary must hold at least one algorithm curve")

    y_lo = min(min(c.mean - c.std) for c in summary.curves.values())
    y_hi = max(max(c.mean + c.std) for c in summary.curves.values())
    pad = 0.05 * (y_hi - y_lo or 1.0)
    y_lo -= pad
    y_hi += pad
    sx = _Scale(xs[0], xs[-1] if xs[-1] > xs[0] else xs[0] + 1, MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    sy = _Scale(y_lo, y_hi, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(WIDTH),
            "height": str(HEIGHT),
            "viewBox": f"0 0 {WIDTH} {HEIGHT}",
        },
    )
    ET.SubElement(svg, "rect", {"x": "0", "y": "0", "width": str(WIDTH), "height": str(HEIGHT), "fill": "white"})

    axes = ET.SubElement(svg, "g", {"stroke": "#333333", "stroke-width": "1"})
    ET.SubElement(
        axes, "line",
        {"x1": _fmt(MARGIN_LEFT), "y1": _fmt(HEIGHT - MARGIN_BOTTOM), "x2": _fmt(WIDTH - MARGIN_RIGHT), "y2": _fmt(HEIGHT - MARGIN_BOTTOM)},
    )
    ET.SubElement(
        axes, "line",
        {"x1": _fmt(MARGIN_LEFT), "y1": _fmt(MARGIN_TOP), "x2": _fmt(MARGIN_LEFT), "y2": _fmt(HEIGHT - MARGIN_BOTTOM)},
    )

    labels = ET.SubElement(svg, "g", {"font-family": "sans-serif", "font-size": "12", "fill": "#222222"})
    for tx in _nice_ticks(xs[0], xs[-1]):
        px = sx(tx)
        ET.SubElement(axes, "line", {"x1": _fmt(px), "y1": _fmt(HEIGHT - MARGIN_BOTTOM), "x2": _fmt(px), "y2": _fmt(HEIGHT - MARGIN_BOTTOM + 5)})
        el = ET.SubElement(labels, "text", {"x": _fmt(px), "y": _fmt(HEIGHT - MARGIN_BOTTOM + 20), "text-anchor": "middle"})
        el.text = _fmt(tx)
    for ty in _nice_ticks(y_lo, y_hi):
        py = sy(ty)
        ET.SubElement(axes, "line", {"x1": _fmt(MARGIN_LEFT - 5), "y1": _fmt(py), "x2": _fmt(MARGIN_LEFT), "y2": _fmt(py)})
        el = ET.SubElement(labels, "text", {"x": _fmt(MARGIN_LEFT - 9), "y": _fmt(py + 4), "text-anchor": "end"})
        el.text = _fmt(ty)
    xlabel = ET.SubElement(labels, "text", {"x": _fmt((MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2), "y": _fmt(HEIGHT - 12), "text-anchor": "middle", "font-size": "14"})
    xlabel.text = "evaluations"
    ylabel = ET.SubElement(
        labels, "text",
        {"x": "18", "y": _fmt((MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2), "text-anchor": "middle", "font-size": "14",
         "transform": f"rotate(-90 18 {_fmt((MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2)})"},
    )
    ylabel.text = "log10 regret"
    if title:
        el = ET.SubElement(labels, "text", {"x": _fmt((MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2), "y": "24", "text-anchor": "middle", "font-size": "16"})
        el.text = title

    if y_lo <= CLAMP_FLOOR <= y_hi:
        py = sy(CLAMP_FLOOR)
        ET.SubElement(
            svg, "line",
            {"x1": _fmt(MARGIN_LEFT), "y1": _fmt(py), "x2": _fmt(WIDTH - MARGIN_RIGHT), "y2": _fmt(py),
             "stroke": "#888888", "stroke-width": "1", "stroke-dasharray": "6 4"},
        )
        el = ET.SubElement(labels, "text", {"x": _fmt(WIDTH - MARGIN_RIGHT - 4), "y": _fmt(py - 5), "text-anchor": "end", "fill": "#888888"})
        el.text = "clamp floor"

    for i, algorithm in enumerate(algorithms):
        curve = summary.curves[algorithm]
        color = _color_for(algorithm, i)
        upper = [(sx(x), sy(m + s)) for x, m, s in zip(xs, curve.mean, curve.std)]
        lower = [(sx(x), sy(m - s)) for x, m, s in zip(xs, curve.mean, curve.std)]
        band_pts = " ".join(f"{px:.2f},{py:.2f}" for px, py in upper + lower[::-1])
        ET.SubElement(svg, "polygon", {"points": band_pts, "fill": color, "fill-opacity": "0.15", "stroke": "none"})
        mean_pts = " ".join(f"{sx(x):.2f},{sy(m):.2f}" for x, m in zip(xs, curve.mean))
        ET.SubElement(svg, "polyline", {"points": mean_pts, "fill": "none", "stroke": color, "stroke-width": "2"})

    legend = ET.SubElement(svg, "g", {"font-family": "sans-serif", "font-size": "13"})
    lx = WIDTH - MARGIN_RIGHT + 18
    for i, algorithm in enumerate(algorithms):
        ly = MARGIN_TOP + 14 + 22 * i
        color = _color_for(algorithm, i)
        ET.SubElement(legend, "line", {"x1": _fmt(lx), "y1": _fmt(ly), "x2": _fmt(lx + 26), "y2": _fmt(ly), "stroke": color, "stroke-width": "3"})
        el = ET.SubElement(legend, "text", {"x": _fmt(lx + 32), "y": _fmt(ly + 4), "fill": "#222222"})
        el.text = algorithm

    tree = ET.ElementTree(svg)
    ET.indent(tree)
    tree.write(path, encoding="unicode", xml_declaration=True)
