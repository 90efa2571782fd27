"""Static SVG drawing of a planar transport plan: red sources, blue targets, one segment per entry."""
from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .measures import DiscreteMeasure
from .plan import TransportPlan

SVG_NS = "http://www.w3.org/2000/svg"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def plan_svg(
    plan: TransportPlan,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    width: int = 480,
    height: int = 480,
    margin: int = 20,
    max_stroke: float = 4.0,
) -> str:
    if mu.dim != 2 or nu.dim != 2:
        raise ValueError("figures need 2-dimensional points")
    x, y = mu.coords(), nu.coords()
    both = np.vstack([x, y])
    lo = both.min(axis=0)
    span = np.maximum(both.max(axis=0) - lo, 1e-12)
    scale = min((width - 2 * margin) / span[0], (height - 2 * margin) / span[1])

    def to_px(p):
        # flip y so that the picture matches the usual axis orientation
        return margin + (p[0] - lo[0]) * scale, height - margin - (p[1] - lo[1]) * scale

    root = ET.Element(
        "svg",
        {"xmlns": SVG_NS, "width": str(width), "height": str(height), "viewBox": f"0 0 {width} {height}"},
    )
    ET.SubElement(root, "rect", {"width": "100%", "height": "100%", "fill": "white"})
    lines = ET.SubElement(root, "g", {"id": "plan", "stroke": "#555555", "stroke-linecap": "round"})
    heaviest = max((float(q) for _, _, q in plan.entries), default=1.0)
    for i, j, q in plan.entries:
        (x1, y1), (x2, y2) = to_px(x[i]), to_px(y[j])
        ET.SubElement(
            lines,
            "line",
            {
                "class": "transport",
                "x1": _fmt(x1),
                "y1": _fmt(y1),
                "x2": _fmt(x2),
                "y2": _fmt(y2),
                "stroke-width": _fmt(max_stroke * float(q) / heaviest),
                "data-source": str(i),
                "data-target": str(j),
                "data-mass": f"{q.numerator}/{q.denominator}",
            },
        )
    for group, pts, color in (("sources", x, "#d62728"), ("targets", y, "#1f77b4")):
        g = ET.SubElement(root, "g", {"id": group, "fill": color})
        for p in pts:
            cx, cy = to_px(p)
            ET.SubElement(g, "circle", {"cx": _fmt(cx), "cy": _fmt(cy), "r": "4"})
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
