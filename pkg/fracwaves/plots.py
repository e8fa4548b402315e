import xml.etree.ElementTree as ET

import numpy as np
import polars as pl

from fracwaves.CONSTANTS import SVG_HEIGHT, SVG_SERIES, SVG_TICKS, SVG_WIDTH

SVG_NS = "http://www.w3.org/2000/svg"
MARGIN = {"left": 80, "right": 170, "top": 50, "bottom": 60}
FONT = {"font-size": "12", "font-family": "Helvetica, sans-serif"}
DASH = "8 5"


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _axis_range(values: np.ndarray) -> tuple[float, float]:
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi - lo <= 1e-12 * max(1.0, abs(lo), abs(hi)):
        pad = max(1.0, abs(lo)) * 0.5
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _line(parent: ET.Element, x1: float, y1: float, x2: float, y2: float, **style) -> ET.Element:
    attributes = {"x1": _fmt(x1), "y1": _fmt(y1), "x2": _fmt(x2), "y2": _fmt(y2)}
    attributes.update({key.replace("_", "-"): value for key, value in style.items()})
    return ET.SubElement(parent, "line", attributes)


def _text(parent: ET.Element, x: float, y: float, content: str, anchor: str = "start") -> None:
    label = ET.SubElement(parent, "text", {"x": _fmt(x), "y": _fmt(y), "text-anchor": anchor})
    label.text = content


def build_svg(frame: pl.DataFrame, title: str) -> ET.ElementTree:
    """
    Builds a velocity plot from a sweep frame: one polyline per series, solid for
    real parts and dashed for imaginary parts, with a legend.

    Args:
        frame (pl.DataFrame): Sweep with a `k` column and the series columns.
        title (str): Caption drawn above the plot.

    Returns:
        ET.ElementTree: The SVG document.
    """
    k = frame["k"].to_numpy()
    series = [(entry, frame[entry["column"]].to_numpy()) for entry in SVG_SERIES]
    x_lo, x_hi = _axis_range(k)
    y_lo, y_hi = _axis_range(np.concatenate([values for _, values in series]))

    left, top = MARGIN["left"], MARGIN["top"]
    right = SVG_WIDTH - MARGIN["right"]
    bottom = SVG_HEIGHT - MARGIN["bottom"]

    def to_x(value: float) -> float:
        return left + (value - x_lo) / (x_hi - x_lo) * (right - left)

    def to_y(value: float) -> float:
        return bottom - (value - y_lo) / (y_hi - y_lo) * (bottom - top)

    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": str(SVG_WIDTH),
            "height": str(SVG_HEIGHT),
            "viewBox": f"0 0 {SVG_WIDTH} {SVG_HEIGHT}",
        },
    )
    _text(root, SVG_WIDTH / 2, 25, title, anchor="middle")

    axes = ET.SubElement(root, "g", {"stroke": "black", "stroke-width": "1"})
    labels = ET.SubElement(root, "g", FONT)
    _line(axes, left, bottom, right, bottom)
    _line(axes, left, top, left, bottom)
    for value in np.linspace(x_lo, x_hi, SVG_TICKS):
        _line(axes, to_x(value), bottom, to_x(value), bottom + 5)
        _text(labels, to_x(value), bottom + 20, f"{value:.3g}", anchor="middle")
    for value in np.linspace(y_lo, y_hi, SVG_TICKS):
        _line(axes, left - 5, to_y(value), left, to_y(value))
        _text(labels, left - 8, to_y(value) + 4, f"{value:.3g}", anchor="end")
    _text(labels, (left + right) / 2, SVG_HEIGHT - 15, "k", anchor="middle")

    for entry, values in series:
        attributes = {
            "points": " ".join(f"{_fmt(to_x(a))},{_fmt(to_y(b))}" for a, b in zip(k, values)),
            "fill": "none",
            "stroke": entry["colour"],
            "stroke-width": "2",
            "data-series": entry["column"],
        }
        if entry["dashed"]:
            attributes["stroke-dasharray"] = DASH
        ET.SubElement(root, "polyline", attributes)

    legend = ET.SubElement(root, "g", FONT)
    for i, (entry, _) in enumerate(series):
        y = top + 20 + 22 * i
        colour = entry["colour"]
        sample = _line(legend, right + 15, y, right + 55, y, stroke=colour, stroke_width="2")
        if entry["dashed"]:
            sample.set("stroke-dasharray", DASH)
        style = "dashed, imaginary" if entry["dashed"] else "solid, real"
        _text(legend, right + 62, y + 4, f"{entry['label']} ({style})")

    return ET.ElementTree(root)


def write_svg(frame: pl.DataFrame, title: str, filepath: str) -> None:
    tree = build_svg(frame, title)
    ET.indent(tree)
    tree.write(filepath, encoding="utf-8", xml_declaration=True)
