"""Minimal SVG rendering: one rect per region, optional choropleth fill.

Coordinates are emitted in map units with the y axis flipped (SVG y
grows downward). Label font sizes shrink until the rendered text fits
inside its rectangle, approximating glyph width as 0.6 of the font
size.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .construction import Cartogram
from .errors import MapValidationError

#: Approximate glyph advance as a fraction of the font size.
GLYPH_WIDTH = 0.6

COLORMAPS = {
    "heat": [
        "#FF0000",
        "#FF2400",
        "#FF4900",
        "#FF6D00",
        "#FF9200",
        "#FFB600",
        "#FFDB00",
        "#FFFF00",
        "#FFFF40",
        "#FFFFBF",
    ],
    "viridis": [
        "#440154",
        "#482878",
        "#3E4A89",
        "#31688E",
        "#26828E",
        "#1F9E89",
        "#35B779",
        "#6DCD59",
        "#B4DE2C",
        "#FDE725",
    ],
    "greys": [
        "#F7F7F7",
        "#D9D9D9",
        "#BDBDBD",
        "#969696",
        "#737373",
        "#525252",
        "#252525",
    ],
}

_COLOR_COLUMNS = ("z", "dfs.num", "topology.error", "relpos.error", "relposnh.error")


def _color_values(cart: Cartogram, column: str) -> np.ndarray:
    if column == "z":
        return np.asarray(cart.z, dtype=float)
    if column == "dfs.num":
        return np.asarray(cart.dfs_num, dtype=float)
    if column == "topology.error":
        return np.asarray(cart.topology_errors, dtype=float)
    if column == "relpos.error":
        return np.asarray(cart.relpos_errors, dtype=float)
    if column == "relposnh.error":
        return np.asarray(cart.relposnh_errors, dtype=float)
    raise MapValidationError(
        f"unknown color column {column!r}, expected one of {', '.join(_COLOR_COLUMNS)}"
    )


def colormap_indices(values: np.ndarray, k: int) -> np.ndarray:
    """Map values linearly onto 0..k-1; a constant column maps to 0."""
    values = np.asarray(values, dtype=float)
    lo = values.min()
    hi = values.max()
    if hi == lo:
        return np.zeros(len(values), dtype=int)
    scaled = np.round((k - 1) * (values - lo) / (hi - lo)).astype(int)
    return np.clip(scaled, 0, k - 1)


def label_font_size(name: str, dx: float, dy: float) -> float:
    """Largest font size whose rendered label stays inside the rect."""
    width_cap = 2.0 * dx / (GLYPH_WIDTH * max(len(name), 1))
    return min(width_cap, 2.0 * dy)


def render_svg(
    cart: Cartogram,
    path: str | Path,
    *,
    color_by: str | None = None,
    colormap: str = "heat",
    label: bool = True,
) -> None:
    """Write the cartogram as an SVG document.

    ``color_by`` selects a per-region value column to fill from
    ``colormap``; without it every rect is white. ``label`` centers each
    region's name inside its rectangle.
    """
    if colormap not in COLORMAPS:
        raise MapValidationError(
            f"unknown colormap {colormap!r}, expected one of {', '.join(sorted(COLORMAPS))}"
        )
    xmin, xmax, ymin, ymax = cart.bbox()
    width = xmax - xmin
    height = ymax - ymin
    pad = 0.01 * max(width, height)
    stroke = 0.002 * max(width, height)

    if color_by is not None:
        palette = COLORMAPS[colormap]
        fills = [palette[i] for i in colormap_indices(_color_values(cart, color_by), len(palette))]
    else:
        fills = ["white"] * len(cart)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{-pad!r} {-pad!r} {width + 2 * pad!r} {height + 2 * pad!r}">',
    ]
    for i, name in enumerate(cart.names):
        x = float(cart.x[i]) - xmin
        y = ymax - float(cart.y[i])
        dx = float(cart.dx[i])
        dy = float(cart.dy[i])
        lines.append(
            f'<rect x="{x - dx!r}" y="{y - dy!r}" width="{2 * dx!r}" height="{2 * dy!r}" '
            f'fill="{fills[i]}" stroke="black" stroke-width="{stroke!r}"/>'
        )
        if label:
            fs = label_font_size(name, dx, dy)
            lines.append(
                f'<text x="{x!r}" y="{y!r}" font-size="{fs!r}" '
                f'text-anchor="middle" dominant-baseline="central" '
                f'font-family="sans-serif">{escape(name)}</text>'
            )
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
