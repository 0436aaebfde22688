"""Bundled example maps.

The US table carries the lower-48 plus Alaska and Hawaii repositioned
south of the mainland so every state's rectangle overlaps a neighbor,
which the construction needs for a connected adjacency graph. Centers
and land areas follow the classic state facts table (1977 Statistical
Abstract); columns derive from the area a as z = sqrt(a),
dy = z / (2 * 0.7 * 60), and dx = dy / cos(latitude), stretching
longitudes so the overlap survives the latitude distortion.
"""

from __future__ import annotations

from importlib import resources

from .io import read_map
from .model import InputMap


def us_states() -> InputMap:
    """The 50-state example map (areas in square miles)."""
    path = resources.files("rectcarto").joinpath("data/us_states.csv")
    with resources.as_file(path) as p:
        return read_map(p)
