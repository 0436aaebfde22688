"""CSV and GeoJSON readers/writers for maps, cartograms, and orderings.

Input and output tables share the column set ``x, y, dx, dy, z, name``;
cartogram tables append the diagnostics columns ``dfs.num``,
``topology.error``, ``relpos.error``, ``relposnh.error``. Floats are
written with ``repr`` so every value round-trips exactly and repeated
runs are byte-stable.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .construction import Cartogram
from .errors import MapValidationError
from .metrics import TOPOLOGY_SENTINEL
from .model import InputMap, InputRegion, Permutation

MAP_COLUMNS = ("x", "y", "dx", "dy", "z", "name")
CARTOGRAM_COLUMNS = MAP_COLUMNS + (
    "dfs.num",
    "topology.error",
    "relpos.error",
    "relposnh.error",
)


def _fmt(value: float) -> str:
    return repr(float(value))


def _parse_float(raw: str | None, column: str, row: int) -> float:
    if raw is None or raw.strip() == "":
        raise MapValidationError(f"row {row}: missing value for column '{column}'")
    try:
        return float(raw)
    except ValueError:
        raise MapValidationError(
            f"row {row}: column '{column}' is not numeric: {raw!r}"
        ) from None


def read_map(path: str | Path) -> InputMap:
    """Read an input map from CSV.

    Requires columns x, y, dx, dy, z; a missing name column is filled
    with ``region_<row>``. Extra columns are ignored, so a cartogram
    CSV reads back as a plain map.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise MapValidationError(f"{path}: empty file, expected a CSV header")
        for column in ("x", "y", "dx", "dy", "z"):
            if column not in header:
                raise MapValidationError(f"{path}: missing required column '{column}'")
        has_name = "name" in header
        regions = []
        for row_num, row in enumerate(reader, start=2):
            name = (row.get("name") or "").strip() if has_name else ""
            if not name:
                name = f"region_{row_num - 1}"
            fields = {
                c: _parse_float(row.get(c), c, row_num)
                for c in ("x", "y", "dx", "dy", "z")
            }
            try:
                regions.append(InputRegion(name=name, **fields))
            except MapValidationError as exc:
                raise MapValidationError(f"row {row_num}: {exc}") from None
    return InputMap(regions)


def write_map(m: InputMap, path: str | Path) -> None:
    """Write an input map as CSV with the standard column set."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(MAP_COLUMNS)
        for r in m:
            writer.writerow([_fmt(r.x), _fmt(r.y), _fmt(r.dx), _fmt(r.dy), _fmt(r.z), r.name])


def _require_correspondence(cart: Cartogram, m: InputMap) -> None:
    if tuple(cart.names) != tuple(m.names):
        raise MapValidationError(
            "cartogram regions do not correspond to the input map "
            f"({len(cart.names)} vs {len(m.names)} names or order mismatch)"
        )


def write_cartogram(
    cart: Cartogram, m: InputMap, path: str | Path, format: str = "csv"
) -> None:
    """Write a cartogram with its per-region diagnostics.

    ``csv`` appends dfs.num and the error columns to the map schema;
    ``geojson`` emits a FeatureCollection with one closed rectangular
    ring per region and the same diagnostics as properties.
    """
    _require_correspondence(cart, m)
    if format == "csv":
        _write_cartogram_csv(cart, path)
    elif format == "geojson":
        _write_cartogram_geojson(cart, path)
    else:
        raise MapValidationError(f"unknown format {format!r}, expected 'csv' or 'geojson'")


def _write_cartogram_csv(cart: Cartogram, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CARTOGRAM_COLUMNS)
        for i, name in enumerate(cart.names):
            writer.writerow(
                [
                    _fmt(cart.x[i]),
                    _fmt(cart.y[i]),
                    _fmt(cart.dx[i]),
                    _fmt(cart.dy[i]),
                    _fmt(cart.z[i]),
                    name,
                    int(cart.dfs_num[i]),
                    int(cart.topology_errors[i]),
                    _fmt(cart.relpos_errors[i]),
                    _fmt(cart.relposnh_errors[i]),
                ]
            )


def _ring(x: float, y: float, dx: float, dy: float) -> list[list[float]]:
    # counter-clockwise, first point repeated to close the ring
    return [
        [x - dx, y - dy],
        [x + dx, y - dy],
        [x + dx, y + dy],
        [x - dx, y + dy],
        [x - dx, y - dy],
    ]


def _write_cartogram_geojson(cart: Cartogram, path: str | Path) -> None:
    features = []
    for i, name in enumerate(cart.names):
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "Polygon",
                    "coordinates": [
                        _ring(
                            float(cart.x[i]),
                            float(cart.y[i]),
                            float(cart.dx[i]),
                            float(cart.dy[i]),
                        )
                    ],
                },
                "properties": {
                    "name": name,
                    "z": float(cart.z[i]),
                    "dfs.num": int(cart.dfs_num[i]),
                    "topology.error": int(cart.topology_errors[i]),
                    "relpos.error": float(cart.relpos_errors[i]),
                    "relposnh.error": float(cart.relposnh_errors[i]),
                },
            }
        )
    doc = {"type": "FeatureCollection", "features": features}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_cartogram(path: str | Path) -> Cartogram:
    """Read a cartogram CSV written by :func:`write_cartogram`.

    A region whose topology.error equals the sentinel is restored as
    failed.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise MapValidationError(f"{path}: empty file, expected a CSV header")
        for column in CARTOGRAM_COLUMNS:
            if column not in header:
                raise MapValidationError(f"{path}: missing required column '{column}'")
        names: list[str] = []
        numeric: dict[str, list[float]] = {c: [] for c in CARTOGRAM_COLUMNS if c != "name"}
        for row_num, row in enumerate(reader, start=2):
            name = (row.get("name") or "").strip()
            if not name:
                raise MapValidationError(f"row {row_num}: missing value for column 'name'")
            names.append(name)
            for column in numeric:
                numeric[column].append(_parse_float(row.get(column), column, row_num))
    if len(names) < 2:
        raise MapValidationError(f"{path}: a cartogram needs at least 2 regions")
    topology = np.asarray(numeric["topology.error"], dtype=np.int32)
    return Cartogram.from_arrays(
        names=tuple(names),
        z=np.asarray(numeric["z"]),
        x=np.asarray(numeric["x"]),
        y=np.asarray(numeric["y"]),
        dx=np.asarray(numeric["dx"]),
        dy=np.asarray(numeric["dy"]),
        dfs_num=np.asarray(numeric["dfs.num"], dtype=np.int32),
        topology_errors=topology,
        relpos_errors=np.asarray(numeric["relpos.error"]),
        relposnh_errors=np.asarray(numeric["relposnh.error"]),
        failed=topology == TOPOLOGY_SENTINEL,
    )


def read_permutation(path: str | Path, n: int) -> Permutation:
    """Read a visit order: one 1-based region index per line.

    Blank lines and ``#`` comments are skipped. The indices must form a
    bijection onto 1..n.
    """
    values: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                values.append(int(text))
            except ValueError:
                raise MapValidationError(
                    f"line {line_num}: expected an integer region index, got {text!r}"
                ) from None
    if len(values) != n:
        raise MapValidationError(
            f"ordering lists {len(values)} indices but the map has {n} regions"
        )
    if sorted(values) != list(range(1, n + 1)):
        raise MapValidationError("ordering must use each index 1..n exactly once")
    return Permutation(tuple(v - 1 for v in values))


def write_permutation(perm: Permutation | Sequence[int], path: str | Path) -> None:
    """Write a visit order as 1-based indices, one per line."""
    order = perm.order if isinstance(perm, Permutation) else tuple(perm)
    with open(path, "w", encoding="utf-8") as fh:
        for v in order:
            fh.write(f"{int(v) + 1}\n")
