"""Exception types shared across the package."""

from __future__ import annotations


class MapValidationError(ValueError):
    """Invalid region values, table schema, or ordering."""


class DisconnectedMapError(MapValidationError):
    """The rectangles do not form a single connected adjacency graph."""

    def __init__(self, components: list[list[str]]) -> None:
        self.components = components
        shown = "; ".join(
            "{" + ", ".join(c[:4]) + (", ..." if len(c) > 4 else "") + "}"
            for c in components[:5]
        )
        more = "" if len(components) <= 5 else f" (+{len(components) - 5} more)"
        super().__init__(
            f"adjacency graph splits into {len(components)} components: {shown}{more}; "
            "every region must touch or overlap some other region"
        )
