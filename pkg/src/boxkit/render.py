"""Plain-text and SVG pictures of low-dimensional partitions.

ASCII output prints the 1-based box id of every cell: a single row in 1D, a
grid in 2D, and one grid per last-axis layer in 3D (the layered style used
for hand-listings of 3D partitions).  SVG output (2D only) draws one
rectangle per brick and falls back to unit tiles for non-brick boxes.
"""

from __future__ import annotations

import itertools

from .formats import PartitionDocument
from .geometry import GeometryError, classify_box

__all__ = ["render"]

_CELL = 24  # svg pixels per lattice cell


def _id_grid(doc: PartitionDocument):
    """Cell -> box id lookup (0 for uncovered cells)."""
    sides = doc.ambient.sides
    grid: dict[tuple[int, ...], int] = {}
    for i, box in enumerate(doc.boxes, start=1):
        for pt in itertools.product(*box.factors):
            grid.setdefault(pt, i)
    return grid, sides


def _ascii(doc: PartitionDocument) -> str:
    grid, sides = _id_grid(doc)
    width = len(str(len(doc.boxes)))

    def cell(pt) -> str:
        i = grid.get(pt)
        return (str(i) if i else ".").rjust(width)

    if len(sides) == 1:
        return " ".join(cell((x,)) for x in range(1, sides[0] + 1)) + "\n"
    if len(sides) == 2:
        rows = [
            " ".join(cell((x, y)) for x in range(1, sides[0] + 1))
            for y in range(sides[1], 0, -1)
        ]
        return "\n".join(rows) + "\n"
    if len(sides) == 3:
        blocks = []
        for z in range(1, sides[2] + 1):
            rows = [f"layer z={z}"]
            rows += [
                " ".join(cell((x, y, z)) for x in range(1, sides[0] + 1))
                for y in range(sides[1], 0, -1)
            ]
            blocks.append("\n".join(rows))
        return "\n\n".join(blocks) + "\n"
    raise GeometryError("ascii rendering supports dimensions 1-3")


def _svg(doc: PartitionDocument) -> str:
    if doc.ambient.dim != 2:
        raise GeometryError("svg rendering supports dimension 2 only")
    nx, ny = doc.ambient.sides
    w, h = nx * _CELL, ny * _CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">'
    ]

    def rect(x0, y0, cols, rows, label):
        x, y = (x0 - 1) * _CELL, (ny - y0 - rows + 1) * _CELL
        parts.append(
            f'<rect x="{x}" y="{y}" width="{cols * _CELL}" height="{rows * _CELL}" '
            'fill="none" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x + cols * _CELL / 2}" y="{y + rows * _CELL / 2}" '
            'text-anchor="middle" dominant-baseline="middle" '
            f'font-size="10">{label}</text>'
        )

    for i, box in enumerate(doc.boxes, start=1):
        flags = classify_box(box, doc.ambient)
        fx, fy = box.factors
        if flags.brick:
            rect(fx[0], fy[0], len(fx), len(fy), i)
        else:
            for x in fx:
                for y in fy:
                    rect(x, y, 1, 1, i)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(doc: PartitionDocument, format: str = "ascii") -> str:
    if format == "ascii":
        return _ascii(doc)
    if format == "svg":
        return _svg(doc)
    raise GeometryError(f"unknown render format {format!r}")
