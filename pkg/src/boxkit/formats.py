"""Text formats for partition documents.

Two serializations are supported:

* a plain listing format, one line per box::

      Ambient = 5 x 5 x 5
      Box(1) = {1,2,3} x {1,2,3} x {1}
      Box(2) = ...

  The ``Ambient`` header is optional; without it the ambient is inferred as
  the per-axis maximum coordinate.  The writer only emits the header when
  inference would not reproduce the ambient, so listings over a fully
  inhabited ambient round-trip byte-for-byte.

* a canonical structured (JSON) format carrying ambient, boxes, optional
  per-box labels and free-form metadata.

Both directions are exact: ``parse(write(doc)) == doc``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .geometry import Ambient, BoxFamily, DiscreteBox, GeometryError, PiercingVector

__all__ = [
    "PartitionDocument",
    "ParseError",
    "parse_partition_text",
    "write_partition_text",
    "parse_partition_structured",
    "write_partition_structured",
]


class ParseError(ValueError):
    """Malformed partition text; message carries the offending line number."""


@dataclass(frozen=True)
class PartitionDocument:
    """A box family with stable 1-based ids, optional labels and metadata."""

    ambient: Ambient
    boxes: tuple[DiscreteBox, ...]
    labels: tuple[PiercingVector, ...] | None = None
    meta: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        for b in self.boxes:
            b.validate_in(self.ambient)
        if self.labels is not None and len(self.labels) != len(self.boxes):
            raise GeometryError("labels must match boxes one-to-one")

    def family(self) -> BoxFamily:
        return BoxFamily(self.ambient, self.boxes)

    @staticmethod
    def from_family(family: BoxFamily, labels=None, meta=()) -> "PartitionDocument":
        return PartitionDocument(family.ambient, family.boxes, labels, tuple(meta))


_BOX_RE = re.compile(r"^Box\(\s*(\d+)\s*\)\s*=\s*(.*)$")
_FACTOR_RE = re.compile(r"^\{([0-9,\s]*)\}$")
_AMBIENT_RE = re.compile(r"^Ambient\s*=\s*(.*)$")


def _parse_factor(text: str, lineno: int) -> tuple[int, ...]:
    m = _FACTOR_RE.match(text.strip())
    if not m:
        raise ParseError(f"line {lineno}: malformed factor {text.strip()!r}")
    items = [s.strip() for s in m.group(1).split(",")]
    if items == [""]:
        raise ParseError(f"line {lineno}: empty factor")
    try:
        cells = [int(s) for s in items]
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer coordinate in {text.strip()!r}")
    if any(c < 1 for c in cells):
        raise ParseError(f"line {lineno}: coordinates must be positive")
    if len(set(cells)) != len(cells):
        raise ParseError(f"line {lineno}: duplicate element in factor {text.strip()!r}")
    return tuple(sorted(cells))


def parse_partition_text(text: str) -> PartitionDocument:
    """Parse the listing format; boxes are returned in id order."""
    ambient_sides: tuple[int, ...] | None = None
    entries: dict[int, DiscreteBox] = {}
    dim: int | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        m = _AMBIENT_RE.match(line)
        if m:
            if ambient_sides is not None:
                raise ParseError(f"line {lineno}: duplicate Ambient header")
            try:
                ambient_sides = tuple(
                    int(s.strip()) for s in m.group(1).split("x")
                )
            except ValueError:
                raise ParseError(f"line {lineno}: malformed Ambient header")
            continue
        m = _BOX_RE.match(line)
        if not m:
            raise ParseError(f"line {lineno}: malformed line {line!r}")
        box_id = int(m.group(1))
        if box_id in entries:
            raise ParseError(f"line {lineno}: duplicate id {box_id}")
        factors = tuple(
            _parse_factor(part, lineno) for part in m.group(2).split(" x ")
        )
        if dim is None:
            dim = len(factors)
        elif len(factors) != dim:
            raise ParseError(f"line {lineno}: inconsistent dimension")
        entries[box_id] = DiscreteBox(factors)

    if not entries:
        raise ParseError("no boxes found")
    ids = sorted(entries)
    if ids != list(range(1, len(ids) + 1)):
        raise ParseError(f"ids must be contiguous from 1, got {ids}")
    boxes = tuple(entries[i] for i in ids)

    if ambient_sides is None:
        assert dim is not None
        ambient_sides = tuple(
            max(max(b.factors[i]) for b in boxes) for i in range(dim)
        )
        # inference must still produce a legal ambient (sides >= 2)
        ambient_sides = tuple(max(n, 2) for n in ambient_sides)
    return PartitionDocument(Ambient(ambient_sides), boxes)


def _inferred_sides(doc: PartitionDocument) -> tuple[int, ...]:
    dim = doc.ambient.dim
    sides = tuple(
        max(max(b.factors[i]) for b in doc.boxes) if doc.boxes else 2
        for i in range(dim)
    )
    return tuple(max(n, 2) for n in sides)


def write_partition_text(doc: PartitionDocument) -> str:
    """Emit the listing format; ascending elements, single spaces, one box
    per line.  The Ambient header appears only when inference would differ."""
    lines = []
    if _inferred_sides(doc) != doc.ambient.sides:
        lines.append("Ambient = " + " x ".join(str(n) for n in doc.ambient.sides))
    for i, box in enumerate(doc.boxes, start=1):
        factors = " x ".join(
            "{" + ",".join(str(c) for c in f) + "}" for f in box.factors
        )
        lines.append(f"Box({i}) = {factors}")
    return "\n".join(lines) + "\n"


def write_partition_structured(doc: PartitionDocument) -> str:
    obj = {
        "ambient": list(doc.ambient.sides),
        "boxes": [[list(f) for f in b.factors] for b in doc.boxes],
        "labels": None
        if doc.labels is None
        else [list(v.labels) for v in doc.labels],
        "meta": {k: v for k, v in doc.meta},
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def parse_partition_structured(text: str) -> PartitionDocument:
    obj = json.loads(text)
    ambient = Ambient(tuple(obj["ambient"]))
    boxes = tuple(DiscreteBox(tuple(tuple(f) for f in b)) for b in obj["boxes"])
    labels = None
    if obj.get("labels") is not None:
        labels = tuple(PiercingVector(tuple(v)) for v in obj["labels"])
    meta = tuple(sorted(obj.get("meta", {}).items()))
    return PartitionDocument(ambient, boxes, labels, meta)
