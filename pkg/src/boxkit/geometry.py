"""Core geometry of discrete cubes and axis-aligned sub-boxes.

A d-dimensional ambient cube is a product [n_1] x ... x [n_d] of integer
ranges (1-based).  A sub-box is a product of per-axis subsets; a brick is a
sub-box whose factors are all contiguous intervals.  This module holds the
immutable domain types plus the verification predicates everything else in
the package relies on:

* ``classify_box``      -- proper / odd / brick flags for a single box
* ``boxes_disjoint``    -- product-set disjointness test
* ``verify_cover``      -- exact point-by-point multiplicity check
* ``piercing_number``   -- per-axis minimum of distinct boxes met by a line
* ``weighted_piercing_ok`` -- label-sum piercing test for labeled partitions

Verification scans every ambient point (or axis line) explicitly with small
numpy tensors; at desk scale this is exact and fast, and there is nothing to
get wrong.  All types are frozen dataclasses, safe to share across threads.
"""

from __future__ import annotations

import functools
import operator
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

__all__ = [
    "Ambient",
    "DiscreteBox",
    "BoxFlags",
    "BoxFamily",
    "VerificationReport",
    "PiercingVector",
    "IntermediatePartition",
    "CornerSpec",
    "GeometryError",
    "classify_box",
    "boxes_disjoint",
    "verify_cover",
    "piercing_number",
    "weighted_piercing_ok",
]


class GeometryError(ValueError):
    """Structural error: invalid box, dimension mismatch, bad coordinates."""


@dataclass(frozen=True)
class Ambient:
    """Ambient cube [n_1] x ... x [n_d]; coordinates are 1-based."""

    sides: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sides) < 1:
            raise GeometryError("ambient must have dimension >= 1")
        if any(n < 2 for n in self.sides):
            raise GeometryError(f"every side must be >= 2, got {self.sides}")

    @staticmethod
    def cube(n: int, d: int) -> "Ambient":
        return Ambient((n,) * d)

    @property
    def dim(self) -> int:
        return len(self.sides)

    @property
    def volume(self) -> int:
        return functools.reduce(operator.mul, self.sides, 1)


def _normalize_factor(factor: Iterable[int]) -> tuple[int, ...]:
    cells = tuple(sorted(factor))
    if not cells:
        raise GeometryError("empty factor")
    if len(set(cells)) != len(cells):
        raise GeometryError(f"duplicate elements in factor {cells}")
    if cells[0] < 1:
        raise GeometryError(f"coordinates must be >= 1, got {cells}")
    return cells


@dataclass(frozen=True)
class DiscreteBox:
    """Product of per-axis coordinate sets; factors are sorted tuples."""

    factors: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "factors", tuple(_normalize_factor(f) for f in self.factors)
        )

    @staticmethod
    def of(*factors: Iterable[int]) -> "DiscreteBox":
        return DiscreteBox(tuple(tuple(f) for f in factors))

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def cardinality(self) -> int:
        return functools.reduce(operator.mul, (len(f) for f in self.factors), 1)

    def contains(self, point: Sequence[int]) -> bool:
        if len(point) != self.dim:
            raise GeometryError("point/box dimension mismatch")
        return all(c in f for c, f in zip(point, self.factors))

    def validate_in(self, ambient: Ambient) -> None:
        if self.dim != ambient.dim:
            raise GeometryError(
                f"box dimension {self.dim} != ambient dimension {ambient.dim}"
            )
        for f, n in zip(self.factors, ambient.sides):
            if f[-1] > n:
                raise GeometryError(f"factor {f} exceeds side {n}")


def _is_interval(cells: tuple[int, ...]) -> bool:
    return cells[-1] - cells[0] + 1 == len(cells)


@dataclass(frozen=True)
class BoxFlags:
    """Properness, oddness and brickness of one box inside its ambient."""

    proper: bool
    odd: bool
    brick: bool


@dataclass(frozen=True)
class BoxFamily:
    """An ordered list of boxes over a common ambient.

    No disjointness or covering is assumed; families are *verified*, never
    trusted, so overlapping families (covers of higher multiplicity) are
    representable too.
    """

    ambient: Ambient
    boxes: tuple[DiscreteBox, ...]

    def __post_init__(self) -> None:
        for b in self.boxes:
            b.validate_in(self.ambient)

    def __len__(self) -> int:
        return len(self.boxes)


@dataclass(frozen=True)
class VerificationReport:
    is_partition: bool
    cover_multiplicity_min: int
    cover_multiplicity_max: int
    all_proper: bool
    all_odd: bool
    all_brick: bool
    piercing_number: int
    per_axis_piercing: tuple[int, ...]
    multiplicity_ok: bool = True
    first_violation: tuple[int, ...] | None = None


@dataclass(frozen=True)
class PiercingVector:
    """Per-axis piercing targets attached to one part of a labeled partition."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a < 1 for a in self.labels):
            raise GeometryError(f"labels must be >= 1, got {self.labels}")


@dataclass(frozen=True)
class IntermediatePartition:
    """A partition whose parts carry piercing vectors.

    The parts must tile the ambient exactly once.  A valid labeling makes the
    label sums along every axis line reach the target k; that is checked by
    ``weighted_piercing_ok``, not assumed here.  Parts are usually bricks but
    may be general boxes (some constructions deliberately use non-bricks).
    """

    ambient: Ambient
    parts: tuple[tuple[DiscreteBox, PiercingVector], ...]

    def __post_init__(self) -> None:
        for box, vec in self.parts:
            box.validate_in(self.ambient)
            if len(vec.labels) != self.ambient.dim:
                raise GeometryError("label/dimension mismatch")
        report = verify_cover(self.family(), 1, "exact")
        if not report.is_partition:
            raise GeometryError(
                "parts of an intermediate partition must tile the ambient; "
                f"first bad point {report.first_violation}"
            )

    def family(self) -> BoxFamily:
        return BoxFamily(self.ambient, tuple(box for box, _ in self.parts))

    def __len__(self) -> int:
        return len(self.parts)


# Corner of the cube: one of "low"/"high" per axis.
CornerSpec = tuple[Literal["low", "high"], ...]


def classify_box(box: DiscreteBox, ambient: Ambient) -> BoxFlags:
    """Flags per the standard definitions: proper means no factor is a full
    side, odd means every factor has odd size, brick means every factor is a
    contiguous interval."""
    box.validate_in(ambient)
    proper = all(len(f) != n for f, n in zip(box.factors, ambient.sides))
    odd = all(len(f) % 2 == 1 for f in box.factors)
    brick = all(_is_interval(f) for f in box.factors)
    return BoxFlags(proper=proper, odd=odd, brick=brick)


def boxes_disjoint(b1: DiscreteBox, b2: DiscreteBox) -> bool:
    """Two product sets are disjoint iff the factors are disjoint on some axis."""
    if b1.dim != b2.dim:
        raise GeometryError("dimension mismatch")
    return any(set(f1).isdisjoint(f2) for f1, f2 in zip(b1.factors, b2.factors))


def _indicator(cells: tuple[int, ...], n: int) -> np.ndarray:
    ind = np.zeros(n, dtype=np.int64)
    ind[np.asarray(cells) - 1] = 1
    return ind


def _coverage_tensor(family: BoxFamily) -> np.ndarray:
    """Multiplicity of every ambient point, as an integer tensor."""
    sides = family.ambient.sides
    cover = np.zeros(sides, dtype=np.int64)
    for box in family.boxes:
        vecs = [_indicator(f, n) for f, n in zip(box.factors, sides)]
        cover += functools.reduce(np.multiply.outer, vecs)
    return cover


def _line_counts(family: BoxFamily) -> list[np.ndarray]:
    """For each axis i, the number of distinct boxes met by every line in
    direction i (a tensor over the remaining axes)."""
    sides = family.ambient.sides
    d = family.ambient.dim
    counts: list[np.ndarray] = [
        np.zeros(tuple(n for j, n in enumerate(sides) if j != i), dtype=np.int64)
        if d > 1
        else np.zeros((), dtype=np.int64)
        for i in range(d)
    ]
    for box in family.boxes:
        vecs = [_indicator(f, n) for f, n in zip(box.factors, sides)]
        for i in range(d):
            rest = [v for j, v in enumerate(vecs) if j != i]
            if rest:
                counts[i] += functools.reduce(np.multiply.outer, rest)
            else:
                counts[i] += 1
    return counts


def verify_cover(
    family: BoxFamily,
    multiplicity: int = 1,
    mode: Literal["exact", "at_least"] = "exact",
) -> VerificationReport:
    """Check that every ambient point is covered exactly (or at least)
    ``multiplicity`` times.  With multiplicity 1 and mode "exact" this is the
    partition predicate."""
    if multiplicity < 1:
        raise GeometryError("multiplicity must be >= 1")
    if mode not in ("exact", "at_least"):
        raise GeometryError(f"unknown mode {mode!r}")

    if not family.boxes:
        return VerificationReport(
            is_partition=False,
            cover_multiplicity_min=0,
            cover_multiplicity_max=0,
            all_proper=True,
            all_odd=True,
            all_brick=True,
            piercing_number=0,
            per_axis_piercing=(0,) * family.ambient.dim,
            multiplicity_ok=False,
            first_violation=tuple(1 for _ in family.ambient.sides),
        )

    cover = _coverage_tensor(family)
    cmin = int(cover.min())
    cmax = int(cover.max())
    if mode == "exact":
        bad = cover != multiplicity
    else:
        bad = cover < multiplicity
    ok = not bool(bad.any())
    first = None
    if not ok:
        idx = np.argwhere(bad)[0]
        first = tuple(int(c) + 1 for c in idx)

    flags = [classify_box(b, family.ambient) for b in family.boxes]
    overall, per_axis = piercing_number(family)
    return VerificationReport(
        is_partition=(cmin == 1 and cmax == 1),
        cover_multiplicity_min=cmin,
        cover_multiplicity_max=cmax,
        all_proper=all(f.proper for f in flags),
        all_odd=all(f.odd for f in flags),
        all_brick=all(f.brick for f in flags),
        piercing_number=overall,
        per_axis_piercing=per_axis,
        multiplicity_ok=ok,
        first_violation=first,
    )


def piercing_number(family: BoxFamily) -> tuple[int, tuple[int, ...]]:
    """Minimum, over all axis-parallel lines, of the number of distinct boxes
    the line meets; reported overall and per axis."""
    if not family.boxes:
        return 0, (0,) * family.ambient.dim
    counts = _line_counts(family)
    per_axis = tuple(int(c.min()) for c in counts)
    return min(per_axis), per_axis


def weighted_piercing_ok(ip: IntermediatePartition, k: int) -> bool:
    """True iff along every axis-j line the labels a_{.,j} of the parts the
    line crosses sum to at least k."""
    sides = ip.ambient.sides
    d = ip.ambient.dim
    for i in range(d):
        shape = tuple(n for j, n in enumerate(sides) if j != i)
        sums = np.zeros(shape if shape else (), dtype=np.int64)
        for box, vec in ip.parts:
            vecs = [
                _indicator(f, n)
                for j, (f, n) in enumerate(zip(box.factors, sides))
                if j != i
            ]
            touch = functools.reduce(np.multiply.outer, vecs) if vecs else 1
            sums += vec.labels[i] * touch
        if int(np.min(sums)) < k:
            return False
    return True
