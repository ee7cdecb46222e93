"""Closed-form bounds and exact parity-counting identities.

The parity identity behind the 2^d lower bound for odd partitions: fix a
nonempty B inside [n] and draw an odd-cardinality subset R of [n] uniformly
at random; then |B meets R| is odd exactly half the time (2^{n-2} of the
2^{n-1} odd subsets).  Restricting to *proper* odd subsets (n odd, so the
full set is one of the odd subsets being removed) shifts the count to
2^{n-2}-1 of 2^{n-1}-1 whenever |B| is odd, which pushes the lower bound for
odd proper partitions up to ((2^{n-1}-1)/(2^{n-2}-1))^d, strictly above 2^d
and equal to 3^d at n=3.

Also here: the trivial piercing bounds (slab upper bound k^d; corner/edge
counting lower bounds), the exponential piercing lower bound for general
boxes, and a bisection root-finder for the growth rates of the size
recurrences (largest root of x^3 = 13x + 9, sqrt(15), 61^{1/4}).

Everything rational is returned as an exact ``fractions.Fraction`` so that
ceilings taken downstream are exact; floats appear only for roots and
exponentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

import numpy as np

from .geometry import GeometryError

__all__ = [
    "ParityTally",
    "BoundValue",
    "parity_count",
    "lower_odd_basic",
    "lower_odd_proper",
    "kp_trivial_bounds",
    "kp_box_exponential_lower",
    "growth_root",
]


@dataclass(frozen=True)
class ParityTally:
    """Exhaustive count of odd-size selector subsets hitting a target oddly."""

    universe: int
    target_set: tuple[int, ...]
    total_selectors: int
    odd_hits: int
    mode: Literal["all_odd", "proper_odd"]

    def __post_init__(self) -> None:
        if not 0 <= self.odd_hits <= self.total_selectors:
            raise GeometryError("odd_hits out of range")


@dataclass(frozen=True)
class BoundValue:
    """A named bound with the (d, k, n) instance it applies to (None = any)."""

    name: str
    value: Fraction | float
    valid_for: tuple[int | None, int | None, int | None] = (None, None, None)

    def __post_init__(self) -> None:
        if not self.value > 0 or (
            isinstance(self.value, float) and not math.isfinite(self.value)
        ):
            raise GeometryError(f"bound {self.name} must be finite positive")


def _popcounts(n_bits: int) -> np.ndarray:
    masks = np.arange(1 << n_bits, dtype=np.uint32)
    counts = np.zeros_like(masks)
    for b in range(n_bits):
        counts += (masks >> b) & 1
    return counts


def parity_count(
    n: int, B: Iterable[int], mode: Literal["all_odd", "proper_odd"] = "all_odd"
) -> ParityTally:
    """Count odd-cardinality subsets R of [n] with |B ∩ R| odd, exhaustively.

    With mode "proper_odd" the full set [n] is excluded from the selectors;
    this requires n odd (otherwise [n] is not an odd subset and nothing
    changes).  For nonempty B the all_odd count is always 2^{n-2}; the
    proper_odd count is 2^{n-2}-1 when |B| is odd and 2^{n-2} when even.
    """
    target = tuple(sorted(set(B)))
    if not target:
        raise GeometryError("target set must be nonempty")
    if target[0] < 1 or target[-1] > n:
        raise GeometryError(f"target {target} not inside [{n}]")
    if mode not in ("all_odd", "proper_odd"):
        raise GeometryError(f"unknown mode {mode!r}")
    if mode == "proper_odd" and n % 2 == 0:
        raise GeometryError("proper_odd mode requires odd n")

    odd_size = (_popcounts(n) & 1).astype(bool)
    masks = np.arange(1 << n, dtype=np.uint32)
    inter_parity = np.zeros(1 << n, dtype=np.uint32)
    for c in target:
        inter_parity ^= (masks >> (c - 1)) & 1
    odd_inter = inter_parity.astype(bool)

    keep = odd_size.copy()
    if mode == "proper_odd":
        keep[(1 << n) - 1] = False
    total = int(keep.sum())
    hits = int((keep & odd_inter).sum())
    return ParityTally(n, target, total, hits, mode)


def lower_odd_basic(d: int) -> BoundValue:
    """Any partition of a cube into odd boxes has at least 2^d parts."""
    if d < 1:
        raise GeometryError("d must be >= 1")
    return BoundValue("odd_basic", Fraction(2) ** d, (d, None, None))


def lower_odd_proper(n: int, d: int) -> BoundValue:
    """Exact rational lower bound ((2^{n-1}-1)/(2^{n-2}-1))^d for partitions
    of [n]^d into odd proper boxes; equals 3^d at n=3 and decreases toward
    2^d as n grows."""
    if n <= 2 or n % 2 == 0:
        raise GeometryError("n must be odd and > 2")
    if d < 1:
        raise GeometryError("d must be >= 1")
    base = Fraction(2 ** (n - 1) - 1, 2 ** (n - 2) - 1)
    return BoundValue("odd_proper", base**d, (d, None, n))


def kp_trivial_bounds(
    d: int, k: int, kind: Literal["box", "brick"]
) -> tuple[BoundValue, BoundValue]:
    """The easy piercing bounds: k^d slabs from above; corner and edge
    counting from below (bricks), or the line bound and the 2-piercing
    bound (boxes)."""
    if d < 1 or k < 2:
        raise GeometryError("need d >= 1 and k >= 2")
    if kind == "brick":
        lower = Fraction(d * 2 ** (d - 1) * (k - 2) + 2**d)
        name = "brick_trivial"
    elif kind == "box":
        lower = Fraction(max(k * (d - 1) + 1, 2**d))
        name = "box_trivial"
    else:
        raise GeometryError(f"unknown kind {kind!r}")
    return (
        BoundValue(name + "_lower", lower, (d, k, None)),
        BoundValue(name + "_upper", Fraction(k) ** d, (d, k, None)),
    )


def kp_box_exponential_lower(d: int, k: int) -> tuple[BoundValue, BoundValue]:
    """Lower bound for k-piercing partitions into proper boxes growing
    exponentially in sqrt(d): the sharp product form
    prod_{i=2}^{d} (1 + 1/(sqrt(2i)-1)) * (k-1) + 1 and the weaker closed
    form e^{sqrt(d)/4} (k-1); the product form dominates."""
    if d < 2 or k < 2:
        raise GeometryError("need d >= 2 and k >= 2")
    prod = 1.0
    for i in range(2, d + 1):
        prod *= 1.0 + 1.0 / (math.sqrt(2 * i) - 1.0)
    product_form = BoundValue("box_exp_product", prod * (k - 1) + 1, (d, k, None))
    closed_form = BoundValue(
        "box_exp_closed", math.exp(math.sqrt(d) / 4) * (k - 1), (d, k, None)
    )
    return product_form, closed_form


def growth_root(recurrence: Iterable[float]) -> float:
    """Largest positive root of x^m = c_1 x^{m-1} + ... + c_m, found by
    bisection to 1e-9.

    `recurrence` lists (c_1, ..., c_m); the characteristic polynomial is
    p(x) = x^m - sum c_i x^{m-i}.  With nonnegative coefficients (not all
    zero) p has a single sign change on [1, 1 + sum |c_i|], which brackets
    the dominant root.
    """
    coeffs = [float(c) for c in recurrence]
    m = len(coeffs)
    if m < 1:
        raise GeometryError("empty recurrence")

    def p(x: float) -> float:
        return x**m - sum(c * x ** (m - 1 - i) for i, c in enumerate(coeffs))

    lo, hi = 1.0, 1.0 + sum(abs(c) for c in coeffs)
    if p(hi) < 0:
        raise GeometryError("no root in bracket")
    if p(lo) > 0:
        # dominant root below 1; widen the bracket downward
        lo = 0.0
        if p(lo) > 0:
            raise GeometryError("no positive real root in bracket")
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if p(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
