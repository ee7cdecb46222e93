"""Search for small covers and partitions of discrete cubes by boxes.

A cover instance fixes an ambient cube, a candidate pool of boxes, a target
multiplicity t and a mode: every ambient point must be covered exactly t
times ("exact") or at least t times ("at_least").  Partitions are the case
t=1 exact.  Three engines are provided:

* ``solve_cover``   -- complete branch-and-bound; branches on the deficit
  point with the fewest usable candidates, prunes with a cardinality bound,
  and proves optimality when the tree is exhausted;
* ``anneal_cover``  -- simulated annealing over candidate subsets, for
  instances out of reach of the exact engine (the 2-fold cover of [3]^3 by
  proper boxes has 216 candidates); results are always re-verified;
* ``export_model``  -- emits the equivalent 0/1 integer program (LP text) or
  SAT clauses (DIMACS CNF, t=1 exact only), one variable per candidate and
  one constraint per point.

Everything is single-threaded and bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import itertools
import math
import random
import re
import time
from dataclasses import dataclass
from typing import Literal

from .geometry import (
    Ambient,
    BoxFamily,
    DiscreteBox,
    GeometryError,
    verify_cover,
)

__all__ = [
    "CoverInstance",
    "SearchBudget",
    "SearchResult",
    "enumerate_candidates",
    "solve_cover",
    "anneal_cover",
    "export_model",
    "parse_lp_model",
]

CANDIDATE_SIDE_CAP = 9

Predicate = Literal[
    "odd_proper_box", "proper_box", "odd_proper_brick", "proper_brick"
]


@dataclass(frozen=True)
class CoverInstance:
    ambient: Ambient
    candidates: tuple[DiscreteBox, ...]
    multiplicity: int = 1
    mode: Literal["exact", "at_least"] = "exact"

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise GeometryError("multiplicity must be >= 1")
        if self.mode not in ("exact", "at_least"):
            raise GeometryError(f"unknown mode {self.mode!r}")
        for c in self.candidates:
            c.validate_in(self.ambient)


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10_000_000
    wall_seconds: float = 60.0
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.wall_seconds <= 0 or self.threads < 1:
            raise GeometryError("budget fields must be positive")


@dataclass(frozen=True)
class SearchResult:
    best: BoxFamily | None
    best_size: float
    proven_optimal: bool
    nodes: int
    elapsed: float


def enumerate_candidates(ambient: Ambient, predicate: Predicate) -> list[DiscreteBox]:
    """All boxes in the ambient whose every factor satisfies the predicate,
    in lexicographic order (per-axis factor tuples, leftmost axis slowest)."""
    if any(n > CANDIDATE_SIDE_CAP for n in ambient.sides):
        raise GeometryError(
            f"side exceeds enumeration cap {CANDIDATE_SIDE_CAP}"
        )
    want_odd = predicate.startswith("odd_")
    want_brick = predicate.endswith("brick")
    if predicate not in (
        "odd_proper_box", "proper_box", "odd_proper_brick", "proper_brick"
    ):
        raise GeometryError(f"unknown predicate {predicate!r}")

    per_axis: list[list[tuple[int, ...]]] = []
    for n in ambient.sides:
        factors = []
        if want_brick:
            subsets = (
                tuple(range(a, b + 1))
                for a in range(1, n + 1)
                for b in range(a, n + 1)
            )
        else:
            subsets = (
                c
                for size in range(1, n + 1)
                for c in itertools.combinations(range(1, n + 1), size)
            )
        for s in subsets:
            if len(s) == n:
                continue  # proper
            if want_odd and len(s) % 2 == 0:
                continue
            factors.append(s)
        factors.sort()
        per_axis.append(factors)
    return [
        DiscreteBox(combo) for combo in itertools.product(*per_axis)
    ]


def _point_index(ambient: Ambient):
    pts = list(itertools.product(*(range(1, n + 1) for n in ambient.sides)))
    return {p: i for i, p in enumerate(pts)}, pts


def _candidate_points(instance: CoverInstance, index):
    return [
        tuple(
            index[p] for p in itertools.product(*c.factors)
        )
        for c in instance.candidates
    ]


def solve_cover(instance: CoverInstance, budget: SearchBudget) -> SearchResult:
    """Complete branch-and-bound minimizing the number of chosen candidates.

    Branching: pick the deficit point with the fewest usable candidates and
    try each, banning a candidate after its branch (so subsets are explored
    once).  A candidate is usable when, in exact mode, it would not push any
    point above the multiplicity.  Pruning: chosen + ceil(remaining demand /
    largest candidate cardinality) must beat the incumbent.

    ``proven_optimal`` is true iff the tree was exhausted inside the budget;
    an infeasible instance yields best None, best_size infinity, proven.
    """
    index, points = _point_index(instance.ambient)
    cand_pts = _candidate_points(instance, index)
    n_pts = len(points)
    t = instance.multiplicity
    exact = instance.mode == "exact"
    covers_point: list[list[int]] = [[] for _ in range(n_pts)]
    for ci, pts in enumerate(cand_pts):
        for p in pts:
            covers_point[p].append(ci)
    max_card = max((len(p) for p in cand_pts), default=1)

    counts = [0] * n_pts
    banned = [False] * len(cand_pts)
    chosen: list[int] = []

    best_size: float = math.inf
    best_sel: list[int] | None = None
    nodes = 0
    start = time.monotonic()
    exhausted = True

    def out_of_budget() -> bool:
        return (
            nodes >= budget.max_nodes
            or time.monotonic() - start > budget.wall_seconds
        )

    def usable(ci: int) -> bool:
        if banned[ci]:
            return False
        if exact and any(counts[p] >= t for p in cand_pts[ci]):
            return False
        return True

    def dfs() -> None:
        nonlocal nodes, best_size, best_sel, exhausted
        nodes += 1
        if out_of_budget():
            exhausted = False
            return
        demand = sum(max(0, t - c) for c in counts)
        if demand == 0:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_sel = list(chosen)
            return
        if len(chosen) + math.ceil(demand / max_card) >= best_size:
            return
        # deficit point with fewest usable candidates
        pivot, options = -1, None
        for p in range(n_pts):
            if counts[p] < t:
                opts = [ci for ci in covers_point[p] if usable(ci)]
                if options is None or len(opts) < len(options):
                    pivot, options = p, opts
                    if not opts:
                        break
        if not options:
            return
        newly_banned = []
        for ci in options:
            # ban before descending: a candidate may be used at most once
            banned[ci] = True
            newly_banned.append(ci)
            chosen.append(ci)
            for p in cand_pts[ci]:
                counts[p] += 1
            dfs()
            for p in cand_pts[ci]:
                counts[p] -= 1
            chosen.pop()
            if not exhausted:
                break
        for ci in newly_banned:
            banned[ci] = False

    dfs()
    elapsed = time.monotonic() - start
    if best_sel is None:
        return SearchResult(None, math.inf, exhausted, nodes, elapsed)
    family = BoxFamily(
        instance.ambient, tuple(instance.candidates[ci] for ci in best_sel)
    )
    report = verify_cover(family, t, instance.mode)
    if not report.multiplicity_ok:
        raise GeometryError("internal error: search result failed verification")
    return SearchResult(family, float(best_size), exhausted, nodes, elapsed)


def anneal_cover(instance: CoverInstance, budget: SearchBudget) -> SearchResult:
    """Simulated annealing over subsets of the candidate pool.

    Two alternating move regimes share the step budget.  First, add/remove
    moves with energy (violation * weight + size) hunt for any feasible
    selection; violation is |count - t| per point in exact mode and the
    shortfall in at_least mode.  Once a feasible selection is known the
    annealer repeatedly drops one box and runs swap moves at the reduced
    size until the violation anneals back to zero, shrinking the incumbent
    one box at a time until the budget runs out.  Geometric cooling with
    reheating on stagnation.  The best feasible state is re-verified before
    being reported; ``proven_optimal`` is always false.
    """
    rng = random.Random(budget.seed)
    index, points = _point_index(instance.ambient)
    cand_pts = _candidate_points(instance, index)
    n_cand = len(cand_pts)
    t = instance.multiplicity
    exact = instance.mode == "exact"
    start = time.monotonic()
    steps = 0

    def out_of_budget() -> bool:
        return (
            steps >= budget.max_nodes
            or time.monotonic() - start > budget.wall_seconds
        )

    def point_violation(count: int) -> int:
        return abs(count - t) if exact else max(0, t - count)

    def find_feasible() -> list[int] | None:
        nonlocal steps
        counts = [0] * len(points)
        used = [False] * n_cand
        viol = t * len(points)
        weight, temp = 3, 1.0
        while not out_of_budget():
            steps += 1
            ci = rng.randrange(n_cand)
            sign = -1 if used[ci] else 1
            dv = sum(
                point_violation(counts[p] + sign) - point_violation(counts[p])
                for p in cand_pts[ci]
            )
            delta = weight * dv + sign
            if delta <= 0 or rng.random() < math.exp(-delta / max(temp, 1e-9)):
                for p in cand_pts[ci]:
                    counts[p] += sign
                used[ci] = not used[ci]
                viol += dv
                if viol == 0:
                    return [i for i in range(n_cand) if used[i]]
            temp *= 0.9995
            if temp < 0.02:
                temp = 1.0
        return None

    def shrink(selection: list[int]) -> list[int] | None:
        """Try to find a feasible selection one box smaller; swap moves at
        fixed size until the violation reaches zero or the budget ends."""
        nonlocal steps
        size = len(selection) - 1
        if size == 0:
            return None
        sel = selection.copy()
        rng.shuffle(sel)
        sel = sel[:size]
        used = [False] * n_cand
        counts = [0] * len(points)
        for ci in sel:
            used[ci] = True
            for p in cand_pts[ci]:
                counts[p] += 1
        viol = sum(point_violation(c) for c in counts)
        temp, stagnation = 1.0, 0
        while not out_of_budget():
            steps += 1
            slot = rng.randrange(size)
            ci_out, ci_in = sel[slot], rng.randrange(n_cand)
            if used[ci_in]:
                continue
            dv = 0
            for p in cand_pts[ci_out]:
                dv += point_violation(counts[p] - 1) - point_violation(counts[p])
                counts[p] -= 1
            for p in cand_pts[ci_in]:
                dv += point_violation(counts[p] + 1) - point_violation(counts[p])
                counts[p] += 1
            if dv <= 0 or rng.random() < math.exp(-dv / max(temp, 1e-9)):
                used[ci_out], used[ci_in] = False, True
                sel[slot] = ci_in
                viol += dv
                if viol == 0:
                    return sel
                stagnation = 0 if dv < 0 else stagnation + 1
            else:
                for p in cand_pts[ci_in]:
                    counts[p] -= 1
                for p in cand_pts[ci_out]:
                    counts[p] += 1
                stagnation += 1
            temp *= 0.9999
            if stagnation > 15_000:
                temp, stagnation = 1.0, 0
        return None

    best_feasible = find_feasible()
    while best_feasible is not None and not out_of_budget():
        smaller = shrink(best_feasible)
        if smaller is None:
            break
        best_feasible = smaller

    elapsed = time.monotonic() - start
    if best_feasible is None:
        return SearchResult(None, math.inf, False, steps, elapsed)
    best_size = len(best_feasible)
    family = BoxFamily(
        instance.ambient, tuple(instance.candidates[ci] for ci in best_feasible)
    )
    report = verify_cover(family, t, instance.mode)
    if not report.multiplicity_ok:
        raise GeometryError("internal error: annealer result failed verification")
    return SearchResult(family, float(best_size), False, steps, elapsed)


# ---------------------------------------------------------------------------
# model export

def export_model(instance: CoverInstance, format: Literal["lp", "cnf"]) -> str:
    """Emit the 0/1 program for the instance: one binary variable per
    candidate (in pool order), one constraint per ambient point."""
    index, points = _point_index(instance.ambient)
    cand_pts = _candidate_points(instance, index)
    covers_point: list[list[int]] = [[] for _ in points]
    for ci, pts in enumerate(cand_pts):
        for p in pts:
            covers_point[p].append(ci)

    if format == "lp":
        rel = "=" if instance.mode == "exact" else ">="
        lines = ["Minimize"]
        lines.append(
            " obj: " + " + ".join(f"x_{i + 1}" for i in range(len(cand_pts)))
        )
        lines.append("Subject To")
        for p, pt in enumerate(points):
            name = "p_" + "_".join(str(c) for c in pt)
            terms = " + ".join(f"x_{ci + 1}" for ci in covers_point[p])
            lines.append(f" {name}: {terms} {rel} {instance.multiplicity}")
        lines.append("Binary")
        lines.append(
            " " + " ".join(f"x_{i + 1}" for i in range(len(cand_pts)))
        )
        lines.append("End")
        return "\n".join(lines) + "\n"

    if format == "cnf":
        if instance.multiplicity != 1 or instance.mode != "exact":
            raise GeometryError(
                "cnf export supports only exact multiplicity 1 "
                "(no cardinality encoding is provided)"
            )
        clauses: list[list[int]] = []
        for p in range(len(points)):
            vs = [ci + 1 for ci in covers_point[p]]
            clauses.append(vs)  # at least one
            for a, b in itertools.combinations(vs, 2):  # at most one
                clauses.append([-a, -b])
        out = [f"p cnf {len(cand_pts)} {len(clauses)}"]
        out.extend(" ".join(str(v) for v in c) + " 0" for c in clauses)
        return "\n".join(out) + "\n"

    raise GeometryError(f"unknown format {format!r}")


_LP_ROW_RE = re.compile(r"^\s*p_([0-9_]+):\s*(.*?)\s*(>=|=)\s*(\d+)\s*$")


def parse_lp_model(text: str) -> CoverInstance:
    """Rebuild a CoverInstance from ``export_model(..., "lp")`` output.
    Each candidate is recovered as the product box of the points whose rows
    mention its variable."""
    rows: list[tuple[tuple[int, ...], list[int]]] = []
    rel = None
    t = None
    n_vars = 0
    for line in text.splitlines():
        m = _LP_ROW_RE.match(line)
        if not m:
            continue
        pt = tuple(int(c) for c in m.group(1).split("_"))
        vs = [
            int(v[2:]) for v in m.group(2).split(" + ") if v.startswith("x_")
        ]
        if rel is None:
            rel, t = m.group(3), int(m.group(4))
        elif (m.group(3), int(m.group(4))) != (rel, t):
            raise GeometryError("inconsistent constraint rows")
        n_vars = max(n_vars, *vs) if vs else n_vars
        rows.append((pt, vs))
    if not rows or t is None:
        raise GeometryError("no constraint rows found")
    dim = len(rows[0][0])
    sides = tuple(max(pt[a] for pt, _ in rows) for a in range(dim))
    var_points: list[list[tuple[int, ...]]] = [[] for _ in range(n_vars)]
    for pt, vs in rows:
        for v in vs:
            var_points[v - 1].append(pt)
    candidates = []
    for pts in var_points:
        factors = tuple(
            tuple(sorted({pt[a] for pt in pts})) for a in range(dim)
        )
        candidates.append(DiscreteBox(factors))
    return CoverInstance(
        Ambient(sides),
        tuple(candidates),
        multiplicity=t,
        mode="exact" if rel == "=" else "at_least",
    )
