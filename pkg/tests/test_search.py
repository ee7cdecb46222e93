import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxkit.bounds import lower_odd_proper
from boxkit.geometry import Ambient, DiscreteBox, GeometryError, verify_cover
from boxkit.search import (
    CoverInstance,
    SearchBudget,
    anneal_cover,
    enumerate_candidates,
    export_model,
    parse_lp_model,
    solve_cover,
)


def instance(sides, predicate, t=1, mode="exact"):
    amb = Ambient(tuple(sides))
    return CoverInstance(
        amb, tuple(enumerate_candidates(amb, predicate)), t, mode
    )


class TestEnumerate:
    def test_counts(self):
        assert len(enumerate_candidates(Ambient.cube(5, 1), "odd_proper_box")) == 15
        assert len(enumerate_candidates(Ambient.cube(5, 1), "odd_proper_brick")) == 8
        assert len(enumerate_candidates(Ambient.cube(3, 3), "odd_proper_box")) == 27
        assert len(enumerate_candidates(Ambient.cube(3, 3), "proper_box")) == 216

    def test_sorted_and_unique(self):
        cands = enumerate_candidates(Ambient.cube(4, 2), "proper_brick")
        keys = [c.factors for c in cands]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_cap(self):
        with pytest.raises(GeometryError):
            enumerate_candidates(Ambient.cube(10, 1), "proper_box")

    def test_unknown_predicate(self):
        with pytest.raises(GeometryError):
            enumerate_candidates(Ambient.cube(3, 1), "odd_box")


class TestSolveCover:
    def test_forced_singletons(self):
        r = solve_cover(instance((3, 3, 3), "odd_proper_box"), SearchBudget())
        assert r.best_size == 27 and r.proven_optimal

    def test_5_1_optimum(self):
        r = solve_cover(instance((5,), "odd_proper_brick"), SearchBudget())
        assert r.best_size == 3 and r.proven_optimal

    def test_5_2_optimum(self):
        r = solve_cover(instance((5, 5), "odd_proper_brick"), SearchBudget())
        assert r.best_size == 9 and r.proven_optimal
        rep = verify_cover(r.best)
        assert rep.is_partition and rep.all_odd and rep.all_proper

    def test_respects_parity_lower_bound(self):
        r = solve_cover(instance((5, 5), "odd_proper_brick"), SearchBudget())
        assert r.best_size >= lower_odd_proper(5, 2).value

    def test_infeasible(self):
        amb = Ambient.cube(2, 1)
        inst = CoverInstance(amb, (DiscreteBox.of([1]),))
        r = solve_cover(inst, SearchBudget())
        assert r.best is None and r.proven_optimal
        assert r.best_size == math.inf

    def test_budget_exhaustion_reported(self):
        r = solve_cover(
            instance((5, 5), "odd_proper_box"), SearchBudget(max_nodes=5)
        )
        assert not r.proven_optimal

    def test_double_cover_3_2(self):
        r = solve_cover(instance((3, 3), "proper_box", t=2), SearchBudget())
        assert r.best_size == 6 and r.proven_optimal  # frozen oracle value
        assert verify_cover(r.best, 2, "exact").multiplicity_ok

    def test_at_least_mode(self):
        r = solve_cover(
            instance((3, 3), "proper_box", t=2, mode="at_least"), SearchBudget()
        )
        assert r.proven_optimal
        assert verify_cover(r.best, 2, "at_least").multiplicity_ok
        assert r.best_size <= 6


def _brute_force_optimum(inst):
    points = list(itertools.product(*(range(1, n + 1) for n in inst.ambient.sides)))
    best = None
    for r in range(len(inst.candidates) + 1):
        for combo in itertools.combinations(range(len(inst.candidates)), r):
            counts = {p: 0 for p in points}
            for ci in combo:
                for p in itertools.product(*inst.candidates[ci].factors):
                    counts[p] += 1
            values = counts.values()
            if inst.mode == "exact":
                ok = all(v == inst.multiplicity for v in values)
            else:
                ok = all(v >= inst.multiplicity for v in values)
            if ok:
                return r
        if best is not None:
            return best
    return None


@st.composite
def tiny_instances(draw):
    d = draw(st.integers(1, 2))
    sides = tuple(draw(st.integers(2, 3)) for _ in range(d))
    amb = Ambient(sides)
    pool = enumerate_candidates(amb, "proper_box")
    idx = draw(
        st.sets(st.integers(0, len(pool) - 1), min_size=1, max_size=12)
    )
    t = draw(st.integers(1, 2))
    mode = draw(st.sampled_from(["exact", "at_least"]))
    return CoverInstance(amb, tuple(pool[i] for i in sorted(idx)), t, mode)


@given(tiny_instances())
@settings(max_examples=40, deadline=None)
def test_solver_agrees_with_brute_force(inst):
    r = solve_cover(inst, SearchBudget(wall_seconds=30))
    assert r.proven_optimal
    brute = _brute_force_optimum(inst)
    if brute is None:
        assert r.best is None
    else:
        assert r.best_size == brute


class TestAnneal:
    def test_finds_known_double_cover_optimum(self):
        r = anneal_cover(
            instance((3, 3), "proper_box", t=2),
            SearchBudget(max_nodes=200_000, wall_seconds=30, seed=1),
        )
        assert r.best_size == 6
        assert not r.proven_optimal
        assert verify_cover(r.best, 2, "exact").multiplicity_ok

    def test_deterministic_for_fixed_seed(self):
        budget = SearchBudget(max_nodes=50_000, wall_seconds=30, seed=9)
        r1 = anneal_cover(instance((3, 3), "proper_box", t=2), budget)
        r2 = anneal_cover(instance((3, 3), "proper_box", t=2), budget)
        assert r1.best == r2.best and r1.best_size == r2.best_size

    def test_partition_instance(self):
        r = anneal_cover(
            instance((3, 3), "proper_brick"),
            SearchBudget(max_nodes=100_000, wall_seconds=30, seed=0),
        )
        assert verify_cover(r.best).is_partition


class TestExport:
    def test_lp_shape(self):
        text = export_model(instance((3,), "odd_proper_box"), "lp")
        assert text.startswith("Minimize\n obj: x_1 + x_2 + x_3\n")
        assert text.endswith("Binary\n x_1 x_2 x_3\nEnd\n")
        assert text.count("p_") == 3

    def test_lp_row_and_var_counts(self):
        inst = instance((3, 3, 3), "proper_box", t=2)
        text = export_model(inst, "lp")
        assert text.count("p_") == 27
        assert text.count(" = 2") == 27
        assert f"x_{len(inst.candidates)}" in text

    def test_lp_round_trip(self):
        for inst in (
            instance((3,), "odd_proper_box"),
            instance((3, 3), "proper_box", t=2),
            instance((2, 2), "proper_box", t=1, mode="at_least"),
        ):
            assert parse_lp_model(export_model(inst, "lp")) == inst

    def test_cnf_counts(self):
        text = export_model(instance((3,), "odd_proper_box"), "cnf")
        header = text.splitlines()[0].split()
        assert header[:2] == ["p", "cnf"]
        assert int(header[2]) == 3

    def test_cnf_requires_t1_exact(self):
        with pytest.raises(GeometryError):
            export_model(instance((3, 3), "proper_box", t=2), "cnf")
        with pytest.raises(GeometryError):
            export_model(
                instance((3,), "odd_proper_box", mode="at_least"), "cnf"
            )

    def test_unknown_format(self):
        with pytest.raises(GeometryError):
            export_model(instance((3,), "odd_proper_box"), "mps")
