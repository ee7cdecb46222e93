import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxkit.geometry import (
    Ambient,
    BoxFamily,
    DiscreteBox,
    GeometryError,
    IntermediatePartition,
    PiercingVector,
    boxes_disjoint,
    classify_box,
    piercing_number,
    verify_cover,
)


def box(*factors):
    return DiscreteBox.of(*factors)


class TestAmbient:
    def test_cube(self):
        a = Ambient.cube(5, 3)
        assert a.sides == (5, 5, 5)
        assert a.dim == 3
        assert a.volume == 125

    def test_rejects_small_sides(self):
        with pytest.raises(GeometryError):
            Ambient((5, 1))
        with pytest.raises(GeometryError):
            Ambient(())


class TestDiscreteBox:
    def test_factors_sorted_and_validated(self):
        b = box([3, 1], [2])
        assert b.factors == ((1, 3), (2,))
        assert b.cardinality == 2
        assert b.contains((3, 2))
        assert not b.contains((2, 2))

    def test_rejects_bad_factors(self):
        with pytest.raises(GeometryError):
            box([], [1])
        with pytest.raises(GeometryError):
            box([0], [1])
        with pytest.raises(GeometryError):
            DiscreteBox(((1, 1),))

    def test_validate_in(self):
        b = box([1, 5])
        b.validate_in(Ambient.cube(5, 1))
        with pytest.raises(GeometryError):
            b.validate_in(Ambient.cube(4, 1))
        with pytest.raises(GeometryError):
            b.validate_in(Ambient.cube(5, 2))


class TestClassify:
    def test_flags(self):
        amb = Ambient.cube(5, 2)
        f = classify_box(box([1, 3, 5], [2]), amb)
        assert f.proper and f.odd and not f.brick
        f = classify_box(box([1, 2, 3, 4, 5], [1, 2]), amb)
        assert not f.proper and not f.odd and f.brick

    def test_full_side_improper(self):
        amb = Ambient.cube(3, 1)
        assert not classify_box(box([1, 2, 3]), amb).proper


class TestDisjoint:
    def test_disjoint_on_one_axis_suffices(self):
        assert boxes_disjoint(box([1], [1, 2]), box([2], [1, 2]))
        assert not boxes_disjoint(box([1, 2], [1]), box([2, 3], [1, 2]))

    def test_dimension_mismatch(self):
        with pytest.raises(GeometryError):
            boxes_disjoint(box([1]), box([1], [1]))


class TestVerifyCover:
    def test_simple_partition(self):
        amb = Ambient.cube(2, 2)
        fam = BoxFamily(
            amb, (box([1], [1, 2]), box([2], [1]), box([2], [2]))
        )
        rep = verify_cover(fam)
        assert rep.is_partition
        assert rep.cover_multiplicity_min == rep.cover_multiplicity_max == 1
        assert rep.first_violation is None

    def test_gap_reported(self):
        amb = Ambient.cube(2, 2)
        fam = BoxFamily(amb, (box([1], [1, 2]), box([2], [2])))
        rep = verify_cover(fam)
        assert not rep.is_partition
        assert rep.first_violation == (2, 1)

    def test_overlap_reported(self):
        amb = Ambient.cube(2, 1)
        fam = BoxFamily(amb, (box([1, 2]), box([2])))
        rep = verify_cover(fam)
        assert not rep.multiplicity_ok
        assert rep.cover_multiplicity_max == 2

    def test_double_cover_modes(self):
        amb = Ambient.cube(2, 1)
        fam = BoxFamily(amb, (box([1, 2]), box([1, 2])))
        assert verify_cover(fam, 2, "exact").multiplicity_ok
        assert verify_cover(fam, 2, "at_least").multiplicity_ok
        assert not verify_cover(fam, 3, "at_least").multiplicity_ok

    def test_empty_family(self):
        rep = verify_cover(BoxFamily(Ambient.cube(3, 2), ()))
        assert not rep.is_partition
        assert rep.cover_multiplicity_max == 0

    def test_bad_arguments(self):
        fam = BoxFamily(Ambient.cube(2, 1), (box([1, 2]),))
        with pytest.raises(GeometryError):
            verify_cover(fam, 0)
        with pytest.raises(GeometryError):
            verify_cover(fam, 1, "sometimes")


class TestPiercing:
    def test_slabs(self):
        amb = Ambient.cube(3, 2)
        fam = BoxFamily(
            amb, tuple(box([i], [1, 2, 3]) for i in (1, 2, 3))
        )
        overall, per_axis = piercing_number(fam)
        assert per_axis == (3, 1)
        assert overall == 1

    def test_singletons(self):
        amb = Ambient.cube(2, 2)
        fam = BoxFamily(
            amb, tuple(box([x], [y]) for x in (1, 2) for y in (1, 2))
        )
        assert piercing_number(fam) == (2, (2, 2))


class TestIntermediatePartition:
    def test_requires_exact_tiling(self):
        amb = Ambient.cube(2, 1)
        with pytest.raises(GeometryError):
            IntermediatePartition(
                amb, ((box([1]), PiercingVector((1,))),)
            )

    def test_labels_positive_and_dimensioned(self):
        amb = Ambient.cube(2, 1)
        with pytest.raises(GeometryError):
            PiercingVector((0,))
        with pytest.raises(GeometryError):
            IntermediatePartition(
                amb,
                (
                    (box([1]), PiercingVector((1, 1))),
                    (box([2]), PiercingVector((1, 1))),
                ),
            )


# -- properties -------------------------------------------------------------

@st.composite
def grid_families(draw):
    """Random brick partitions from per-axis interval splits."""
    d = draw(st.integers(1, 3))
    sides, pieces = [], []
    for _ in range(d):
        cuts = draw(
            st.lists(st.integers(1, 3), min_size=1, max_size=3)
        )
        n = sum(cuts)
        sides.append(max(n, 2))
        segs, start = [], 1
        for c in cuts:
            segs.append(tuple(range(start, start + c)))
            start += c
        if n < 2:  # pad the single cell to fill the legal ambient
            segs[-1] = (1, 2)
        pieces.append(segs)
    amb = Ambient(tuple(sides))
    import itertools

    boxes = tuple(
        DiscreteBox(c) for c in itertools.product(*pieces)
    )
    return BoxFamily(amb, boxes)


@given(grid_families())
@settings(max_examples=60, deadline=None)
def test_grid_split_is_partition(fam):
    rep = verify_cover(fam)
    assert rep.is_partition
    assert rep.all_brick


@given(grid_families())
@settings(max_examples=60, deadline=None)
def test_pairwise_disjointness_matches_tensor(fam):
    import itertools

    for b1, b2 in itertools.combinations(fam.boxes, 2):
        assert boxes_disjoint(b1, b2)


@given(grid_families(), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_dropping_a_box_breaks_the_partition(fam, rng):
    if len(fam.boxes) < 2:
        return
    keep = list(fam.boxes)
    keep.pop(rng.randrange(len(keep)))
    assert not verify_cover(BoxFamily(fam.ambient, tuple(keep))).is_partition
