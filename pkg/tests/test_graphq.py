import pytest

from boxkit.constructions import grid_partition, quadrant_construction
from boxkit.geometry import Ambient, BoxFamily, DiscreteBox, GeometryError
from boxkit.graphq import (
    TwoColoredGraph,
    clique_property_check,
    fig9_graph,
    partition_to_graph,
    prop43_lower,
)


class TestTwoColoredGraph:
    def test_rejects_doubly_colored_edges(self):
        with pytest.raises(GeometryError):
            TwoColoredGraph(
                2, (frozenset({(0, 1)}), frozenset({(0, 1)}))
            )

    def test_rejects_self_loops_and_range(self):
        with pytest.raises(GeometryError):
            TwoColoredGraph(2, (frozenset({(1, 1)}), frozenset()))
        with pytest.raises(GeometryError):
            TwoColoredGraph(2, (frozenset({(0, 5)}), frozenset()))

    def test_neighbors(self):
        g = TwoColoredGraph(3, (frozenset({(0, 1), (1, 2)}), frozenset()))
        assert g.neighbors(1, 0) == {0, 2}
        assert g.neighbors(1, 1) == set()


class TestReduction:
    def test_grid_graph(self):
        g = partition_to_graph(grid_partition(2, 3))
        # rows and columns each give triangles: 2 * 3 * C(3,2) edges
        assert g.vertex_count == 9
        assert len(g.colored_edges[0]) == 9
        assert len(g.colored_edges[1]) == 9
        assert not g.flagged_pairs
        assert clique_property_check(g, 3).holds

    def test_side_by_side_slabs_single_color(self):
        fam = BoxFamily(
            Ambient.cube(2, 2),
            (DiscreteBox.of([1], [1, 2]), DiscreteBox.of([2], [1, 2])),
        )
        g = partition_to_graph(fam)
        assert g.colored_edges[0] == frozenset()
        assert g.colored_edges[1] == frozenset({(0, 1)})

    def test_requires_2d_partition(self):
        with pytest.raises(GeometryError):
            partition_to_graph(grid_partition(3, 2))
        broken = BoxFamily(
            Ambient.cube(2, 2), (DiscreteBox.of([1], [1]),)
        )
        with pytest.raises(GeometryError):
            partition_to_graph(broken)

    @pytest.mark.parametrize("k", range(3, 9))
    def test_quadrant_reduction_sound(self, k):
        g = partition_to_graph(quadrant_construction(2, k))
        assert not g.flagged_pairs
        assert clique_property_check(g, k).holds


class TestCliqueCheck:
    def test_witnesses_returned(self):
        g = fig9_graph(4)
        report = clique_property_check(g, 4)
        assert report.holds
        for color in range(2):
            for v in range(g.vertex_count):
                w = report.witnesses[color][v]
                assert len(w) == 4 and v in w
                for a in w:
                    for b in w:
                        if a < b:
                            assert (a, b) in g.colored_edges[color]

    def test_missing_blue_side_fails(self):
        g = TwoColoredGraph(
            3,
            (frozenset({(0, 1), (0, 2), (1, 2)}), frozenset()),
        )
        report = clique_property_check(g, 3)
        assert not report.holds
        assert report.failing_color == 1

    def test_budget_error(self):
        g = fig9_graph(6)
        with pytest.raises(GeometryError, match="budget"):
            clique_property_check(g, 6, max_nodes=3)


class TestFig9:
    @pytest.mark.parametrize("k", range(3, 7))
    def test_size_and_property(self, k):
        g = fig9_graph(k)
        assert g.vertex_count == 4 * (k - 1)
        assert clique_property_check(g, k).holds

    @pytest.mark.parametrize("k", range(3, 7))
    def test_tight(self, k):
        assert not clique_property_check(fig9_graph(k), k + 1).holds

    def test_k2(self):
        g = fig9_graph(2)
        assert g.vertex_count == 4
        assert clique_property_check(g, 2).holds

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_many_colors(self, t):
        g = fig9_graph(3, colors=t)
        assert g.vertex_count == 2 * t * 2
        assert clique_property_check(g, 3).holds

    def test_errors(self):
        with pytest.raises(GeometryError):
            fig9_graph(1)
        with pytest.raises(GeometryError):
            fig9_graph(3, colors=1)


class TestProp43:
    def test_large_k_ratio(self):
        b = prop43_lower(10**4)
        assert b.value / 10**4 >= 3.5
        assert b.value <= 4 * (10**4 - 1) + 1

    @pytest.mark.parametrize("k", [3, 10, 100, 1000])
    def test_never_beats_construction(self, k):
        assert prop43_lower(k).value <= 4 * (k - 1) + 1

    def test_ratio_growing(self):
        ratios = [prop43_lower(k).value / k for k in (10, 100, 1000, 10**4)]
        assert all(a < b for a, b in zip(ratios, ratios[1:]))

    def test_small_k_rejected(self):
        with pytest.raises(GeometryError):
            prop43_lower(2)
