import json
import re
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spannerkit.geometry import (
    GeometricGraph,
    Point2,
    distance,
    exact_distance,
    format_scalar,
    graph_from_json,
    graph_to_json,
    is_plane_graph,
    is_plane_graph_bruteforce,
    orientation,
    points_from_json,
    proper_intersection,
    squared_distance,
    to_scalar,
)
from support import SQUARE, graphs, rational_point_st

P = Point2.of


class TestScalars:
    @pytest.mark.parametrize(
        "raw, expected",
        [(3, Fraction(3)), ("7/4", Fraction(7, 4)), ("-2.5", Fraction(-5, 2)), (0.5, Fraction(1, 2))],
    )
    def test_parse(self, raw, expected):
        assert to_scalar(raw) == expected

    @pytest.mark.parametrize("raw", ["abc", "1/0", None, [1]])
    def test_reject(self, raw):
        with pytest.raises((TypeError, ValueError)):
            to_scalar(raw)

    def test_format_roundtrip(self):
        for v in (Fraction(0), Fraction(5), Fraction(-3, 7), Fraction(308, 3)):
            assert to_scalar(format_scalar(v)) == v


class TestDistance:
    def test_pythagorean(self):
        assert distance(P(0, 0), P(3, 4)) == 5
        assert exact_distance(P(0, 0), P(3, 4)) == 5

    def test_identical(self):
        assert distance(P(2, 7), P(2, 7)) == 0

    def test_unit_diagonal(self):
        assert squared_distance(P(0, 0), P(1, 1)) == 2
        assert distance(P(0, 0), P(1, 1)) == pytest.approx(math.sqrt(2), rel=1e-15)
        assert exact_distance(P(0, 0), P(1, 1)) is None

    def test_rational_square(self):
        assert exact_distance(P(0, 0), P("1/2", "2/3")) == Fraction(5, 6)


class TestIntersection:
    def test_crossing_diagonals(self):
        assert proper_intersection(P(0, 0), P(2, 2), P(0, 2), P(2, 0))

    def test_shared_endpoint_only(self):
        assert not proper_intersection(P(0, 0), P(1, 0), P(1, 0), P(2, 1))

    def test_collinear_overlap(self):
        assert proper_intersection(P(0, 0), P(2, 0), P(1, 0), P(3, 0))

    def test_t_junction(self):
        assert proper_intersection(P(0, 0), P(2, 0), P(1, 0), P(1, 5))

    def test_disjoint_collinear(self):
        assert not proper_intersection(P(0, 0), P(1, 0), P(2, 0), P(3, 0))

    def test_collinear_touching_end_to_end(self):
        assert not proper_intersection(P(0, 0), P(1, 0), P(1, 0), P(3, 0))

    def test_degenerate_segment_rejected(self):
        with pytest.raises(ValueError):
            proper_intersection(P(0, 0), P(0, 0), P(1, 0), P(2, 0))

    def test_symmetry_random(self):
        rng = random.Random(11)
        for _ in range(10_000):
            pts = [P(Fraction(rng.randint(-6, 6), rng.randint(1, 3)), Fraction(rng.randint(-6, 6), rng.randint(1, 3))) for _ in range(4)]
            a, b, c, d = pts
            if a == b or c == d:
                continue
            r = proper_intersection(a, b, c, d)
            assert proper_intersection(c, d, a, b) == r
            assert proper_intersection(b, a, c, d) == r
            assert proper_intersection(a, b, d, c) == r
            assert proper_intersection(b, a, d, c) == r

    @given(rational_point_st, rational_point_st, rational_point_st)
    def test_orientation_antisymmetric(self, a, b, c):
        assert orientation(a, b, c) == -orientation(b, a, c)
        assert orientation(a, b, c) == orientation(b, c, a)


class TestPlanarity:
    def test_square_sides(self):
        g = GeometricGraph(SQUARE, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
        assert is_plane_graph(g)

    def test_square_diagonals(self):
        assert not is_plane_graph(GeometricGraph(SQUARE, frozenset({(0, 2), (1, 3)})))

    def test_edge_through_vertex(self):
        pts = (P(0, 0), P(1, 0), P(2, 0))
        assert not is_plane_graph(GeometricGraph(pts, frozenset({(0, 2)})))

    @settings(max_examples=300, deadline=None)
    @given(graphs(max_size=7))
    def test_matches_bruteforce(self, g):
        assert is_plane_graph(g) == is_plane_graph_bruteforce(g)

    def test_matches_bruteforce_on_crowded_grid(self):
        rng = random.Random(5)
        for _ in range(300):
            pts = sorted({(rng.randrange(4), rng.randrange(4)) for _ in range(7)})
            pts = tuple(P(x, y) for x, y in pts)
            n = len(pts)
            edges = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3}
            g = GeometricGraph(pts, frozenset(edges))
            assert is_plane_graph(g) == is_plane_graph_bruteforce(g)


class TestGraph:
    def test_edges_normalized(self):
        g = GeometricGraph(SQUARE, frozenset({(1, 0), (2, 1)}))
        assert g.sorted_edges() == [(0, 1), (1, 2)]

    @pytest.mark.parametrize("edge", [(0, 4), (-1, 2), (2, 2)])
    def test_bad_edges(self, edge):
        with pytest.raises(ValueError):
            GeometricGraph(SQUARE, frozenset({edge}))

    def test_complete(self):
        assert len(GeometricGraph.complete(SQUARE).edges) == 6

    def test_add_remove(self):
        g = GeometricGraph(SQUARE).add_edges([(2, 0)])
        assert g.edges == {(0, 2)}
        assert g.remove_edges([(2, 0)]).edges == frozenset()


class TestJson:
    def test_roundtrip_exact(self):
        g = GeometricGraph((P("1/3", 2), P(-5, "7/9"), P(0, 0)), frozenset({(0, 2), (1, 2)}))
        back = graph_from_json(json.loads(json.dumps(graph_to_json(g))))
        assert back == g

    @pytest.mark.parametrize(
        "data, field",
        [
            ({}, "points"),
            ({"points": [[0, 0], [1]]}, "points[1]"),
            ({"points": [[0, 0], ["x", 1]]}, "points[1]"),
            ({"points": [[0, 0], [1, 1]], "edges": [[0]]}, "edges[0]"),
            ({"points": [[0, 0], [1, 1]], "edges": [[0, 5]]}, "edges"),
        ],
    )
    def test_errors_name_field(self, data, field):
        with pytest.raises(ValueError, match=re.escape(field)):
            graph_from_json(data)

    def test_bare_list(self):
        assert points_from_json([[1, 2]]) == (P(1, 2),)
