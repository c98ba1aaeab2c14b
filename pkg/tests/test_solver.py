import math
import random
from fractions import Fraction

import pytest

from spannerkit.builders import euclidean_mst
from spannerkit.geometry import GeometricGraph, Point2, is_plane_graph
from spannerkit.metrics import graph_weight, is_t_spanner
from spannerkit.reduction import PartitionInstance, build_large_t, solve_partition
from spannerkit.solver import (
    BUDGET_EXCEEDED,
    EXHAUSTIVE,
    INFEASIBLE,
    OPTIMAL,
    SolverOptions,
    decide_lwst,
    min_dilation_under_budget,
    min_weight_plane_spanner,
    min_weight_spanner,
)
from support import SQUARE, random_points

P = Point2.of
EXH = SolverOptions(mode=EXHAUSTIVE)
EXH_PLANE = SolverOptions(mode=EXHAUSTIVE, require_plane=True)


class TestMinWeight:
    def test_collinear(self):
        res = min_weight_spanner((P(0, 0), P(1, 0), P(2, 0)), 2)
        assert res.status == OPTIMAL and res.edges == [(0, 1), (1, 2)]

    @pytest.mark.parametrize("t, weight", [(1.5, 4), (3, 3)])
    def test_square(self, t, weight):
        bb = min_weight_spanner(SQUARE, t)
        ex = min_weight_spanner(SQUARE, t, EXH)
        assert bb.weight == ex.weight == weight

    def test_square_tight(self):
        res = min_weight_spanner(SQUARE, 1.05)
        assert len(res.edges) == 6

    def test_huge_t_is_mst(self):
        rng = random.Random(12)
        for _ in range(10):
            pts = random_points(rng, rng.randint(3, 7))
            res = min_weight_spanner(pts, 10**9)
            assert res.weight == pytest.approx(graph_weight(euclidean_mst(pts)), rel=1e-12)

    def test_result_is_spanner(self):
        rng = random.Random(13)
        for _ in range(30):
            pts = random_points(rng, rng.randint(3, 6))
            t = rng.choice([1.2, 1.5, 2.0])
            res = min_weight_spanner(pts, t)
            assert is_t_spanner(res.graph, t)
            res = min_weight_plane_spanner(pts, t)
            if res.status == OPTIMAL:
                assert is_t_spanner(res.graph, t) and is_plane_graph(res.graph)

    def test_monotone_in_t(self):
        rng = random.Random(14)
        for _ in range(8):
            pts = random_points(rng, 6)
            weights = [min_weight_spanner(pts, t).weight for t in (1.1, 1.3, 1.6, 2.0, 2.5, 4.0)]
            assert all(a >= b * (1 - 1e-12) for a, b in zip(weights, weights[1:]))

    def test_threads_match(self):
        rng = random.Random(15)
        pts = random_points(rng, 7)
        one = min_weight_spanner(pts, 1.4)
        two = min_weight_spanner(pts, 1.4, SolverOptions(threads=2))
        assert one.weight == pytest.approx(two.weight, rel=1e-12)

    def test_budget_exceeded(self):
        rng = random.Random(16)
        pts = random_points(rng, 9)
        res = min_weight_spanner(pts, 1.3, SolverOptions(node_budget=5))
        assert res.status == BUDGET_EXCEEDED
        # any incumbent reported is still a valid spanner
        if res.graph is not None:
            assert is_t_spanner(res.graph, 1.3)

    @pytest.mark.parametrize("t", [1.0, 0.9])
    def test_bad_t(self, t):
        with pytest.raises(ValueError):
            min_weight_spanner(SQUARE, t)

    def test_max_edge_length_infeasible(self):
        res = min_weight_spanner(SQUARE, 1.05, SolverOptions(max_edge_length=1))
        assert res.status == INFEASIBLE and res.graph is None


class TestPlane:
    def test_square_loose(self):
        assert min_weight_plane_spanner(SQUARE, 3).weight == min_weight_spanner(SQUARE, 3).weight

    def test_square_tight(self):
        assert min_weight_plane_spanner(SQUARE, 1.05).status == INFEASIBLE
        assert min_weight_plane_spanner(SQUARE, 1.05, EXH).status == INFEASIBLE

    def test_triangle(self):
        pts = (P(0, 0), P(4, 0), P(1, 3))
        for t in (1.01, 1.5, 3):
            assert min_weight_plane_spanner(pts, t).weight == min_weight_spanner(pts, t).weight


class TestDecide:
    def test_below_mst(self):
        assert decide_lwst(SQUARE, 2, Fraction(29, 10)).answer is False

    def test_complete_weight(self):
        w = graph_weight(GeometricGraph.complete(SQUARE))
        assert decide_lwst(SQUARE, 1.01, w).answer is True

    def test_threshold(self):
        assert decide_lwst(SQUARE, 1.5, 4).answer is True
        assert decide_lwst(SQUARE, 1.5, Fraction(399, 100)).answer is False

    def test_monotone_in_w(self):
        rng = random.Random(17)
        for _ in range(6):
            pts = random_points(rng, 6)
            opt = min_weight_spanner(pts, 1.5).weight
            ws = [opt * f for f in (0.9, 0.99, 0.999999, 1.0, 1.001, 1.2)]
            answers = [decide_lwst(pts, 1.5, w).answer for w in ws]
            assert answers == sorted(answers)
            assert answers[3] is True and answers[1] is False

    def test_indeterminate(self):
        rng = random.Random(18)
        pts = random_points(rng, 10)
        opt_guess = graph_weight(euclidean_mst(pts)) * 1.05
        dec = decide_lwst(pts, 1.2, opt_guess, SolverOptions(node_budget=3))
        assert dec.status in ("indeterminate", "no")

    @pytest.mark.parametrize("vals", [(3, 3), (2, 4)])
    def test_reduction_instance(self, vals):
        X = PartitionInstance(vals)
        inst = build_large_t(X, 2, strict=False)
        dec = decide_lwst(inst.points, inst.t, inst.w, SolverOptions(max_edge_length=X.R))
        assert dec.answer == (solve_partition(X) is not None)


class TestMDG:
    def test_complete_budget(self):
        w = graph_weight(GeometricGraph.complete(SQUARE))
        assert min_dilation_under_budget(SQUARE, w).dilation == 1

    def test_mst_budget(self):
        rng = random.Random(19)
        for _ in range(5):
            pts = random_points(rng, 5)
            mst = euclidean_mst(pts)
            from spannerkit.metrics import dilation

            res = min_dilation_under_budget(pts, graph_weight(mst))
            assert res.dilation == pytest.approx(dilation(mst).dilation, rel=1e-12)

    def test_square_four_by_enumeration(self):
        from itertools import combinations

        from spannerkit.metrics import dilation

        pairs = list(combinations(range(4), 2))
        best = math.inf
        for r in range(3, 7):
            for sub in combinations(pairs, r):
                g = GeometricGraph(SQUARE, frozenset(sub))
                if graph_weight(g) <= 4 + 1e-12:
                    best = min(best, dilation(g).dilation)
        res = min_dilation_under_budget(SQUARE, 4)
        assert res.weight <= 4 + 1e-12
        assert res.dilation == pytest.approx(best, rel=1e-12)

    def test_bisection_path_agrees(self):
        rng = random.Random(20)
        pts = random_points(rng, 5)
        w = graph_weight(euclidean_mst(pts)) * 1.3
        exact = min_dilation_under_budget(pts, w)
        bis = min_dilation_under_budget(pts, w, exhaustive_max_points=0)
        assert bis.weight <= w * (1 + 1e-9)
        assert bis.dilation == pytest.approx(exact.dilation, rel=1e-5)

    def test_below_mst(self):
        assert min_dilation_under_budget(SQUARE, 2).status == INFEASIBLE

    def test_plane(self):
        w = graph_weight(GeometricGraph.complete(SQUARE))
        res = min_dilation_under_budget(SQUARE, w, SolverOptions(require_plane=True))
        assert is_plane_graph(res.graph) and res.dilation > 1


def test_exhaustive_guard():
    pts = tuple(P(i, i * i) for i in range(9))
    with pytest.raises(ValueError):
        min_weight_spanner(pts, 1.5, EXH)
