"""Acceptance gate: one test per criterion, each with its runtime cap.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import random
import time
from fractions import Fraction as F

import pytest

from spannerkit.builders import euclidean_mst, path_greedy_spanner
from spannerkit.lemmas import run_lemma_suite
from spannerkit.metrics import exact_graph_weight, graph_weight, is_t_spanner
from spannerkit.reduction import (
    LARGE_T,
    SIDE_REMOVAL_T,
    PartitionInstance,
    backbone_path,
    budget_report,
    build_instance,
    build_large_t,
    build_small_t,
    gadget_triple,
    solve_partition,
    verify_forward,
)
from spannerkit.shortcuts import evaluate_shortcuts
from spannerkit.solver import EXHAUSTIVE, INFEASIBLE, SolverOptions, decide_lwst, min_weight_spanner
from support import random_points, reduction_suite

acceptance = pytest.mark.acceptance


class Timer:
    def __init__(self, cap: float):
        self.cap = cap

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        print(f"elapsed {self.elapsed:.2f}s (cap {self.cap:g}s)")
        return False

    def check(self):
        assert self.elapsed < self.cap, f"took {self.elapsed:.2f}s, cap {self.cap}s"


@pytest.fixture(scope="module")
def suite():
    return [(X, t, build_instance(X, t)) for X, t in reduction_suite()]


@acceptance(1, "gadget efficiency is 2/3, 4 or t-1")
def test_gadget_efficiency():
    rng = random.Random(101)
    xs = [rng.randint(1, 100) for _ in range(100)]
    bad = []
    with Timer(1.0) as timer:
        for t in (F(2), F(21, 10), F(11, 5), F(3)):
            want = F(2, 3) if t < SIDE_REMOVAL_T else F(4)
            for x in xs:
                inst = build_large_t(PartitionInstance((x, x, x, x)), t)
                eff = evaluate_shortcuts(gadget_triple(inst, 0), t).best.efficiency
                if eff != want:
                    bad.append((x, t, eff))
        for t in (F(5, 4), F(3, 2), F(7, 4)):
            want = float(t - 1)
            for x in xs:
                inst = build_small_t(PartitionInstance((x, x, x, x)), t, precision_digits=20)
                eff = evaluate_shortcuts(gadget_triple(inst, 0), t).best.efficiency
                if abs(eff - want) > 1e-12 * want:
                    bad.append((x, t, eff))
    assert not bad, bad[:5]
    timer.check()


@acceptance(2, "budget identities on the 50-instance suite")
def test_budget_identities(suite):
    with Timer(1.0) as timer:
        for X, t, inst in suite:
            rep = budget_report(inst)
            R = F(X.R)
            if inst.regime == LARGE_T:
                assert rep.required_shortening == R / 3
                assert rep.remaining_weight == (R / 2 if t < SIDE_REMOVAL_T else R / 12)
                assert rep.gadget_efficiency == (F(2, 3) if t < SIDE_REMOVAL_T else 4)
            else:
                want = (t - 1) * R / 2
                assert abs(rep.required_shortening - want) <= F(1, 10**10) * want
                assert abs(rep.remaining_weight - R / 2) <= F(1, 10**10) * R / 2
                assert rep.gadget_efficiency == t - 1
            assert rep.balanced, (X.values, t)
    timer.check()


@acceptance(3, "backbone equals MST; large-t backbone weight R(t(n+2)+1/3)")
def test_backbone_is_mst(suite):
    with Timer(5.0) as timer:
        for X, t, inst in suite:
            bb = backbone_path(inst)
            assert euclidean_mst(inst.points).edges == bb.edges, (X.values, t)
            if inst.regime == LARGE_T:
                assert exact_graph_weight(bb) == X.R * (t * (X.n + 2) + F(1, 3))
    timer.check()


@acceptance(4, "forward direction: gadget shortcuts give a plane t-spanner within w")
def test_forward_direction(suite):
    checked = 0
    with Timer(60.0) as timer:
        for X, t, inst in suite:
            sub = solve_partition(X)
            if sub is None:
                continue
            rep = verify_forward(inst, sub, tol=1e-9)
            assert rep.weight_ok and rep.dilation_ok and rep.plane_ok, (X.values, t, rep)
            checked += 1
    print(f"{checked} instances with a partition verified")
    assert checked >= 20
    timer.check()


@acceptance(5, "reverse direction agrees with the PARTITION answer")
def test_reverse_direction():
    outcomes = []
    with Timer(600.0) as timer:
        for vals in ((3, 3), (2, 4), (1, 2, 3, 2)):
            X = PartitionInstance(vals)
            inst = build_large_t(X, 2, strict=False)
            opts = SolverOptions(max_edge_length=X.R, node_budget=10**8)
            dec = decide_lwst(inst.points, inst.t, inst.w, opts)
            expected = solve_partition(X) is not None
            print(f"X={vals}: decide={dec.status} partition={expected} nodes={dec.result.nodes}")
            outcomes.append((vals, dec.answer, expected))
    for vals, got, expected in outcomes:
        if got is None:
            assert vals == (1, 2, 3, 2), f"indeterminate on {vals}"
        else:
            assert got == expected, f"contradiction on {vals}"
    timer.check()


@acceptance(6, "lemma inequality sweeps hold on 10^4 samples per t")
def test_lemma_suites():
    with Timer(30.0) as timer:
        sweeps = run_lemma_suite(t_values=(1.2, 1.5, 2.0, 3.0), samples=10_000, seed=0)
    for s in sweeps:
        print(f"{s.lemma:<10} t={s.t:<4g} failures={s.failures} min_margin={s.min_margin:.3g}")
    failed = [(s.lemma, s.t, s.first_failure) for s in sweeps if not s.holds]
    assert not failed, failed
    timer.check()


@acceptance(7, "branch-and-bound matches exhaustive search, plane and non-plane")
def test_solver_equivalence():
    rng = random.Random(707)
    mismatches = []
    with Timer(120.0) as timer:
        for k in range(200):
            pts = random_points(rng, rng.randint(3, 6), grid=30)
            t = (1.5, 2.0, 3.0)[k % 3]
            for plane in (False, True):
                bb = min_weight_spanner(pts, t, SolverOptions(require_plane=plane))
                ex = min_weight_spanner(pts, t, SolverOptions(require_plane=plane, mode=EXHAUSTIVE))
                if bb.status == INFEASIBLE or ex.status == INFEASIBLE:
                    same = bb.status == ex.status
                else:
                    same = abs(bb.weight - ex.weight) <= 1e-9 * ex.weight
                if not same:
                    mismatches.append((pts, t, plane, bb.weight, ex.weight))
    assert not mismatches, mismatches[:3]
    timer.check()


@acceptance(8, "greedy output is a t-spanner; t=1e9 reproduces the MST")
def test_greedy():
    rng = random.Random(808)
    with Timer(120.0) as timer:
        for k in range(1000):
            pts = random_points(rng, rng.randint(2, 30), grid=1000)
            t = (1.1, 1.5, 2.0, 3.0)[k % 4]
            assert is_t_spanner(path_greedy_spanner(pts, t), t)
            g = path_greedy_spanner(pts, 10**9)
            mst = euclidean_mst(pts)
            assert g.edges == mst.edges and graph_weight(g) == graph_weight(mst)
    timer.check()
