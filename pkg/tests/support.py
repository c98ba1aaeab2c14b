"""Shared generators and brute-force oracles for the tests."""

import itertools
import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from spannerkit.geometry import GeometricGraph, Point2
from spannerkit.metrics import graph_weight

SQUARE = (Point2.of(0, 0), Point2.of(1, 0), Point2.of(1, 1), Point2.of(0, 1))


def random_points(rng: random.Random, n: int, grid: int = 50) -> tuple[Point2, ...]:
    pts = set()
    while len(pts) < n:
        pts.add((rng.randrange(grid), rng.randrange(grid)))
    return tuple(Point2.of(x, y) for x, y in sorted(pts, key=lambda _: rng.random()))


def random_graph(rng: random.Random, pts, density: float = 0.4) -> GeometricGraph:
    n = len(pts)
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    return GeometricGraph(tuple(pts), frozenset(edges))


def connected(g: GeometricGraph) -> bool:
    adj = g.adjacency()
    seen, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def brute_mst_weight(pts) -> float:
    """Minimum over all (n-1)-edge subsets that connect the points."""
    n = len(pts)
    pairs = list(itertools.combinations(range(n), 2))
    best = math.inf
    for subset in itertools.combinations(pairs, n - 1):
        g = GeometricGraph(tuple(pts), frozenset(subset))
        if connected(g):
            best = min(best, graph_weight(g))
    return best


coords = st.integers(min_value=-20, max_value=20)
rational_coords = st.fractions(min_value=-10, max_value=10, max_denominator=7)
point_st = st.builds(Point2.of, coords, coords)
rational_point_st = st.builds(Point2.of, rational_coords, rational_coords)


@st.composite
def point_sets(draw, min_size=2, max_size=8):
    return tuple(draw(st.lists(point_st, min_size=min_size, max_size=max_size, unique=True)))


@st.composite
def graphs(draw, min_size=2, max_size=8):
    pts = draw(point_sets(min_size, max_size))
    pairs = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts))]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return GeometricGraph(pts, frozenset(edges))


REDUCTION_T = (Fraction(2), Fraction(5, 2), Fraction(3), Fraction(5, 4), Fraction(3, 2), Fraction(7, 4))


def reduction_suite(size: int = 50, seed: int = 20240601):
    """Fixed list of (PartitionInstance, t): n <= 6, x_i <= 20, every x_i < R/2.

    Cycles through both regimes; roughly half the instances have a partition.
    """
    from spannerkit.reduction import PartitionInstance, solve_partition

    rng = random.Random(seed)
    out = []
    while len(out) < size:
        n = rng.randint(2, 6)
        vals = [rng.randint(1, 20) for _ in range(n)]
        if sum(vals) % 2:
            vals[-1] += 1 if vals[-1] < 20 else -1
        X = PartitionInstance(tuple(vals))
        if X.large_elements():
            continue
        want_yes = len(out) % 2 == 0
        if (solve_partition(X) is not None) != want_yes:
            continue
        out.append((X, REDUCTION_T[len(out) % len(REDUCTION_T)]))
    return out
