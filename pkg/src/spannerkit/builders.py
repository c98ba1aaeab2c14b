"""Baseline constructions: Euclidean MST and the path-greedy t-spanner."""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Sequence

from .geometry import GeometricGraph, Point2, distance, squared_distance
from .metrics import DEFAULT_TOL


def _check_points(points: Sequence[Point2]) -> None:
    if len(points) < 1:
        raise ValueError("need at least one point")
    if len(set(points)) != len(points):
        raise ValueError("duplicate points")


def sorted_pairs(points: Sequence[Point2]) -> list[tuple[int, int]]:
    """All index pairs ordered by (exact squared length, min index, max index)."""
    n = len(points)
    pairs = [(squared_distance(points[i], points[j]), i, j) for i in range(n) for j in range(i + 1, n)]
    pairs.sort()
    return [(i, j) for _, i, j in pairs]


class DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def euclidean_mst(points: Sequence[Point2]) -> GeometricGraph:
    """Kruskal over the complete graph with exact, deterministic edge order."""
    points = tuple(points)
    _check_points(points)
    dsu = DisjointSet(len(points))
    edges = []
    for i, j in sorted_pairs(points):
        if dsu.union(i, j):
            edges.append((i, j))
            if len(edges) == len(points) - 1:
                break
    return GeometricGraph(points, frozenset(edges))


def _bounded_distance(adj, src: int, dst: int, bound: float) -> float:
    """Shortest src-dst distance, or inf once every frontier entry exceeds ``bound``."""
    dist = {src: 0.0}
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if u == dst:
            return d
        if d > bound:
            return math.inf
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return math.inf


def path_greedy_spanner(points: Sequence[Point2], t, tol: float = DEFAULT_TOL) -> GeometricGraph:
    """Classic greedy spanner: scan pairs by increasing length and add (u, v)
    whenever the current graph distance exceeds t*|uv| (times 1 + tol)."""
    points = tuple(points)
    _check_points(points)
    t = float(Fraction(t)) if not isinstance(t, float) else t
    if t <= 1:
        raise ValueError("t must exceed 1")
    adj: list[list[tuple[int, float]]] = [[] for _ in points]
    edges = []
    for i, j in sorted_pairs(points):
        d = distance(points[i], points[j])
        limit = t * d * (1 + tol)
        if _bounded_distance(adj, i, j, limit) > limit:
            adj[i].append((j, d))
            adj[j].append((i, d))
            edges.append((i, j))
    return GeometricGraph(points, frozenset(edges))
