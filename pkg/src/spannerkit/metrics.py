"""Graph weight, shortest paths and dilation of geometric graphs."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import GeometricGraph, distance, exact_distance

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class DilationReport:
    dilation: float
    witness: tuple[int, int]


def graph_weight(g: GeometricGraph) -> float:
    # fsum keeps the float total independent of edge order
    return math.fsum(g.edge_length(i, j) for i, j in g.edges)


def exact_graph_weight(g: GeometricGraph) -> Fraction | None:
    """Total length as a Fraction, or None if some edge has irrational length."""
    total = Fraction(0)
    for i, j in g.edges:
        d = exact_distance(g.points[i], g.points[j])
        if d is None:
            return None
        total += d
    return total


def shortest_path_lengths(g: GeometricGraph, source: int) -> list[float]:
    """Dijkstra from ``source``; unreachable vertices get ``math.inf``."""
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range for {g.n} points")
    return _dijkstra(g.adjacency(), source)


def _dijkstra(adj, source: int) -> list[float]:
    dist = [math.inf] * len(adj)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _check_dilation_input(g: GeometricGraph) -> None:
    if g.n < 2:
        raise ValueError("dilation needs at least two points")
    if len(set(g.points)) != g.n:
        raise ValueError("duplicate points: dilation is undefined")


def dilation(g: GeometricGraph) -> DilationReport:
    """Maximum over point pairs of graph distance / Euclidean distance.

    Ties go to the lexicographically smallest (i, j).  A disconnected graph
    reports ``inf`` with the first disconnected pair as witness.
    """
    _check_dilation_input(g)
    adj = g.adjacency()
    best = -1.0
    witness = (0, 1)
    for i in range(g.n - 1):
        dist = _dijkstra(adj, i)
        pi = g.points[i]
        for j in range(i + 1, g.n):
            ratio = dist[j] / distance(pi, g.points[j])
            if ratio > best:
                best, witness = ratio, (i, j)
                if best == math.inf:
                    return DilationReport(math.inf, witness)
    return DilationReport(max(best, 1.0), witness)


def dilation_floyd_warshall(g: GeometricGraph) -> DilationReport:
    """All-pairs O(n^3) reference used to cross-check :func:`dilation`."""
    _check_dilation_input(g)
    n = g.n
    d = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0.0
    for i, j in g.edges:
        w = g.edge_length(i, j)
        d[i][j] = d[j][i] = min(d[i][j], w)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == math.inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    best, witness = -1.0, (0, 1)
    for i in range(n):
        for j in range(i + 1, n):
            r = d[i][j] / distance(g.points[i], g.points[j])
            if r > best:
                best, witness = r, (i, j)
    return DilationReport(max(best, 1.0), witness)


def is_t_spanner(g: GeometricGraph, t: float, tol: float = DEFAULT_TOL) -> bool:
    if t <= 1:
        raise ValueError("t must exceed 1")
    return dilation(g).dilation <= float(t) * (1 + tol)
