"""Exact planar points, segments and geometric graphs.

Coordinates are :class:`fractions.Fraction` values so that every predicate
(orientation, on-segment, crossing) is decided in integer arithmetic.  Metric
quantities that need a square root are returned as floats, with an exact
variant whenever the squared length happens to be a rational square.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Scalar = Fraction

__all__ = [
    "Scalar",
    "Point2",
    "GeometricGraph",
    "to_scalar",
    "format_scalar",
    "distance",
    "squared_distance",
    "exact_distance",
    "orientation",
    "on_segment",
    "proper_intersection",
    "is_plane_graph",
    "is_plane_graph_bruteforce",
    "points_to_json",
    "points_from_json",
    "graph_to_json",
    "graph_from_json",
]


def to_scalar(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions, floats (converted exactly), and strings in
    decimal (``"1.25"``, ``"-3e-2"``) or rational (``"7/3"``) notation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_scalar(value: Fraction) -> str:
    """Lossless string form: an integer or ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Point2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", to_scalar(self.x))
        object.__setattr__(self, "y", to_scalar(self.y))

    @classmethod
    def of(cls, x, y) -> "Point2":
        return cls(to_scalar(x), to_scalar(y))

    @property
    def xy(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Point2({format_scalar(self.x)}, {format_scalar(self.y)})"


def squared_distance(p: Point2, q: Point2) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def distance(p: Point2, q: Point2) -> float:
    # math.hypot on the float view is accurate to ~1 ulp
    return math.hypot(float(p.x - q.x), float(p.y - q.y))


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        raise ValueError("negative squared length")
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def exact_distance(p: Point2, q: Point2) -> Fraction | None:
    """|pq| as a Fraction when it is rational, else ``None``."""
    return _rational_sqrt(squared_distance(p, q))


def orientation(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear."""
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (cross > 0) - (cross < 0)


def on_segment(a: Point2, b: Point2, c: Point2) -> bool:
    """True iff c lies on the closed segment ab (c assumed collinear with a, b)."""
    return min(a.x, b.x) <= c.x <= max(a.x, b.x) and min(a.y, b.y) <= c.y <= max(a.y, b.y)


def proper_intersection(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    """Do segments ab and cd meet anywhere other than at a common endpoint?

    Crossings, T-junctions (an endpoint of one segment in the interior of the
    other) and collinear overlaps all count; two segments that only touch at a
    shared endpoint do not.
    """
    if a == b or c == d:
        raise ValueError("degenerate zero-length segment")
    if {a, b} == {c, d}:
        return True  # identical segments overlap along their whole length

    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)

    if o1 == o2 == o3 == o4 == 0:
        # collinear: overlap of positive length, or touching at one point
        if abs(b.x - a.x) >= abs(b.y - a.y):
            key = lambda p: p.x  # noqa: E731
        else:
            key = lambda p: p.y  # noqa: E731
        lo1, hi1 = sorted((key(a), key(b)))
        lo2, hi2 = sorted((key(c), key(d)))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo < hi:
            return True
        if lo > hi:
            return False
        # single touching point; fine only if it is a shared endpoint
        shared = {a, b} & {c, d}
        return not shared

    if o1 * o2 < 0 and o3 * o4 < 0:
        return True

    shared = {a, b} & {c, d}
    # an endpoint lying on the other segment, which is not a shared endpoint
    for p, s0, s1, o in ((c, a, b, o1), (d, a, b, o2), (a, c, d, o3), (b, c, d, o4)):
        if o == 0 and on_segment(s0, s1, p) and p not in shared:
            return True
    return False


@dataclass(frozen=True)
class GeometricGraph:
    """Points plus an undirected simple edge set; edge weights are Euclidean lengths."""

    points: tuple[Point2, ...]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point2) else Point2.of(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        n = len(pts)
        norm = set()
        for e in self.edges:
            i, j = e
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {e} references a missing point (n={n})")
            if i == j:
                raise ValueError(f"self-loop at {i}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def n(self) -> int:
        return len(self.points)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def edge_length(self, i: int, j: int) -> float:
        return distance(self.points[i], self.points[j])

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "GeometricGraph":
        return GeometricGraph(self.points, frozenset(edges))

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "GeometricGraph":
        return self.with_edges(set(self.edges) | {(min(e), max(e)) for e in edges})

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "GeometricGraph":
        drop = {(min(e), max(e)) for e in edges}
        return self.with_edges(set(self.edges) - drop)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for i, j in self.sorted_edges():
            w = self.edge_length(i, j)
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj

    @classmethod
    def complete(cls, points: Sequence[Point2]) -> "GeometricGraph":
        n = len(points)
        return cls(tuple(points), frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def _point_in_edge_interior(g: GeometricGraph, k: int, i: int, j: int) -> bool:
    a, b, c = g.points[i], g.points[j], g.points[k]
    return orientation(a, b, c) == 0 and on_segment(a, b, c) and c != a and c != b


def _bbox(p: Point2, q: Point2):
    return min(p.x, q.x), max(p.x, q.x), min(p.y, q.y), max(p.y, q.y)


def is_plane_graph(g: GeometricGraph) -> bool:
    """No two edges properly intersect and no vertex sits inside a non-incident edge.

    A sweep over x-extents prunes edge pairs whose bounding boxes are disjoint;
    every surviving pair is decided by :func:`proper_intersection`.
    """
    edges = g.sorted_edges()
    pts = g.points
    boxes = [_bbox(pts[i], pts[j]) for i, j in edges]
    order = sorted(range(len(edges)), key=lambda k: boxes[k][0])
    active: list[int] = []
    for k in order:
        x0 = boxes[k][0]
        active = [a for a in active if boxes[a][1] >= x0]
        i, j = edges[k]
        for a in active:
            bi, bj = edges[a]
            if boxes[a][3] < boxes[k][2] or boxes[k][3] < boxes[a][2]:
                continue
            if proper_intersection(pts[i], pts[j], pts[bi], pts[bj]):
                return False
        active.append(k)

    by_x = sorted(range(g.n), key=lambda v: pts[v].x)
    xs = [pts[v].x for v in by_x]
    from bisect import bisect_left, bisect_right

    for (i, j), (x0, x1, y0, y1) in zip(edges, boxes):
        for v in by_x[bisect_left(xs, x0) : bisect_right(xs, x1)]:
            if v in (i, j) or not (y0 <= pts[v].y <= y1):
                continue
            if _point_in_edge_interior(g, v, i, j):
                return False
    return True


def is_plane_graph_bruteforce(g: GeometricGraph) -> bool:
    """O(E^2 + E*V) reference check used as a test oracle."""
    edges = g.sorted_edges()
    pts = g.points
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            (i, j), (k, l) = edges[a], edges[b]
            if proper_intersection(pts[i], pts[j], pts[k], pts[l]):
                return False
    for i, j in edges:
        for v in range(g.n):
            if v not in (i, j) and _point_in_edge_interior(g, v, i, j):
                return False
    return True


# --- JSON ---------------------------------------------------------------


def points_to_json(points: Sequence[Point2]) -> list[list[str]]:
    return [[format_scalar(p.x), format_scalar(p.y)] for p in points]


def points_from_json(data) -> tuple[Point2, ...]:
    """Parse ``{"points": [[x, y], ...]}`` or a bare list of coordinate pairs."""
    if isinstance(data, dict):
        if "points" not in data:
            raise ValueError("missing field 'points'")
        data = data["points"]
    if not isinstance(data, list):
        raise ValueError("field 'points' must be a list")
    pts = []
    for k, item in enumerate(data):
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ValueError(f"points[{k}] must be a pair [x, y]")
        try:
            pts.append(Point2(to_scalar(item[0]), to_scalar(item[1])))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"points[{k}]: {exc}") from exc
    return tuple(pts)


def graph_to_json(g: GeometricGraph) -> dict:
    return {"points": points_to_json(g.points), "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(data) -> GeometricGraph:
    pts = points_from_json(data)
    raw = data.get("edges", []) if isinstance(data, dict) else []
    if not isinstance(raw, list):
        raise ValueError("field 'edges' must be a list")
    edges = []
    for k, e in enumerate(raw):
        if not isinstance(e, (list, tuple)) or len(e) != 2 or not all(isinstance(v, int) for v in e):
            raise ValueError(f"edges[{k}] must be a pair of point indices")
        edges.append(tuple(e))
    try:
        return GeometricGraph(pts, frozenset(edges))
    except ValueError as exc:
        raise ValueError(f"edges: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
