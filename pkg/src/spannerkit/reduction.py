"""PARTITION -> low-weight t-spanner instances.

Two constructions share one layout.  A horizontal component on the x-axis
runs from p' = (0, 0) to q' = (R(n+2), 0): n+1 segments of length R, each
split by a midpoint, with the base of an isosceles triangle gadget (length
x_i, apex above the axis) between consecutive segments.  Two sides hang
below p' and q' and are sampled every R/2; their bottom points are p and q.

* ``large_t`` (t >= 2): vertical sides of length (R/2)(t(n+2) - n - 7/3),
  gadget legs (5/6) x_i, apex height (2/3) x_i.  Every coordinate is rational.
* ``small_t`` (1 < t < 2): sides of length (R/2)(n + 3/2)(3t/2) tilted
  outwards by alpha_t with sin(alpha_t) = 2/(3t^2) + 1/(3t), gadget legs
  (t/2) x_i.  Irrational coordinates are rounded to a fixed number of decimals
  in the direction that keeps the p-q path short and |pq| long.

Points are stored in backbone order, so the minimum spanning path is the
chain of consecutive indices from p (index 0) to q (last index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import (
    GeometricGraph,
    Point2,
    format_scalar,
    is_plane_graph,
    points_from_json,
    points_to_json,
    to_scalar,
)
from .metrics import DEFAULT_TOL, dilation, exact_graph_weight, graph_weight
from .shortcuts import Triple, shortcuts_from_lengths

LARGE_T = "large_t"
SMALL_T = "small_t"
SIDE_REMOVAL_T = Fraction(11, 5)


@dataclass(frozen=True)
class PartitionInstance:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        if not vals:
            raise ValueError("PARTITION instance is empty")
        for v in vals:
            if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
                raise ValueError(f"elements must be positive integers, got {v!r}")
        if sum(vals) % 2:
            raise ValueError(f"sum R={sum(vals)} is odd")
        object.__setattr__(self, "values", vals)

    @property
    def R(self) -> int:
        return sum(self.values)

    @property
    def n(self) -> int:
        return len(self.values)

    def large_elements(self) -> list[int]:
        """Indices of elements >= R/2 (outside the reduction's standing assumption)."""
        return [i for i, v in enumerate(self.values) if 2 * v >= self.R]

    @classmethod
    def parse(cls, text: str) -> "PartitionInstance":
        """Whitespace- and/or comma-separated positive integers."""
        tokens = text.replace(",", " ").split()
        vals = []
        for tok in tokens:
            try:
                vals.append(int(tok))
            except ValueError:
                raise ValueError(f"not an integer: {tok!r}") from None
        return cls(tuple(vals))


@dataclass(frozen=True)
class GadgetMeta:
    value: int
    base_left: int
    base_right: int
    apex: int


@dataclass(frozen=True)
class HardnessInstance:
    points: tuple[Point2, ...]
    t: Fraction
    w: Fraction
    gadgets: tuple[GadgetMeta, ...]
    regime: str
    endpoints: dict = field(default_factory=dict)
    precision_digits: int | None = None
    # exact (pre-rounding) float coordinates of p and q; small_t only
    exact_pq: tuple[tuple[float, float], tuple[float, float]] | None = None

    @property
    def partition(self) -> PartitionInstance:
        return PartitionInstance(tuple(g.value for g in self.gadgets))

    @property
    def p(self) -> int:
        return self.endpoints["p"]

    @property
    def q(self) -> int:
        return self.endpoints["q"]


# --- helpers ---------------------------------------------------------------


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_sqrt(value: Fraction, scale: int) -> Fraction:
    """Largest multiple of 1/scale that is <= sqrt(value)."""
    if value < 0:
        raise ValueError("negative radicand")
    scaled = value * scale * scale
    return Fraction(math.isqrt(scaled.numerator // scaled.denominator), scale)


def _ceil_to(value: Fraction, scale: int) -> Fraction:
    return Fraction(_ceil(value * scale), scale)


def large_t_side_count(n: int, t: Fraction) -> int:
    return _ceil(t * (n + 2) - n - Fraction(7, 3))


def small_t_side_count(n: int, t: Fraction) -> int:
    return _ceil((n + Fraction(3, 2)) * Fraction(3, 2) * t)


def expected_point_count(n: int, t, regime: str) -> int:
    t = Fraction(t)
    k = large_t_side_count(n, t) if regime == LARGE_T else small_t_side_count(n, t)
    return 4 * n + 3 + 2 * k


def sin_alpha(t) -> Fraction:
    t = Fraction(t)
    return Fraction(2) / (3 * t * t) + 1 / (3 * t)


def regime_for(t) -> str:
    return LARGE_T if Fraction(t) >= 2 else SMALL_T


def _validate(X: PartitionInstance, strict: bool) -> None:
    big = X.large_elements()
    if strict and big:
        raise ValueError(
            f"elements at indices {big} are >= R/2 = {format_scalar(Fraction(X.R, 2))}; "
            "pass strict=False to build anyway"
        )


def _horizontal(X: PartitionInstance, apex_height) -> tuple[list[Point2], list[tuple[int, int, int, int]]]:
    """Points of the horizontal component in path order plus gadget (value, left, apex, right)
    positions relative to the returned list."""
    R = Fraction(X.R)
    pts: list[Point2] = []
    gadgets = []
    cursor = Fraction(0)
    pts.append(Point2(cursor, Fraction(0)))
    for k in range(X.n + 1):
        # the segment start is p' or the previous gadget's right base endpoint
        pts.append(Point2(cursor + R / 2, Fraction(0)))
        pts.append(Point2(cursor + R, Fraction(0)))
        if k == X.n:
            break
        x = X.values[k]
        left = len(pts) - 1
        pts.append(Point2(cursor + R + Fraction(x, 2), apex_height(x)))
        pts.append(Point2(cursor + R + x, Fraction(0)))
        gadgets.append((x, left, left + 1, left + 2))
        cursor += R + x
    return pts, gadgets


def _assemble(left_side, horizontal, right_side, gadgets, **kw) -> HardnessInstance:
    """Concatenate sides and horizontal component in backbone order."""
    left = list(reversed(left_side))  # bottom (p) first
    off = len(left)
    points = tuple(left + horizontal + list(right_side))
    metas = tuple(GadgetMeta(g[0], g[1] + off, g[3] + off, g[2] + off) for g in gadgets)
    endpoints = {"p": 0, "q": len(points) - 1, "p_prime": off, "q_prime": off + len(horizontal) - 1}
    return HardnessInstance(points=points, gadgets=metas, endpoints=endpoints, **kw)


# --- constructions ------------------------------------------------------


def build_large_t(X: PartitionInstance, t, strict: bool = True) -> HardnessInstance:
    """Rectangle construction for rational t >= 2."""
    t = to_scalar(t)
    if t < 2:
        raise ValueError("large_t construction needs t >= 2")
    _validate(X, strict)
    n, R = X.n, Fraction(X.R)
    horizontal, gadgets = _horizontal(X, lambda x: Fraction(2 * x, 3))
    width = R * (n + 2)
    side_len = R / 2 * (t * (n + 2) - n - Fraction(7, 3))
    m = large_t_side_count(n, t)
    depths = [min(k * R / 2, side_len) for k in range(1, m + 1)]
    left = [Point2(Fraction(0), -d) for d in depths]
    right = [Point2(width, -d) for d in depths]
    if t < SIDE_REMOVAL_T:
        w = R * (t * (n + 2) + Fraction(5, 6))
    else:
        w = R * (t * (n + 2) + Fraction(5, 12))
    return _assemble(left, horizontal, right, gadgets, t=t, w=w, regime=LARGE_T)


def _rounded_side(depths: Sequence[Fraction], s: Fraction, digits: int) -> list[tuple[Fraction, Fraction]]:
    """Offsets (outward, downward) of the rounded side samples.

    The outward offset is the exact d*sin(alpha) rounded up; the downward
    offset is then the largest decimal keeping every gap at most its exact
    value and every sample at an angle from the vertical of at least alpha.
    So sample distances from the corner never grow and the top angle never
    shrinks.
    """
    scale = 10**digits
    cot2 = (1 - s * s) / (s * s)
    out = []
    prev_x = prev_y = prev_d = Fraction(0)
    for d in depths:
        ax = _ceil_to(d * s, scale)
        gap = d - prev_d
        rem = gap * gap - (ax - prev_x) ** 2
        if rem < 0:
            raise ValueError(
                f"side gap {float(gap):.3g} is too short for {digits} decimals; raise precision_digits"
            )
        ay = min(prev_y + _floor_sqrt(rem, scale), _floor_sqrt(ax * ax * cot2, scale))
        out.append((ax, ay))
        prev_x, prev_y, prev_d = ax, ay, d
    return out


def build_small_t(X: PartitionInstance, t, precision_digits: int | None = None, strict: bool = True) -> HardnessInstance:
    """Trapezoid construction for rational 1 < t < 2."""
    t = to_scalar(t)
    if not 1 < t < 2:
        raise ValueError("small_t construction needs 1 < t < 2")
    _validate(X, strict)
    n, R = X.n, Fraction(X.R)
    digits = n if precision_digits is None else int(precision_digits)
    if digits < 1:
        raise ValueError("precision_digits must be positive")
    scale = 10**digits

    def apex_height(x):
        # (x/2) sqrt(t^2 - 1), rounded down
        return _floor_sqrt(Fraction(x * x, 4) * (t * t - 1), scale)

    horizontal, gadgets = _horizontal(X, apex_height)
    width = R * (n + 2)
    side_len = R / 2 * (n + Fraction(3, 2)) * Fraction(3, 2) * t
    m = small_t_side_count(n, t)
    depths = [min(k * R / 2, side_len) for k in range(1, m + 1)]
    s = sin_alpha(t)
    offsets = _rounded_side(depths, s, digits)
    left = [Point2(-ax, -ay) for ax, ay in offsets]
    right = [Point2(width + ax, -ay) for ax, ay in offsets]
    w = R * (n + t + Fraction(3, 2) + (n + Fraction(3, 2)) * Fraction(3, 2) * t)
    cos_a = math.sqrt(1 - float(s) ** 2)
    exact_p = (-float(side_len * s), -float(side_len) * cos_a)
    exact_q = (float(width + side_len * s), -float(side_len) * cos_a)
    return _assemble(
        left,
        horizontal,
        right,
        gadgets,
        t=t,
        w=w,
        regime=SMALL_T,
        precision_digits=digits,
        exact_pq=(exact_p, exact_q),
    )


def build_instance(X: PartitionInstance, t, precision_digits: int | None = None, strict: bool = True) -> HardnessInstance:
    if regime_for(t) == LARGE_T:
        return build_large_t(X, t, strict=strict)
    return build_small_t(X, t, precision_digits=precision_digits, strict=strict)


# --- graphs on an instance ------------------------------------------------


def backbone_path(inst: HardnessInstance) -> GeometricGraph:
    n = len(inst.points)
    return GeometricGraph(inst.points, frozenset((i, i + 1) for i in range(n - 1)))


def _check_subset(inst: HardnessInstance, subset: Iterable[int]) -> frozenset[int]:
    sub = frozenset(subset)
    bad = [i for i in sub if not 0 <= i < len(inst.gadgets)]
    if bad:
        raise ValueError(f"gadget indices out of range: {sorted(bad)}")
    return sub


def removes_gadget_side(inst: HardnessInstance) -> bool:
    return inst.regime == LARGE_T and inst.t >= SIDE_REMOVAL_T


def apply_gadget_shortcuts(inst: HardnessInstance, subset: Iterable[int]) -> GeometricGraph:
    """Backbone plus the bases of the chosen gadgets; for t >= 11/5 in the
    large_t regime the leg at the right base endpoint is dropped as well."""
    sub = _check_subset(inst, subset)
    g = backbone_path(inst)
    add = [(inst.gadgets[i].base_left, inst.gadgets[i].base_right) for i in sorted(sub)]
    g = g.add_edges(add)
    if removes_gadget_side(inst):
        g = g.remove_edges((inst.gadgets[i].apex, inst.gadgets[i].base_right) for i in sorted(sub))
    return g


def gadget_triple(inst: HardnessInstance, i: int) -> Triple:
    gm = inst.gadgets[i]
    return Triple(inst.points[gm.base_left], inst.points[gm.apex], inst.points[gm.base_right])


# --- budgets ------------------------------------------------------------


@dataclass(frozen=True)
class BudgetReport:
    backbone_weight: Fraction
    spanner_bound: Fraction  # t * |pq|
    required_shortening: Fraction
    remaining_weight: Fraction
    gadget_efficiency: Fraction
    # float measurements on the actual (possibly rounded) coordinates
    measured_backbone_weight: float
    measured_spanner_bound: float

    @property
    def balanced(self) -> bool:
        return self.required_shortening == self.gadget_efficiency * self.remaining_weight


def exact_gadget_lengths(inst: HardnessInstance, x) -> tuple[Fraction, Fraction]:
    """(leg, base) of the unrounded gadget for value x."""
    x = Fraction(x)
    leg = Fraction(5, 6) * x if inst.regime == LARGE_T else inst.t / 2 * x
    return leg, x


def budget_report(inst: HardnessInstance) -> BudgetReport:
    """Budget quantities from the unrounded construction parameters."""
    X = inst.partition
    n, R, t = X.n, Fraction(X.R), inst.t
    width = R * (n + 2)
    if inst.regime == LARGE_T:
        side = R / 2 * (t * (n + 2) - n - Fraction(7, 3))
        pq = width
    else:
        side = R / 2 * (n + Fraction(3, 2)) * Fraction(3, 2) * t
        pq = width + 2 * side * sin_alpha(t)
    legs = sum(2 * exact_gadget_lengths(inst, x)[0] for x in X.values)
    backbone = 2 * side + R * (n + 1) + legs
    bound = t * pq
    leg, base = exact_gadget_lengths(inst, X.values[0])
    eff = shortcuts_from_lengths(leg, leg, base, t).best.efficiency

    bb = backbone_path(inst)
    p, q = inst.points[inst.p], inst.points[inst.q]
    measured_bound = float(t) * math.hypot(float(p.x - q.x), float(p.y - q.y))
    return BudgetReport(
        backbone_weight=backbone,
        spanner_bound=bound,
        required_shortening=backbone - bound,
        remaining_weight=inst.w - backbone,
        gadget_efficiency=eff,
        measured_backbone_weight=graph_weight(bb),
        measured_spanner_bound=measured_bound,
    )


# --- forward direction --------------------------------------------------


@dataclass(frozen=True)
class ForwardReport:
    valid_subset: bool
    weight_ok: bool = False
    dilation_ok: bool = False
    plane_ok: bool = False
    achieved_weight: float = math.nan
    achieved_dilation: float = math.nan
    witness: tuple[int, int] | None = None
    exact_weight: Fraction | None = None
    marginal: bool = False  # dilation passed only thanks to the tolerance

    @property
    def ok(self) -> bool:
        return self.valid_subset and self.weight_ok and self.dilation_ok and self.plane_ok


def verify_forward(inst: HardnessInstance, subset: Iterable[int], tol: float = DEFAULT_TOL) -> ForwardReport:
    """Apply the gadget shortcuts of ``subset`` and check weight, dilation
    (by all-pairs brute force) and planarity."""
    sub = _check_subset(inst, subset)
    X = inst.partition
    if 2 * sum(X.values[i] for i in sub) != X.R:
        return ForwardReport(valid_subset=False)
    g = apply_gadget_shortcuts(inst, sub)
    exact_w = exact_graph_weight(g)
    weight = graph_weight(g)
    if exact_w is not None:
        weight_ok = exact_w <= inst.w
    else:
        weight_ok = weight <= float(inst.w) * (1 + tol)
    rep = dilation(g)
    t = float(inst.t)
    return ForwardReport(
        valid_subset=True,
        weight_ok=weight_ok,
        dilation_ok=rep.dilation <= t * (1 + tol),
        plane_ok=is_plane_graph(g),
        achieved_weight=weight,
        achieved_dilation=rep.dilation,
        witness=rep.witness,
        exact_weight=exact_w,
        marginal=t < rep.dilation <= t * (1 + tol),
    )


# --- PARTITION ----------------------------------------------------------


def solve_partition(X: PartitionInstance) -> tuple[int, ...] | None:
    """Lexicographically smallest index set summing to R/2, or None.

    ``reach[i]`` is a bitmask of the sums attainable from elements i..n-1;
    the witness is then read off greedily from the front.
    """
    vals = X.values
    half = X.R // 2
    mask = (1 << (half + 1)) - 1
    reach = [0] * (len(vals) + 1)
    reach[len(vals)] = 1
    for i in range(len(vals) - 1, -1, -1):
        reach[i] = (reach[i + 1] | (reach[i + 1] << vals[i])) & mask
    if not (reach[0] >> half) & 1:
        return None
    picked = []
    rest = half
    i = 0
    while rest:
        while not (vals[i] <= rest and (reach[i + 1] >> (rest - vals[i])) & 1):
            i += 1
        picked.append(i)
        rest -= vals[i]
        i += 1
    return tuple(picked)


# --- JSON ---------------------------------------------------------------


def instance_to_json(inst: HardnessInstance) -> dict:
    data = {
        "regime": inst.regime,
        "t": format_scalar(inst.t),
        "w": format_scalar(inst.w),
        "points": points_to_json(inst.points),
        "gadgets": [
            {"value": g.value, "base_left": g.base_left, "base_right": g.base_right, "apex": g.apex}
            for g in inst.gadgets
        ],
        "endpoints": dict(inst.endpoints),
    }
    if inst.precision_digits is not None:
        data["precision_digits"] = inst.precision_digits
    if inst.exact_pq is not None:
        data["exact_pq"] = [list(inst.exact_pq[0]), list(inst.exact_pq[1])]
    return data


def instance_from_json(data: dict) -> HardnessInstance:
    if not isinstance(data, dict):
        raise ValueError("instance JSON must be an object")
    for key in ("regime", "t", "w", "points", "gadgets", "endpoints"):
        if key not in data:
            raise ValueError(f"missing field {key!r}")
    regime = data["regime"]
    if regime not in (LARGE_T, SMALL_T):
        raise ValueError(f"field 'regime': unknown value {regime!r}")
    try:
        t = to_scalar(data["t"])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field 't': {exc}") from exc
    try:
        w = to_scalar(data["w"])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field 'w': {exc}") from exc
    points = points_from_json(data["points"])
    gadgets = []
    if not isinstance(data["gadgets"], list):
        raise ValueError("field 'gadgets' must be a list")
    for k, g in enumerate(data["gadgets"]):
        try:
            meta = GadgetMeta(int(g["value"]), int(g["base_left"]), int(g["base_right"]), int(g["apex"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"field 'gadgets[{k}]': {exc}") from exc
        for idx in (meta.base_left, meta.base_right, meta.apex):
            if not 0 <= idx < len(points):
                raise ValueError(f"field 'gadgets[{k}]': index {idx} out of range")
        gadgets.append(meta)
    ends = data["endpoints"]
    if not isinstance(ends, dict) or "p" not in ends or "q" not in ends:
        raise ValueError("field 'endpoints' needs 'p' and 'q'")
    exact_pq = data.get("exact_pq")
    if exact_pq is not None:
        exact_pq = (tuple(exact_pq[0]), tuple(exact_pq[1]))
    return HardnessInstance(
        points=points,
        t=t,
        w=w,
        gadgets=tuple(gadgets),
        regime=regime,
        endpoints={k: int(v) for k, v in ends.items()},
        precision_digits=data.get("precision_digits"),
        exact_pq=exact_pq,
    )
