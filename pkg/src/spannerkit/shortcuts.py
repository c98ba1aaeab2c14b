"""t-shortcuts on three-point paths and numeric checks of the inequalities
that rank them.

A t-shortcut on the path p-s-q adds the edge pq and optionally drops ps or
sq, provided the three points stay t-spanned.  Its benefit is the drop in
the p-q distance, its cost the change in total weight, and its efficiency
the ratio of the two.

Lengths are handled exactly (as Fractions) whenever all three side lengths
of the triple are rational and ``t`` is rational; otherwise everything is
evaluated in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .geometry import Point2, distance, exact_distance, on_segment, orientation

REMOVALS = (None, "sq", "ps")  # tie-break order for the best shortcut

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class Triple:
    """The path p - s - q."""

    p: Point2
    s: Point2
    q: Point2

    def __post_init__(self):
        if len({self.p, self.s, self.q}) != 3:
            raise ValueError("triple needs three distinct points")


@dataclass(frozen=True)
class ShortcutReport:
    removes: str | None  # None, "ps" or "sq"; the edge pq is always added
    benefit: Real
    cost: Real
    efficiency: Real

    @property
    def adds(self) -> str:
        return "pq"


@dataclass(frozen=True)
class ShortcutAnalysis:
    shortcuts: tuple[ShortcutReport, ...]
    best: ShortcutReport


def _as_t(t):
    if isinstance(t, float):
        return t
    return Fraction(t)


def _within(lhs, rhs, exact: bool) -> bool:
    """lhs <= rhs, exactly or up to a relative float tolerance."""
    if exact:
        return lhs <= rhs
    return lhs <= rhs * (1 + FLOAT_TOL)


def shortcuts_from_lengths(ps, sq, pq, t, collinear_between: bool = False) -> ShortcutAnalysis:
    """Enumerate the legal t-shortcuts of a path given its three side lengths.

    Exact arithmetic is used when every argument is a Fraction/int.  Cost
    <= 0 gives efficiency ``inf``; such shortcuts never win ``best`` because
    adding pq alone is always legal with positive cost.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in (ps, sq, pq, t))
    if not exact:
        ps, sq, pq, t = float(ps), float(sq), float(pq), float(t)
    if t <= 1:
        raise ValueError("t must exceed 1")
    if min(ps, sq, pq) <= 0:
        raise ValueError("side lengths must be positive")

    benefit = 0 if collinear_between else ps + sq - pq
    if not exact and benefit < 0:
        benefit = 0.0  # float noise on a near-degenerate triple

    reports = []
    for removes in REMOVALS:
        if removes is None:
            cost = pq
        elif removes == "sq":
            # s-q must now go through p
            if not _within(ps + pq, t * sq, exact):
                continue
            cost = pq - sq
        else:
            if not _within(pq + sq, t * ps, exact):
                continue
            cost = pq - ps
        if cost > 0:
            eff = benefit / cost
        else:
            eff = math.inf
        reports.append(ShortcutReport(removes, benefit, cost, eff))

    finite = [r for r in reports if r.efficiency != math.inf] or reports
    best = finite[0]
    for r in finite[1:]:
        if r.efficiency > best.efficiency:
            best = r
    return ShortcutAnalysis(tuple(reports), best)


def triple_lengths(tri: Triple):
    """(|ps|, |sq|, |pq|) as Fractions when all rational, else floats."""
    pairs = ((tri.p, tri.s), (tri.s, tri.q), (tri.p, tri.q))
    exact = [exact_distance(a, b) for a, b in pairs]
    if all(v is not None for v in exact):
        return tuple(exact)
    return tuple(distance(a, b) for a, b in pairs)


def evaluate_shortcuts(tri: Triple, t) -> ShortcutAnalysis:
    t = _as_t(t)
    ps, sq, pq = triple_lengths(tri)
    between = orientation(tri.p, tri.q, tri.s) == 0 and on_segment(tri.p, tri.q, tri.s)
    return shortcuts_from_lengths(ps, sq, pq, t, collinear_between=between)


def best_efficiency(ps, sq, pq, t) -> float:
    return shortcuts_from_lengths(ps, sq, pq, t).best.efficiency


def triple_from_sides(ps_len: float, sq_len: float, angle: float) -> Triple:
    """Path with the given side lengths and angle psq (coordinates from floats)."""
    s = Point2(Fraction(0), Fraction(0))
    p = Point2(Fraction(ps_len), Fraction(0))
    q = Point2(Fraction(sq_len * math.cos(angle)), Fraction(sq_len * math.sin(angle)))
    return Triple(p, s, q)


# --- inequality verifiers -------------------------------------------------


@dataclass(frozen=True)
class IsoscelesCheck:
    e: float
    e_prime: float
    holds: bool


def verify_lemma_isosceles(angle1: float, angle2: float, t) -> IsoscelesCheck:
    """Two unit-leg isosceles paths with apex angles angle1 < angle2: the
    sharper one must have the strictly more efficient best shortcut.

    Only meaningful when the apex angles are at least pi/3 (base no shorter
    than the legs), otherwise side removals have non-positive cost.
    """
    if not 0 < angle1 < angle2 < math.pi:
        raise ValueError("need 0 < angle1 < angle2 < pi")
    c1 = 2 * math.sin(angle1 / 2)
    c2 = 2 * math.sin(angle2 / 2)
    e = best_efficiency(1.0, 1.0, c1, float(t))
    e2 = best_efficiency(1.0, 1.0, c2, float(t))
    return IsoscelesCheck(e, e2, e > e2)


@dataclass(frozen=True)
class ObtuseCheck:
    efficiency: float
    bound: float
    holds: bool


def verify_lemma_obtuse(tri: Triple, k: float, t, tol: float = 1e-9) -> ObtuseCheck:
    """Obtuse path with |ps| < |sq| and -cos(psq) >= 1/(k+1): best efficiency < k."""
    if k <= 0:
        raise ValueError("k must be positive")
    b = distance(tri.p, tri.s)
    a = distance(tri.s, tri.q)
    c = distance(tri.p, tri.q)
    if not b < a:
        raise ValueError("precondition |ps| < |sq| violated")
    dot = (tri.p.x - tri.s.x) * (tri.q.x - tri.s.x) + (tri.p.y - tri.s.y) * (tri.q.y - tri.s.y)
    if dot >= 0:
        raise ValueError("precondition angle(psq) > pi/2 violated")
    neg_cos = -float(dot) / (a * b)
    if neg_cos < (1 / (k + 1)) * (1 - tol):
        raise ValueError("precondition -cos(angle) >= 1/(k+1) violated")
    e = best_efficiency(b, a, c, float(t))
    return ObtuseCheck(e, k, e < k)


@dataclass(frozen=True)
class CollinearCheck:
    e_prime: float
    e: float
    holds: bool


def verify_corollary_collinear(x, d, q_offset, t) -> CollinearCheck:
    """Isosceles path r'-p'-s' (legs d, base x) against the obtuse path p-s-q
    with p-s parallel to p'-s', |ps| = d and q on the base line at distance
    ``q_offset`` beyond s.  The isosceles shortcut must be more efficient.

    The angle at s is pi - arccos(x / 2d), so |pq|^2 = d^2 + q_offset^2 +
    q_offset*x; all squared lengths stay rational for rational inputs.
    """
    x, d, q_offset = Fraction(x), Fraction(d), Fraction(q_offset)
    if x <= 0:
        raise ValueError("base x must be positive")
    if d <= x / 2:
        raise ValueError("legs must exceed half the base")
    if q_offset <= d:
        raise ValueError("need |sq| > |ps|")
    pq = math.sqrt(d * d + q_offset * q_offset + q_offset * x)
    e_prime = best_efficiency(d, d, x, Fraction(t) if not isinstance(t, float) else t)
    e = best_efficiency(float(d), float(q_offset), pq, float(t))
    return CollinearCheck(float(e_prime), e, float(e_prime) > e)


@dataclass(frozen=True)
class StretchCheck:
    lhs: float
    rhs: float
    closed_form: float
    holds: bool
    in_hypothesis: bool


def verify_triangle_stretch(gamma: float, beta: float) -> StretchCheck:
    """Isosceles p-s-q (unit legs, apex angle gamma) and q' on ray sq with
    angle(p q' q) = beta.  Compares (|ps|+|sq|)/|pq| with (|ps|+|sq'|)/|pq'|.

    By the law of sines the comparison reduces to
    ``2 cos(gamma/2) - sin(beta) - sin(beta - gamma) >= 0``, which is
    returned as ``closed_form``.  ``in_hypothesis`` records whether q' lies on
    the segment sq with |pq'| <= |pq|; outside it the values are still
    computed, just not covered by the statement being checked.
    """
    if not (0 < gamma < math.pi and 0 < beta < math.pi):
        raise ValueError("angles must lie in (0, pi)")
    if beta <= gamma:
        raise ValueError("configuration invalid: no q' on ray sq with that angle")
    sin_b = math.sin(beta)
    pq = 2 * math.sin(gamma / 2)
    sq_prime = math.sin(beta - gamma) / sin_b
    pq_prime = math.sin(gamma) / sin_b
    lhs = 2 / pq
    rhs = (1 + sq_prime) / pq_prime
    closed = 2 * math.cos(gamma / 2) - sin_b - math.sin(beta - gamma)
    in_hyp = sq_prime <= 1 + FLOAT_TOL and pq_prime <= pq * (1 + FLOAT_TOL)
    holds = lhs >= rhs * (1 - 1e-10) and closed >= -1e-12
    return StretchCheck(lhs, rhs, closed, holds, in_hyp)
