"""Seeded random sweeps over the shortcut inequalities.

Each sampler draws admissible inputs for one verifier and records the
inequality margin (positive means the inequality holds with room to spare).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .shortcuts import (
    triple_from_sides,
    verify_corollary_collinear,
    verify_lemma_isosceles,
    verify_lemma_obtuse,
    verify_triangle_stretch,
)

LEMMAS = ("isosceles", "obtuse", "collinear", "stretch")
DEFAULT_T_VALUES = (1.2, 1.5, 2.0, 3.0)


@dataclass
class SweepResult:
    lemma: str
    t: float
    samples: int = 0
    failures: int = 0
    min_margin: float = math.inf
    first_failure: tuple | None = None
    rows: list[tuple] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.failures == 0 and self.samples > 0


def _open_uniform(rng, lo, hi):
    # uniform on the open interval (lo, hi)
    while True:
        v = rng.uniform(lo, hi)
        if lo < v < hi:
            return v


def sample_isosceles(rng, t):
    # apex angles >= pi/3 keep every shortcut cost positive
    a1 = _open_uniform(rng, math.pi / 3, math.pi)
    a2 = _open_uniform(rng, a1, math.pi)
    res = verify_lemma_isosceles(a1, a2, t)
    return (a1, a2), res.e - res.e_prime, res.holds


def sample_obtuse(rng, t):
    b = rng.uniform(0.1, 10.0)
    a = b * _open_uniform(rng, 1.0, 10.0)
    angle = _open_uniform(rng, math.pi / 2 + 1e-6, math.pi - 1e-6)
    k = (1 / -math.cos(angle) - 1) * (1 + rng.uniform(1e-6, 2.0))
    tri = triple_from_sides(b, a, angle)
    res = verify_lemma_obtuse(tri, k, t)
    return (a, b, angle, k), res.bound - res.efficiency, res.holds


def sample_collinear(rng, t):
    x = rng.uniform(0.5, 50.0)
    d = x / 2 * _open_uniform(rng, 1.0, 20.0)
    q = d * _open_uniform(rng, 1.0, 10.0)
    res = verify_corollary_collinear(x, d, q, t)
    return (x, d, q), res.e_prime - res.e, res.holds


def sample_stretch(rng, t):
    gamma = _open_uniform(rng, 0.0, math.pi)
    lo = max(gamma, math.pi / 2 - gamma / 2)
    beta = _open_uniform(rng, lo, math.pi / 2 + gamma / 2)
    res = verify_triangle_stretch(gamma, beta)
    holds = res.holds and res.in_hypothesis
    return (gamma, beta), res.lhs - res.rhs, holds


SAMPLERS = {
    "isosceles": sample_isosceles,
    "obtuse": sample_obtuse,
    "collinear": sample_collinear,
    "stretch": sample_stretch,
}


def run_sweep(lemma: str, t: float, samples: int, seed: int, keep_rows: bool = False) -> SweepResult:
    rng = np.random.default_rng([seed, LEMMAS.index(lemma), int(round(t * 1000))])
    sampler = SAMPLERS[lemma]
    out = SweepResult(lemma, t)
    for _ in range(samples):
        params, margin, holds = sampler(rng, t)
        out.samples += 1
        out.min_margin = min(out.min_margin, margin)
        if not holds:
            out.failures += 1
            if out.first_failure is None:
                out.first_failure = params
        if keep_rows:
            out.rows.append((lemma, t, *params, margin, holds))
    return out


def run_lemma_suite(t_values=DEFAULT_T_VALUES, samples: int = 10_000, seed: int = 0, lemmas=LEMMAS, keep_rows=False):
    return [run_sweep(lemma, float(t), samples, seed, keep_rows) for lemma in lemmas for t in t_values]
