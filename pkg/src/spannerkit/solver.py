"""Exact minimum-weight (plane) t-spanners and related searches on small point sets.

Two search modes share one candidate-edge model:

``branch_and_bound``
    Candidate edges are decided longest first (include / exclude).  A node is
    pruned when the included weight plus the cheapest way to connect the
    remaining components exceeds the incumbent, or when even the optimistic
    completion (every undecided edge present) violates the dilation bound.
    Once the included edges alone form a t-spanner the node is a leaf.
``exhaustive``
    Every subset of the candidate edges is scored in vectorised batches; used
    as an independent oracle for tiny inputs.

Among optimal edge sets the lexicographically smallest sorted edge list is
reported, so results do not depend on search order or worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .builders import DisjointSet, euclidean_mst, path_greedy_spanner
from .geometry import GeometricGraph, Point2, proper_intersection, squared_distance, to_scalar
from .metrics import DEFAULT_TOL, graph_weight

BRANCH_AND_BOUND = "branch_and_bound"
EXHAUSTIVE = "exhaustive"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget_exceeded"

_TIE = 1e-12  # relative slack when comparing float weights of candidate optima
_EXHAUSTIVE_MAX_EDGES = 24
_CHUNK = 1 << 13


@dataclass(frozen=True)
class SolverOptions:
    max_edge_length: Fraction | float | None = None
    require_plane: bool = False
    tol: float = DEFAULT_TOL
    node_budget: int = 10**7
    mode: str = BRANCH_AND_BOUND
    threads: int = 1

    def __post_init__(self):
        if self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.tol < 0:
            raise ValueError("tol must be non-negative")
        if self.mode not in (BRANCH_AND_BOUND, EXHAUSTIVE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class SolverResult:
    status: str
    graph: GeometricGraph | None
    weight: float
    dilation: float
    nodes: int

    @property
    def edges(self) -> list[tuple[int, int]]:
        return self.graph.sorted_edges() if self.graph is not None else []


# --- candidate model ----------------------------------------------------


@dataclass
class _Problem:
    points: tuple[Point2, ...]
    edges: list[tuple[int, int]]  # nonincreasing length, ties by index
    lengths: np.ndarray
    euclid: np.ndarray
    limit: np.ndarray  # t(1+tol)|uv| per pair
    conflicts: list[set[int]] | None


def _check_inputs(points: Sequence[Point2], t) -> tuple[tuple[Point2, ...], float]:
    points = tuple(points)
    if len(points) < 2:
        raise ValueError("need at least two points")
    if len(set(points)) != len(points):
        raise ValueError("duplicate points")
    t = float(to_scalar(t)) if not isinstance(t, float) else t
    if t <= 1:
        raise ValueError("t must exceed 1")
    return points, t


def _passes_through_point(points, i, j) -> bool:
    from .geometry import on_segment, orientation

    a, b = points[i], points[j]
    return any(
        k not in (i, j) and orientation(a, b, c) == 0 and on_segment(a, b, c)
        for k, c in enumerate(points)
    )


def _build_problem(points, t: float, opts: SolverOptions) -> _Problem:
    n = len(points)
    cap2 = None
    if opts.max_edge_length is not None:
        cap = opts.max_edge_length
        cap2 = to_scalar(cap) ** 2 if not isinstance(cap, float) else Fraction(cap) ** 2
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            d2 = squared_distance(points[i], points[j])
            if cap2 is not None and d2 > cap2:
                continue
            if opts.require_plane and _passes_through_point(points, i, j):
                continue
            pairs.append((-d2, i, j))
    pairs.sort()
    edges = [(i, j) for _, i, j in pairs]
    xy = np.array([p.xy for p in points], dtype=float)
    euclid = np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])
    lengths = np.array([euclid[i, j] for i, j in edges], dtype=float)
    conflicts = None
    if opts.require_plane:
        conflicts = [set() for _ in edges]
        for a in range(len(edges)):
            i, j = edges[a]
            for b in range(a + 1, len(edges)):
                k, l = edges[b]
                if proper_intersection(points[i], points[j], points[k], points[l]):
                    conflicts[a].add(b)
                    conflicts[b].add(a)
    return _Problem(points, edges, lengths, euclid, t * (1 + opts.tol) * euclid, conflicts)


def _apsp(n: int, edges, lengths, active) -> np.ndarray:
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for k, on in enumerate(active):
        if on:
            i, j = edges[k]
            d[i, j] = d[j, i] = lengths[k]
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def _better(weight, edges, best_weight, best_edges) -> bool:
    if best_edges is None:
        return True
    slack = _TIE * max(1.0, abs(best_weight))
    if weight < best_weight - slack:
        return True
    return abs(weight - best_weight) <= slack and edges < best_edges


# --- branch and bound ---------------------------------------------------


class _BudgetExhausted(Exception):
    pass


class _Search:
    def __init__(self, prob: _Problem, node_budget: int, weight_cap: float | None, first_hit: bool):
        self.prob = prob
        self.n = len(prob.points)
        self.m = len(prob.edges)
        self.budget = node_budget
        self.nodes = 0
        self.weight_cap = weight_cap  # only solutions at or under this weight are of interest
        self.first_hit = first_hit  # stop at the first solution (decision mode)
        self.best_weight = math.inf
        self.best_edges: list[tuple[int, int]] | None = None
        self.exceeded = False
        self.state = [0] * self.m  # 0 undecided, 1 included, -1 excluded

    def seed(self, weight: float, edges: list[tuple[int, int]]):
        if _better(weight, edges, self.best_weight, self.best_edges):
            self.best_weight, self.best_edges = weight, edges

    def _cutoff(self) -> float:
        cut = self.best_weight
        if self.weight_cap is not None:
            cut = min(cut, self.weight_cap)
        return cut + _TIE * max(1.0, abs(cut)) if cut < math.inf else math.inf

    def _completion(self, k: int) -> float:
        """Kruskal over undecided edges on the components of the included ones."""
        dsu = DisjointSet(self.n)
        comps = self.n
        edges, state = self.prob.edges, self.state
        for e in range(self.m):
            if state[e] == 1:
                i, j = edges[e]
                if dsu.union(i, j):
                    comps -= 1
        extra = 0.0
        for e in range(self.m - 1, k - 1, -1):  # undecided edges, shortest first
            if comps == 1:
                break
            i, j = edges[e]
            if dsu.union(i, j):
                comps -= 1
                extra += self.prob.lengths[e]
        return extra if comps == 1 else math.inf

    def _record(self, weight: float):
        edges = sorted(self.prob.edges[e] for e in range(self.m) if self.state[e] == 1)
        if self.weight_cap is not None and weight > self.weight_cap * (1 + _TIE):
            return
        if _better(weight, edges, self.best_weight, self.best_edges):
            self.best_weight, self.best_edges = weight, edges

    def run(self, k: int, weight: float, d_inc: np.ndarray, d_opt: np.ndarray) -> bool:
        """Explore the subtree where edges [0, k) are decided.  Returns True to stop."""
        self.nodes += 1
        if self.nodes > self.budget:
            self.exceeded = True
            raise _BudgetExhausted
        prob = self.prob
        if weight + self._completion(k) > self._cutoff():
            return False
        if (d_inc <= prob.limit).all():
            self._record(weight)
            return self.first_hit and self.best_edges is not None
        if k == self.m:
            return False

        u, v = prob.edges[k]
        length = prob.lengths[k]

        # exclude: the optimistic graph loses (u, v)
        self.state[k] = -1
        child_opt = d_opt
        if d_opt[u, v] >= length * (1 - 1e-12):
            child_opt = _apsp(self.n, prob.edges, prob.lengths, [s >= 0 for s in self.state])
        if (child_opt <= prob.limit).all():
            if self.run(k + 1, weight, d_inc, child_opt):
                return True

        # include, unless an equally short u-v path already exists or it crosses
        self.state[k] = 1
        useful = d_inc[u, v] > length * (1 + 1e-12)
        plane_ok = prob.conflicts is None or not any(self.state[b] == 1 for b in prob.conflicts[k])
        if useful and plane_ok:
            child_inc = np.minimum(d_inc, d_inc[:, u, None] + length + d_inc[None, v, :])
            np.minimum(child_inc, d_inc[:, v, None] + length + d_inc[None, u, :], out=child_inc)
            if self.run(k + 1, weight + length, child_inc, d_opt):
                return True
        self.state[k] = 0
        return False


def _initial_matrices(prob: _Problem, state):
    n = len(prob.points)
    d_inc = _apsp(n, prob.edges, prob.lengths, [s == 1 for s in state])
    d_opt = _apsp(n, prob.edges, prob.lengths, [s >= 0 for s in state])
    return d_inc, d_opt


def _greedy_seed(prob: _Problem, t: float, opts: SolverOptions):
    greedy = path_greedy_spanner(prob.points, t, tol=opts.tol)
    index = {e: k for k, e in enumerate(prob.edges)}
    if any(e not in index for e in greedy.edges):
        return None
    if prob.conflicts is not None:
        ids = [index[e] for e in greedy.edges]
        if any(b in prob.conflicts[a] for a in ids for b in ids):
            return None
    return graph_weight(greedy), greedy.sorted_edges()


def _run_subtree(args):
    prob, prefix, budget, cap, first_hit, seed = args
    search = _Search(prob, budget, cap, first_hit)
    if seed is not None:
        search.seed(*seed)
    weight = 0.0
    for k, s in enumerate(prefix):
        search.state[k] = s
        if s == 1:
            weight += prob.lengths[k]
    d_inc, d_opt = _initial_matrices(prob, search.state)
    if (d_opt <= prob.limit).all():
        try:
            search.run(len(prefix), weight, d_inc, d_opt)
        except _BudgetExhausted:
            pass
    return search.best_weight, search.best_edges, search.nodes, search.exceeded


def _prefixes(depth: int):
    out = [[]]
    for _ in range(depth):
        out = [p + [s] for p in out for s in (-1, 1)]
    return out


def _branch_and_bound(prob: _Problem, t: float, opts: SolverOptions, cap: float | None, first_hit: bool):
    seed = _greedy_seed(prob, t, opts)
    if seed is not None and cap is not None and seed[0] > cap * (1 + _TIE):
        seed_for_search = None
    else:
        seed_for_search = seed
    if first_hit and seed_for_search is not None:
        return seed_for_search[0], seed_for_search[1], 0, False

    depth = 0
    if opts.threads > 1:
        depth = min(len(prob.edges), max(1, math.ceil(math.log2(opts.threads)) + 1))
    prefixes = _prefixes(depth)
    per_budget = max(1, opts.node_budget // len(prefixes))
    jobs = [(prob, p, per_budget, cap, first_hit, seed_for_search) for p in prefixes]
    if len(jobs) == 1:
        results = [_run_subtree(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=min(opts.threads, os.cpu_count() or 1)) as pool:
            results = list(pool.map(_run_subtree, jobs))

    best_w, best_e, nodes, exceeded = math.inf, None, 0, False
    for w, e, k, ex in results:
        nodes += k
        exceeded = exceeded or ex
        if e is not None and _better(w, e, best_w, best_e):
            best_w, best_e = w, e
    return best_w, best_e, nodes, exceeded


# --- exhaustive oracle --------------------------------------------------


def _subset_masks(m: int, start: int, stop: int) -> np.ndarray:
    ids = np.arange(start, stop, dtype=np.int64)
    return ((ids[:, None] >> np.arange(m, dtype=np.int64)[None, :]) & 1).astype(bool)


def _batched_apsp(n: int, edges, lengths, masks: np.ndarray) -> np.ndarray:
    b = masks.shape[0]
    d = np.full((b, n, n), np.inf)
    idx = np.arange(n)
    d[:, idx, idx] = 0.0
    for k, (i, j) in enumerate(edges):
        val = np.where(masks[:, k], lengths[k], np.inf)
        d[:, i, j] = np.minimum(d[:, i, j], val)
        d[:, j, i] = d[:, i, j]
    for k in range(n):
        np.minimum(d, d[:, :, k, None] + d[:, None, k, :], out=d)
    return d


def _exhaustive_scan(prob: _Problem, select):
    """Feed every edge subset, in batches, to ``select(masks, weights, apsp)``."""
    m = len(prob.edges)
    if m > _EXHAUSTIVE_MAX_EDGES:
        raise ValueError(f"exhaustive mode limited to {_EXHAUSTIVE_MAX_EDGES} candidate edges (got {m})")
    n = len(prob.points)
    conflict_pairs = []
    if prob.conflicts is not None:
        conflict_pairs = [(a, b) for a in range(m) for b in prob.conflicts[a] if a < b]
    total = 1 << m
    for start in range(0, total, _CHUNK):
        masks = _subset_masks(m, start, min(total, start + _CHUNK))
        for a, b in conflict_pairs:
            masks = masks[~(masks[:, a] & masks[:, b])]
        if not len(masks):
            continue
        weights = masks.astype(float) @ prob.lengths
        select(masks, weights, _batched_apsp(n, prob.edges, prob.lengths, masks))
    return total


def _edges_of(prob: _Problem, mask) -> list[tuple[int, int]]:
    return sorted(prob.edges[k] for k in np.flatnonzero(mask))


def _exhaustive_min_weight(prob: _Problem):
    best = {"w": math.inf, "e": None}

    def select(masks, weights, d):
        ok = (d <= prob.limit[None]).all(axis=(1, 2))
        if not ok.any():
            return
        w = weights[ok]
        cand = masks[ok]
        lo = w.min()
        slack = _TIE * max(1.0, abs(min(lo, best["w"])))
        for k in np.flatnonzero(w <= lo + slack):
            edges = _edges_of(prob, cand[k])
            if _better(float(w[k]), edges, best["w"], best["e"]):
                best["w"], best["e"] = float(w[k]), edges

    count = _exhaustive_scan(prob, select)
    return best["w"], best["e"], count


# --- public API ---------------------------------------------------------


def _graph_dilation(prob: _Problem, edges) -> float:
    index = {e: k for k, e in enumerate(prob.edges)}
    active = [False] * len(prob.edges)
    for e in edges:
        active[index[e]] = True
    d = _apsp(len(prob.points), prob.edges, prob.lengths, active)
    off = ~np.eye(len(prob.points), dtype=bool)
    return float((d[off] / prob.euclid[off]).max())


def _result(prob, best_w, best_e, nodes, exceeded) -> SolverResult:
    if best_e is None:
        status = BUDGET_EXCEEDED if exceeded else INFEASIBLE
        return SolverResult(status, None, math.inf, math.inf, nodes)
    graph = GeometricGraph(prob.points, frozenset(best_e))
    status = BUDGET_EXCEEDED if exceeded else OPTIMAL
    return SolverResult(status, graph, graph_weight(graph), _graph_dilation(prob, best_e), nodes)


def min_weight_spanner(points: Sequence[Point2], t, opts: SolverOptions | None = None) -> SolverResult:
    """Minimum total length t-spanner over the candidate edges.

    ``budget_exceeded`` carries the best incumbent found (if any); its graph
    is feasible but not proven optimal.
    """
    opts = opts or SolverOptions()
    points, t = _check_inputs(points, t)
    prob = _build_problem(points, t, opts)
    if opts.mode == EXHAUSTIVE:
        w, e, count = _exhaustive_min_weight(prob)
        return _result(prob, w, e, count, False)
    w, e, nodes, exceeded = _branch_and_bound(prob, t, opts, None, False)
    return _result(prob, w, e, nodes, exceeded)


def min_weight_plane_spanner(points: Sequence[Point2], t, opts: SolverOptions | None = None) -> SolverResult:
    opts = replace(opts or SolverOptions(), require_plane=True)
    return min_weight_spanner(points, t, opts)


@dataclass(frozen=True)
class Decision:
    answer: bool | None  # None means indeterminate (node budget hit)
    result: SolverResult

    @property
    def status(self) -> str:
        if self.answer is None:
            return "indeterminate"
        return "yes" if self.answer else "no"


def decide_lwst(points: Sequence[Point2], t, w, opts: SolverOptions | None = None) -> Decision:
    """Is there a t-spanner of weight at most w (relative tolerance ``opts.tol``)?"""
    opts = opts or SolverOptions()
    points, t = _check_inputs(points, t)
    w = float(to_scalar(w)) if not isinstance(w, float) else w
    if w <= 0:
        raise ValueError("w must be positive")
    prob = _build_problem(points, t, opts)
    cap = w * (1 + opts.tol)
    if opts.mode == EXHAUSTIVE:
        bw, be, count = _exhaustive_min_weight(prob)
        res = _result(prob, bw, be, count, False)
        return Decision(be is not None and bw <= cap, res)
    mst = euclidean_mst(points)
    if graph_weight(mst) > cap:
        return Decision(False, SolverResult(INFEASIBLE, None, math.inf, math.inf, 0))
    bw, be, nodes, exceeded = _branch_and_bound(prob, t, opts, cap, True)
    if be is not None and bw <= cap:
        return Decision(True, _result(prob, bw, be, nodes, False))
    res = _result(prob, bw, be, nodes, exceeded)
    return Decision(None if exceeded else False, res)


@dataclass(frozen=True)
class MDGResult:
    status: str
    graph: GeometricGraph | None
    dilation: float
    weight: float


def min_dilation_under_budget(
    points: Sequence[Point2], w, opts: SolverOptions | None = None, t_tol: float = 1e-6, exhaustive_max_points: int = 7
) -> MDGResult:
    """Graph of weight at most w with the smallest dilation.

    Up to ``exhaustive_max_points`` points every edge subset is scored;
    beyond that the dilation is bisected with :func:`decide_lwst`.
    """
    opts = opts or SolverOptions()
    points = tuple(points)
    if len(points) < 2:
        raise ValueError("need at least two points")
    if len(set(points)) != len(points):
        raise ValueError("duplicate points")
    w = float(to_scalar(w)) if not isinstance(w, float) else w
    mst = euclidean_mst(points)
    cap = w * (1 + opts.tol)
    if graph_weight(mst) > cap:
        return MDGResult(INFEASIBLE, None, math.inf, math.inf)

    if len(points) <= exhaustive_max_points:
        prob = _build_problem(points, 2.0, opts)
        best = {"key": None, "e": None}
        safe = prob.euclid + np.eye(len(points))

        def select(masks, weights, d):
            keep = weights <= cap
            if not keep.any():
                return
            dil = (d[keep] / safe[None]).max(axis=(1, 2))
            lo = dil.min()
            cand, wts = masks[keep], weights[keep]
            for k in np.flatnonzero(dil <= lo * (1 + _TIE)):
                key = (float(dil[k]), float(wts[k]), _edges_of(prob, cand[k]))
                if best["key"] is None or _mdg_better(key, best["key"]):
                    best["key"], best["e"] = key, key[2]

        _exhaustive_scan(prob, select)
        g = GeometricGraph(points, frozenset(best["e"]))
        return MDGResult(OPTIMAL, g, best["key"][0], graph_weight(g))

    from .metrics import dilation as graph_dilation

    hi_graph = mst
    hi = graph_dilation(mst).dilation
    lo = 1.0
    status = OPTIMAL
    while hi - lo > t_tol:
        mid = (lo + hi) / 2
        dec = decide_lwst(points, mid, w, opts)
        if dec.answer is None:
            status = BUDGET_EXCEEDED
            break
        if dec.answer:
            hi_graph = dec.result.graph
            hi = graph_dilation(hi_graph).dilation
        else:
            lo = mid
    return MDGResult(status, hi_graph, hi, graph_weight(hi_graph))


def _mdg_better(a, b) -> bool:
    (da, wa, ea), (db, wb, eb) = a, b
    if da < db * (1 - _TIE):
        return True
    if da > db * (1 + _TIE):
        return False
    if wa < wb - _TIE * max(1.0, wb):
        return True
    if wa > wb + _TIE * max(1.0, wb):
        return False
    return ea < eb
