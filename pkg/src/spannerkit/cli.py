"""Command-line interface: ``spannerkit <subcommand> ...``.

Exit codes: 0 success, 1 negative answer, 2 usage or input error,
3 node budget exceeded / indeterminate.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .builders import euclidean_mst, path_greedy_spanner
from .geometry import (
    GeometricGraph,
    Point2,
    format_scalar,
    graph_from_json,
    graph_to_json,
    points_from_json,
    to_scalar,
)
from .lemmas import DEFAULT_T_VALUES, LEMMAS, run_lemma_suite
from .metrics import DEFAULT_TOL, dilation, exact_graph_weight, graph_weight
from .reduction import (
    HardnessInstance,
    PartitionInstance,
    budget_report,
    build_instance,
    instance_from_json,
    instance_to_json,
    solve_partition,
    verify_forward,
)
from .render import render_graph_svg, render_instance_svg
from .solver import (
    BUDGET_EXCEEDED,
    INFEASIBLE,
    SolverOptions,
    decide_lwst,
    min_dilation_under_budget,
    min_weight_plane_spanner,
    min_weight_spanner,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3


class InputError(Exception):
    """Malformed user input; reported with exit code 2."""


# --- number formatting ---------------------------------------------------


def decimal15(value) -> str:
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.15g}"


def number(value, exact=None) -> dict:
    """Exact rational string (or None when irrational/unknown) plus a decimal."""
    if exact is None and isinstance(value, (int, Fraction)):
        exact = value
    return {"exact": format_scalar(Fraction(exact)) if exact is not None else None, "decimal": decimal15(value)}


def number_text(value, exact=None) -> str:
    n = number(value, exact)
    if n["exact"] is None:
        return n["decimal"]
    if n["exact"] == n["decimal"]:
        return n["exact"]
    return f"{n['exact']} ({n['decimal']})"


# --- input ---------------------------------------------------------------


def _read_json(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _scalar_arg(name: str, text):
    if text is None:
        return None
    try:
        return to_scalar(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--{name}: {exc}") from None


def _partition(args) -> PartitionInstance:
    if args.partition is not None:
        text = args.partition
    elif getattr(args, "partition_file", None):
        try:
            text = Path(args.partition_file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.partition_file}: {exc.strerror}") from None
    else:
        raise InputError("need --partition or --partition-file")
    try:
        return PartitionInstance.parse(text)
    except ValueError as exc:
        raise InputError(f"partition: {exc}") from None


def _random_points(n: int, seed: int) -> tuple[Point2, ...]:
    if not 2 <= n <= 10_000:
        raise InputError("--random: need between 2 and 10000 points")
    rng = np.random.default_rng(seed)
    pts, taken = [], set()
    while len(pts) < n:
        x, y = (int(v) for v in rng.integers(0, 100, size=2))
        if (x, y) not in taken:
            taken.add((x, y))
            pts.append(Point2.of(x, y))
    return tuple(pts)


class Loaded:
    """Points, optional edges, and defaults picked up from an instance file."""

    def __init__(self, points, graph=None, instance=None):
        self.points = points
        self.graph = graph
        self.instance = instance


def _load(args, need_edges: bool = False) -> Loaded:
    if args.input is None:
        if getattr(args, "random", None):
            return Loaded(_random_points(args.random, args.seed))
        if getattr(args, "partition", None) is not None or getattr(args, "partition_file", None):
            return Loaded(None, instance=_build(args))
        raise InputError("need --in FILE (or '-' for stdin)")
    data = _read_json(args.input)
    try:
        if isinstance(data, dict) and "gadgets" in data:
            inst = instance_from_json(data)
            return Loaded(inst.points, instance=inst)
        if need_edges:
            if not isinstance(data, dict) or "edges" not in data:
                raise ValueError("missing field 'edges'")
            g = graph_from_json(data)
            return Loaded(g.points, graph=g)
        if isinstance(data, dict) and "edges" in data:
            g = graph_from_json(data)
            return Loaded(g.points, graph=g)
        return Loaded(points_from_json(data))
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from None


def _t_value(args, loaded: Loaded | None = None, required: bool = True):
    t = _scalar_arg("t", args.t)
    if t is None and loaded is not None and loaded.instance is not None:
        t = loaded.instance.t
    if t is None and required:
        raise InputError("missing --t")
    if t is not None and t <= 1:
        raise InputError("--t must be > 1")
    return t


def _w_value(args, loaded: Loaded | None = None):
    w = _scalar_arg("w", args.w)
    if w is None and loaded is not None and loaded.instance is not None:
        w = loaded.instance.w
    if w is None:
        raise InputError("missing --w")
    if w <= 0:
        raise InputError("--w must be positive")
    return w


def _options(args, **kw) -> SolverOptions:
    max_len = _scalar_arg("max-edge-len", getattr(args, "max_edge_len", None))
    try:
        return SolverOptions(
            max_edge_length=kw.pop("max_edge_length", max_len),
            tol=args.tol,
            node_budget=args.node_budget,
            threads=args.threads,
            **kw,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _build(args) -> HardnessInstance:
    X = _partition(args)
    t = _t_value(args)
    if X.large_elements() and not args.strict:
        vals = [X.values[i] for i in X.large_elements()]
        print(f"warning: elements {vals} are >= R/2; the construction assumes x < R/2", file=sys.stderr)
    try:
        return build_instance(X, t, precision_digits=args.digits, strict=args.strict)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# --- output --------------------------------------------------------------


class Output:
    def __init__(self, args):
        self.path = getattr(args, "out", None)
        self.json = getattr(args, "json", False)

    def emit(self, payload: dict, text: str):
        body = json.dumps(payload, indent=2) + "\n" if self.json else text.rstrip("\n") + "\n"
        self.write(body)

    def write(self, body: str):
        if self.path:
            Path(self.path).write_text(body)
        else:
            sys.stdout.write(body)


def _graph_summary(g: GeometricGraph | None) -> dict:
    if g is None:
        return {"graph": None}
    rep = dilation(g) if g.n >= 2 else None
    return {
        "graph": graph_to_json(g),
        "weight": number(graph_weight(g), exact_graph_weight(g)),
        "dilation": number(rep.dilation) if rep else None,
        "edge_count": len(g.edges),
    }


def _graph_text(g: GeometricGraph) -> str:
    lines = [
        f"points {g.n}  edges {len(g.edges)}",
        f"weight {number_text(graph_weight(g), exact_graph_weight(g))}",
    ]
    if g.n >= 2:
        lines.append(f"dilation {number_text(dilation(g).dilation)}")
    lines += [f"{i} {j}" for i, j in g.sorted_edges()]
    return "\n".join(lines)


# --- subcommands ---------------------------------------------------------


def cmd_gen(args) -> int:
    inst = _build(args)
    Output(args).write(json.dumps(instance_to_json(inst), indent=2) + "\n")
    return EXIT_OK


def cmd_mst(args) -> int:
    loaded = _load(args)
    pts = loaded.points if loaded.points is not None else loaded.instance.points
    try:
        g = euclidean_mst(pts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    Output(args).emit(_graph_summary(g), _graph_text(g))
    return EXIT_OK


def cmd_greedy(args) -> int:
    loaded = _load(args)
    pts = loaded.points if loaded.points is not None else loaded.instance.points
    t = _t_value(args, loaded)
    try:
        g = path_greedy_spanner(pts, t, tol=args.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"t": number(t), **_graph_summary(g)}
    Output(args).emit(payload, _graph_text(g))
    return EXIT_OK


def cmd_dilation(args) -> int:
    loaded = _load(args, need_edges=True)
    g = loaded.graph
    if g is None:
        raise InputError(f"{args.input}: missing field 'edges'")
    try:
        rep = dilation(g)
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    payload = {"dilation": number(rep.dilation), "witness": list(rep.witness) if rep.witness else None}
    text = number_text(rep.dilation)
    if rep.witness:
        text += f"\nwitness {rep.witness[0]} {rep.witness[1]}"
    Output(args).emit(payload, text)
    return EXIT_OK


def _solver_exit(status: str) -> int:
    if status == BUDGET_EXCEEDED:
        return EXIT_INDETERMINATE
    if status == INFEASIBLE:
        return EXIT_NO
    return EXIT_OK


def _solve(args, plane: bool) -> int:
    loaded = _load(args)
    pts = loaded.points if loaded.points is not None else loaded.instance.points
    t = _t_value(args, loaded)
    opts = _options(args)
    fn = min_weight_plane_spanner if plane else min_weight_spanner
    try:
        res = fn(pts, t, opts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"status": res.status, "t": number(t), "nodes": res.nodes, **_graph_summary(res.graph)}
    text = f"status {res.status}\nnodes {res.nodes}"
    if res.graph is not None:
        text += "\n" + _graph_text(res.graph)
    Output(args).emit(payload, text)
    return _solver_exit(res.status)


def cmd_solve(args) -> int:
    return _solve(args, plane=False)


def cmd_solve_plane(args) -> int:
    return _solve(args, plane=True)


def cmd_decide(args) -> int:
    loaded = _load(args)
    pts = loaded.points if loaded.points is not None else loaded.instance.points
    t = _t_value(args, loaded)
    w = _w_value(args, loaded)
    opts = _options(args, require_plane=args.plane)
    try:
        dec = decide_lwst(pts, t, w, opts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    res = dec.result
    payload = {"answer": dec.status, "t": number(t), "w": number(w), "nodes": res.nodes}
    payload.update(_graph_summary(res.graph) if dec.answer else {"graph": None})
    text = f"{dec.status}\nnodes {res.nodes}"
    if dec.answer:
        text += "\n" + _graph_text(res.graph)
    Output(args).emit(payload, text)
    return {True: EXIT_OK, False: EXIT_NO, None: EXIT_INDETERMINATE}[dec.answer]


def cmd_mdg(args) -> int:
    loaded = _load(args)
    pts = loaded.points if loaded.points is not None else loaded.instance.points
    w = _w_value(args, loaded)
    opts = _options(args, require_plane=args.plane)
    try:
        res = min_dilation_under_budget(pts, w, opts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"status": res.status, "w": number(w), **_graph_summary(res.graph)}
    text = f"status {res.status}"
    if res.graph is not None:
        text += "\n" + _graph_text(res.graph)
    Output(args).emit(payload, text)
    return _solver_exit(res.status)


def cmd_partition(args) -> int:
    X = _partition(args)
    sub = solve_partition(X)
    payload = {
        "values": list(X.values),
        "R": X.R,
        "subset": list(sub) if sub is not None else None,
        "subset_values": [X.values[i] for i in sub] if sub is not None else None,
    }
    text = "none" if sub is None else " ".join(map(str, sub))
    Output(args).emit(payload, text)
    return EXIT_OK if sub is not None else EXIT_NO


def _forward(inst: HardnessInstance, X: PartitionInstance, tol: float) -> dict:
    sub = solve_partition(X)
    if sub is None:
        return {"witness": None, "status": "no_witness"}
    rep = verify_forward(inst, sub, tol)
    return {
        "witness": list(sub),
        "status": "pass" if rep.ok else "fail",
        "weight_ok": rep.weight_ok,
        "dilation_ok": rep.dilation_ok,
        "plane_ok": rep.plane_ok,
        "marginal": rep.marginal,
        "weight": number(rep.achieved_weight, rep.exact_weight),
        "dilation": number(rep.achieved_dilation),
        "dilation_witness": list(rep.witness) if rep.witness else None,
    }


def _reverse(inst: HardnessInstance, X: PartitionInstance, args) -> dict:
    max_len = _scalar_arg("max-edge-len", args.max_edge_len)
    opts = _options(args, max_edge_length=max_len if max_len is not None else Fraction(X.R))
    dec = decide_lwst(inst.points, inst.t, inst.w, opts)
    expected = solve_partition(X) is not None
    if dec.answer is None:
        status = "indeterminate"
    else:
        status = "agree" if dec.answer == expected else "disagree"
    return {"decision": dec.status, "partition_exists": expected, "status": status, "nodes": dec.result.nodes}


def cmd_verify_reduction(args) -> int:
    X = _partition(args)
    inst = _build(args)
    bud = budget_report(inst)
    report = {
        "partition": list(X.values),
        "regime": inst.regime,
        "t": number(inst.t),
        "w": number(inst.w),
        "points": len(inst.points),
        "budget": {
            "backbone_weight": number(bud.backbone_weight),
            "spanner_bound": number(bud.spanner_bound),
            "required_shortening": number(bud.required_shortening),
            "remaining_weight": number(bud.remaining_weight),
            "gadget_efficiency": number(bud.gadget_efficiency),
            "balanced": bud.balanced,
        },
    }
    if args.direction in ("forward", "both"):
        report["forward"] = _forward(inst, X, args.tol)
    if args.direction in ("reverse", "both"):
        report["reverse"] = _reverse(inst, X, args)

    statuses = [report[d]["status"] for d in ("forward", "reverse") if d in report]
    if any(s in ("fail", "disagree") for s in statuses):
        verdict, code = "disagree", EXIT_NO
    elif "indeterminate" in statuses:
        verdict, code = "indeterminate", EXIT_INDETERMINATE
    else:
        verdict, code = "agree", EXIT_OK
    report["verdict"] = verdict

    if args.csv:
        _write_reduction_csv(args.csv, report)
    if args.figures:
        _reduction_figures(args.figures, inst, X)

    lines = [f"regime {inst.regime}  t {number_text(inst.t)}  points {len(inst.points)}"]
    lines.append(f"w {number_text(inst.w)}")
    for key, val in report["budget"].items():
        lines.append(f"{key} {val if isinstance(val, bool) else number_text(val['decimal'], val['exact'])}")
    for d in ("forward", "reverse"):
        if d in report:
            lines.append(f"{d} {report[d]['status']}")
    lines.append(f"verdict {verdict}")
    Output(args).emit(report, "\n".join(lines))
    return code


def _write_reduction_csv(path, report: dict):
    rows = [("section", "quantity", "exact", "decimal")]
    for key, val in report["budget"].items():
        if isinstance(val, dict):
            rows.append(("budget", key, val["exact"], val["decimal"]))
        else:
            rows.append(("budget", key, "", str(val)))
    for d in ("forward", "reverse"):
        for key, val in report.get(d, {}).items():
            if isinstance(val, dict):
                rows.append((d, key, val["exact"] or "", val["decimal"]))
            else:
                rows.append((d, key, "", val if isinstance(val, str) else json.dumps(val)))
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)


def _reduction_figures(directory, inst: HardnessInstance, X: PartitionInstance):
    from .plotting import plot_instance, plot_pair_ratios
    from .reduction import apply_gadget_shortcuts

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    plot_instance(inst, out / "instance.png")
    sub = solve_partition(X)
    if sub is not None:
        g = apply_gadget_shortcuts(inst, sub)
        plot_instance(inst, out / "spanner.png", graph=g, title=f"gadget shortcuts for subset {list(sub)}")
        plot_pair_ratios(g, float(inst.t), out / "pair_ratios.png")


def cmd_verify_lemmas(args) -> int:
    t_values = DEFAULT_T_VALUES
    if args.t_values:
        try:
            t_values = tuple(float(to_scalar(v)) for v in args.t_values.split(","))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--t-values: {exc}") from None
        if any(t <= 1 for t in t_values):
            raise InputError("--t-values: every t must be > 1")
    lemmas = tuple(args.lemma) if args.lemma else LEMMAS
    keep = bool(args.csv or args.figures)
    sweeps = run_lemma_suite(t_values, args.samples, args.seed, lemmas, keep_rows=keep)
    payload = {
        "seed": args.seed,
        "samples": args.samples,
        "sweeps": [
            {
                "lemma": s.lemma,
                "t": s.t,
                "samples": s.samples,
                "failures": s.failures,
                "min_margin": decimal15(s.min_margin),
                "first_failure": list(s.first_failure) if s.first_failure else None,
                "holds": s.holds,
            }
            for s in sweeps
        ],
    }
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("lemma", "t", "params", "margin", "holds"))
            for s in sweeps:
                for row in s.rows:
                    params = ";".join(f"{v:.17g}" for v in row[2:-2])
                    w.writerow((row[0], row[1], params, f"{row[-2]:.17g}", row[-1]))
    if args.figures:
        from .plotting import plot_margins

        Path(args.figures).mkdir(parents=True, exist_ok=True)
        plot_margins(sweeps, Path(args.figures) / "lemma_margins.png")
    text = "\n".join(
        f"{s.lemma:<10} t={s.t:<5g} samples={s.samples} failures={s.failures} "
        f"min_margin={decimal15(s.min_margin)} {'PASS' if s.holds else 'FAIL'}"
        for s in sweeps
    )
    Output(args).emit(payload, text)
    return EXIT_OK if all(s.holds for s in sweeps) else EXIT_NO


def cmd_render(args) -> int:
    loaded = _load(args)
    if loaded.instance is not None:
        svg = render_instance_svg(loaded.instance)
    elif loaded.graph is not None:
        svg = render_graph_svg(loaded.graph)
    else:
        svg = render_graph_svg(GeometricGraph(loaded.points, frozenset()))
    Output(args).write(svg)
    return EXIT_OK


# --- parser --------------------------------------------------------------


def _add_common(p, *, t=False, w=False, solver=False, points=False, partition=False, build=False):
    p.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    p.add_argument("--out", help="write the main output to this file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance")
    if t:
        p.add_argument("--t", help="stretch bound, e.g. 2 or 3/2")
    if w:
        p.add_argument("--w", help="weight budget, rational")
    if points:
        p.add_argument("--in", dest="input", help="points, graph or instance JSON ('-' for stdin)")
        p.add_argument("--random", type=int, help="use N random integer points instead of --in")
        p.add_argument("--seed", type=int, default=0, help="seed for --random")
    if solver:
        p.add_argument("--max-edge-len", help="ignore candidate edges longer than this")
        p.add_argument("--node-budget", type=int, default=10**7)
        p.add_argument("--threads", type=int, default=1)
    if partition:
        p.add_argument("--partition", help="PARTITION values, e.g. '1,2,3,2'")
        p.add_argument("--partition-file", help="file with whitespace/comma separated values")
    if build:
        p.add_argument("--digits", type=int, help="decimal digits for small-t coordinates (default n)")
        p.add_argument("--strict", action="store_true", help="reject elements >= R/2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spannerkit", description="Euclidean t-spanner toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a hardness instance from a PARTITION instance")
    _add_common(p, t=True, partition=True, build=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("mst", help="Euclidean minimum spanning tree")
    _add_common(p, points=True)
    p.set_defaults(func=cmd_mst)

    p = sub.add_parser("greedy", help="path-greedy t-spanner")
    _add_common(p, t=True, points=True)
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("dilation", help="dilation of a graph")
    _add_common(p, points=True)
    p.set_defaults(func=cmd_dilation)

    for name, func in (("solve", cmd_solve), ("solve-plane", cmd_solve_plane)):
        p = sub.add_parser(name, help="minimum weight " + ("plane " if "plane" in name else "") + "t-spanner")
        _add_common(p, t=True, points=True, solver=True)
        p.set_defaults(func=func)

    p = sub.add_parser("decide", help="is there a t-spanner of weight at most w?")
    _add_common(p, t=True, w=True, points=True, solver=True)
    p.add_argument("--plane", action="store_true", help="require a plane spanner")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("mdg", help="minimum dilation graph of weight at most w")
    _add_common(p, w=True, points=True, solver=True)
    p.add_argument("--plane", action="store_true", help="require a plane graph")
    p.set_defaults(func=cmd_mdg)

    p = sub.add_parser("partition", help="solve a PARTITION instance")
    _add_common(p, partition=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("verify-reduction", help="check the reduction on one PARTITION instance")
    _add_common(p, t=True, partition=True, build=True, solver=True)
    p.add_argument("--direction", choices=("forward", "reverse", "both"), default="forward")
    p.add_argument("--csv", help="write the report as CSV")
    p.add_argument("--figures", help="directory for PNG figures")
    p.set_defaults(func=cmd_verify_reduction, node_budget=10**8)

    p = sub.add_parser("verify-lemmas", help="random sweeps over the shortcut inequalities")
    _add_common(p)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-values", help="comma separated t values (default 1.2,1.5,2,3)")
    p.add_argument("--lemma", action="append", choices=LEMMAS, help="restrict to this sweep (repeatable)")
    p.add_argument("--csv", help="write every sample as CSV")
    p.add_argument("--figures", help="directory for PNG figures")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("render", help="SVG drawing of a graph or instance")
    _add_common(p, t=True, points=True, partition=True, build=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
