"""Euclidean t-spanners: dilation, classic constructions, exact search and
the PARTITION hardness reduction."""

from .builders import euclidean_mst, path_greedy_spanner
from .geometry import GeometricGraph, Point2, is_plane_graph, proper_intersection
from .metrics import dilation, graph_weight, is_t_spanner
from .reduction import (
    PartitionInstance,
    HardnessInstance,
    apply_gadget_shortcuts,
    backbone_path,
    budget_report,
    build_instance,
    solve_partition,
    verify_forward,
)
from .shortcuts import Triple, evaluate_shortcuts
from .solver import (
    SolverOptions,
    decide_lwst,
    min_dilation_under_budget,
    min_weight_plane_spanner,
    min_weight_spanner,
)

__all__ = [
    "GeometricGraph",
    "HardnessInstance",
    "PartitionInstance",
    "Point2",
    "SolverOptions",
    "Triple",
    "apply_gadget_shortcuts",
    "backbone_path",
    "budget_report",
    "build_instance",
    "decide_lwst",
    "dilation",
    "euclidean_mst",
    "evaluate_shortcuts",
    "graph_weight",
    "is_plane_graph",
    "is_t_spanner",
    "min_dilation_under_budget",
    "min_weight_plane_spanner",
    "min_weight_spanner",
    "path_greedy_spanner",
    "proper_intersection",
    "solve_partition",
    "verify_forward",
]
