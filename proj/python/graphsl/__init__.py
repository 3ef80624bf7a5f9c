"""Schroedinger operators Delta - V on weighted graphs.

Thin wrapper over the C++ core: model trees, Dirichlet solves, the radial
oracle, monotone exhaustion and the experiment commands.
"""

from ._graphsl import (
    ExperimentConfig,
    GraphslError,
    PseudoMetric,
    WeightedGraph,
    build_model_tree,
    check_summability,
    dirichlet_exhaustion,
    format_graph,
    hop_metric,
    intrinsic_metric,
    laplacian,
    make_barrier,
    parse_graph,
    radial_dirichlet,
    run_dichotomy,
    run_solve,
    run_verify,
    shifted_potential,
    solve_dirichlet,
)

__all__ = [
    "ExperimentConfig",
    "GraphslError",
    "PseudoMetric",
    "WeightedGraph",
    "build_model_tree",
    "check_summability",
    "dirichlet_exhaustion",
    "format_graph",
    "hop_metric",
    "intrinsic_metric",
    "laplacian",
    "make_barrier",
    "parse_graph",
    "radial_dirichlet",
    "run_dichotomy",
    "run_solve",
    "run_verify",
    "shifted_potential",
    "solve_dirichlet",
]
