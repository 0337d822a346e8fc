"""Genetic-algorithm scheduling of dependent tasks on heterogeneous clouds."""

from ._core import (
    FitnessReport,
    GaResult,
    SchedulingError,
    WorkloadInstance,
    demo_instance,
    evaluate,
    evolve,
    generate_instance,
    greedy_min_etc,
    random_search,
    size_dep_mat,
)

__all__ = [
    "FitnessReport",
    "GaResult",
    "SchedulingError",
    "WorkloadInstance",
    "demo_instance",
    "evaluate",
    "evolve",
    "generate_instance",
    "greedy_min_etc",
    "random_search",
    "size_dep_mat",
]
