"""Multi-objective permutation flowshop with missing operations."""

from ._core import (
    AlgoConfig,
    Algorithm,
    ConfigError,
    GeneratorConfig,
    Instance,
    ParseError,
    completion_times,
    consolidate,
    derive_run_seed,
    evaluate,
    generate_instance,
    hypervolume3,
    instance_name,
    nondominated_sort,
    parse_instance,
    pmx_crossover,
    read_front,
    read_instance,
    relative_hypervolume,
    run_algorithm,
    run_plan,
    serialize_instance,
    spread,
    write_front,
    write_instance,
)

__all__ = [
    "AlgoConfig",
    "Algorithm",
    "ConfigError",
    "GeneratorConfig",
    "Instance",
    "ParseError",
    "completion_times",
    "consolidate",
    "derive_run_seed",
    "evaluate",
    "generate_instance",
    "hypervolume3",
    "instance_name",
    "nondominated_sort",
    "parse_instance",
    "pmx_crossover",
    "read_front",
    "read_instance",
    "relative_hypervolume",
    "run_algorithm",
    "run_plan",
    "serialize_instance",
    "spread",
    "write_front",
    "write_instance",
]
