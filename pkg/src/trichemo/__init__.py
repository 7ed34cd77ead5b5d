"""Deterministic finite-difference simulator for a three-component
chemotaxis system with weakly singular sensitivity, plus the diagnostics
needed to measure its convergence to the uniform steady state."""

from .diagnostics import (
    DecayFit,
    DiagnosticsRecord,
    collect,
    deviation_energy,
    fit_exponential_rate,
    mixing_entropy,
    relative_entropy,
)
from .grid import (
    Field,
    Grid,
    field_from_function,
    full_field,
    integrate,
    make_grid,
    make_grid_from_spacing,
    read_field_csv,
    write_field_csv,
)
from .operators import RhsTriple, assemble_rhs, chemotaxis_divergence, laplacian, reaction
from .params import (
    DEFAULT_CHI,
    Equilibrium,
    Params,
    case1_params,
    case2_params,
    equilibrium,
    sensitivity,
)
from .runner import (
    AlignmentError,
    ConfigError,
    RunConfig,
    RunRecord,
    case1_config,
    case2_config,
    config_from_flat_dict,
    config_to_flat_dict,
    dump_config,
    load_config,
    perturbed_ic,
    read_diagnostics,
    run,
)
from .stepping import (
    BlowupError,
    StabilityAdvisory,
    State,
    StepConfig,
    StepInfo,
    check_stability,
    euler_step,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "BlowupError",
    "ConfigError",
    "DEFAULT_CHI",
    "DecayFit",
    "DiagnosticsRecord",
    "Equilibrium",
    "Field",
    "Grid",
    "Params",
    "RhsTriple",
    "RunConfig",
    "RunRecord",
    "StabilityAdvisory",
    "State",
    "StepConfig",
    "StepInfo",
    "assemble_rhs",
    "case1_config",
    "case1_params",
    "case2_config",
    "case2_params",
    "check_stability",
    "chemotaxis_divergence",
    "collect",
    "config_from_flat_dict",
    "config_to_flat_dict",
    "deviation_energy",
    "dump_config",
    "equilibrium",
    "euler_step",
    "field_from_function",
    "fit_exponential_rate",
    "full_field",
    "integrate",
    "laplacian",
    "load_config",
    "make_grid",
    "make_grid_from_spacing",
    "mixing_entropy",
    "perturbed_ic",
    "read_diagnostics",
    "read_field_csv",
    "reaction",
    "relative_entropy",
    "run",
    "sensitivity",
    "write_field_csv",
]
