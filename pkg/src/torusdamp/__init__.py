"""Damped Schrodinger dynamics on flat tori: simulation and verification."""

from .analysis import (
    ExtinctionReport,
    StateStash,
    TimeSeriesRecord,
    TimeSeriesRecorder,
)
from .dynamics import (
    DampingParams,
    NlsParams,
    SimulationResult,
    StepScheme,
    damping_flow_exact,
    damping_flow_regularized,
    linear_flow,
    phase_rotation_flow,
    run_simulation,
    strang_step,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .oracles import ode_oracle_exact, ode_oracle_regularized, ode_oracle_tc
from .spectral import (
    ComplexField,
    TorusGrid,
    constant_field,
    laplacian_apply,
    lp_norm,
    make_field,
    make_grid,
    plane_wave,
    random_field,
    sobolev_norm,
    to_physical,
    to_spectral,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexField",
    "TorusGrid",
    "DampingParams",
    "NlsParams",
    "StepScheme",
    "SimulationResult",
    "TimeSeriesRecord",
    "TimeSeriesRecorder",
    "StateStash",
    "ExtinctionReport",
    "KERNEL_BACKEND",
    "make_grid",
    "make_field",
    "constant_field",
    "plane_wave",
    "random_field",
    "to_spectral",
    "to_physical",
    "lp_norm",
    "sobolev_norm",
    "laplacian_apply",
    "damping_flow_exact",
    "damping_flow_regularized",
    "linear_flow",
    "phase_rotation_flow",
    "strang_step",
    "run_simulation",
    "ode_oracle_exact",
    "ode_oracle_tc",
    "ode_oracle_regularized",
    "__version__",
]
