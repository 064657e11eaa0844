"""Exact Riemann solvers and nonlinear boundary treatments for 1D gas dynamics."""
__version__ = "0.1.0"

from .errors import (
    AmbiguousResolution,
    EulerBCError,
    NoConvergence,
    NoIntersection,
    NonPhysicalState,
    NoSupersonicBranch,
    NotConverged,
    VacuumFormation,
)
from .gas import ConsState, GasModel, PrimState, Regime, Side
from .riemann import (
    Flux,
    RiemannSolution,
    godunov_flux,
    osher_flux,
    physical_flux,
    sample,
    solve_exact,
    trace,
    vacuum_check,
)
from .boundary import (
    Extrapolation,
    InflowEnthalpyEntropy,
    OutflowPressure,
    PrescribedFlux,
    SupersonicInflow,
    SupersonicOutflow,
    Wall,
    resolve,
)
from .solver import SolverConfig, exact_nozzle_steady, nozzle_config, run_to_steady
