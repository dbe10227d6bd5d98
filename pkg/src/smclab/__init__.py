"""Sliding-mode controller comparison bench for a planar two-link arm.

Simulates three torque-level control laws (a classical first-order
sliding-mode baseline, an integral-surface law and its compound variant
with a continuous error correction) on the same rigid-body plant, and
measures tracking quality, switching activity of the commanded torque
and the decrease of the surface-energy monitor.
"""

from .controllers import (ControlOutput, ControllerState, GainSet,
                          conventional_smc_control, ncsmc_control,
                          nsmc_control, saturate, sig, sliding_surface,
                          update_surface_integral)
from .dynamics import (Disturbance, JointState, RobotParams, SingularInertiaError,
                       coriolis_vector, disturbance_at, forward_dynamics,
                       gravity_vector, inertia_matrix, kinetic_energy)
from .filters import FilterParams, FilterState, filter_step
from .metrics import (RunMetrics, chattering_index, lyapunov_series,
                      lyapunov_violation_rate, tracking_rmse)
from .numerics import (IntegrationDivergedError, IntegratorConfig,
                       SingularMatrixError, solve2x2, step)
from .simulation import ComparisonResult, RunLog, Scenario, SimRecord, run, run_comparison
from .trajectory import (Reference, TrajectorySpec, UnreachableTargetError,
                         forward_kinematics, inverse_kinematics, reference_at)

__version__ = "0.1.0"

__all__ = [
    "ControlOutput", "ControllerState", "GainSet", "conventional_smc_control",
    "ncsmc_control", "nsmc_control", "saturate", "sig", "sliding_surface",
    "update_surface_integral",
    "Disturbance", "JointState", "RobotParams", "SingularInertiaError",
    "coriolis_vector", "disturbance_at", "forward_dynamics", "gravity_vector",
    "inertia_matrix", "kinetic_energy",
    "FilterParams", "FilterState", "filter_step",
    "RunMetrics", "chattering_index", "lyapunov_series",
    "lyapunov_violation_rate", "tracking_rmse",
    "IntegrationDivergedError", "IntegratorConfig", "SingularMatrixError",
    "solve2x2", "step",
    "ComparisonResult", "RunLog", "Scenario", "SimRecord", "run", "run_comparison",
    "Reference", "TrajectorySpec", "UnreachableTargetError",
    "forward_kinematics", "inverse_kinematics", "reference_at",
    "__version__",
]
