"""Closed-loop simulation: plant, controller, trajectory, filter and
disturbance wired into a fixed-step run with a complete per-step log.

Loop structure per control step (zero-order hold): read the true state,
filter the measured velocity if a filter is configured, evaluate the
reference, form the tracking error, advance the surface integral with
the current sample, evaluate the controller once, clamp the torque, log,
then integrate the plant to the next step under the held torque.  The
plant may be integrated with finer internal substeps for accuracy; the
exogenous disturbance is evaluated continuously inside the substeps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from . import metrics as metrics_mod
from . import numerics
from .controllers import (ControllerState, ControlOutput, GainSet,
                          conventional_smc_control, ncsmc_control,
                          nsmc_control, saturate, update_surface_integral,
                          REACHING_TARGETS)
from .dynamics import (Disturbance, JointState, RobotParams, disturbance_at,
                       _forward_dynamics)
from .filters import FilterParams, FilterState, filter_step
from .metrics import RunMetrics
from .trajectory import TrajectorySpec, reference_at

log = logging.getLogger(__name__)

CONTROLLER_NAMES = ("smc", "nsmc", "ncsmc")
FILTER_TARGETS = ("velocity",)

# exact CSV column order of one log row
COLUMNS = (
    "t", "q1", "q2", "qd1", "qd2",
    "ref_q1", "ref_q2", "ref_qd1", "ref_qd2", "ref_qdd1", "ref_qdd2",
    "e1", "e2", "edot1", "edot2", "f1", "f2", "Ly",
    "tau1", "tau2", "ueq1", "ueq2", "ur1", "ur2", "un1", "un2",
    "d1", "d2",
)


@dataclass
class Scenario:
    """Everything one run needs.  ``robot`` is the model the controller
    (and trajectory planner) believes; ``plant_override``, when given,
    is the true plant, for mismatch studies."""

    robot: RobotParams
    gains: GainSet = field(default_factory=GainSet)
    trajectory: TrajectorySpec = field(default_factory=TrajectorySpec)
    disturbance: Disturbance = field(default_factory=Disturbance)
    integrator: numerics.IntegratorConfig = field(default_factory=numerics.IntegratorConfig)
    controller: str = "nsmc"
    plant_override: RobotParams | None = None
    lam: np.ndarray = field(default_factory=lambda: np.array([10.0, 10.0]))
    eta: np.ndarray = field(default_factory=lambda: np.array([30.0, 30.0]))
    filter_params: FilterParams | None = None
    filter_target: str = "velocity"
    duration: float = 20.0
    initial_state: JointState | None = None  # None: start on the reference
    torque_limit: float = 100.0
    plant_substeps: int = 1
    reaching_on: str = "error"
    seed: int = 0  # logged only; every signal in v1 is deterministic
    name: str = "scenario"

    def __post_init__(self):
        if self.controller not in CONTROLLER_NAMES:
            raise ValueError(
                f"controller must be one of {CONTROLLER_NAMES}, got {self.controller!r}")
        self.duration = float(self.duration)
        if not self.duration > 0.0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.integrator.dt > numerics.MAX_SCENARIO_DT:
            raise ValueError(
                f"integrator.dt must be <= {numerics.MAX_SCENARIO_DT} s for closed-loop "
                f"scenarios, got {self.integrator.dt}")
        self.torque_limit = float(self.torque_limit)
        if not self.torque_limit > 0.0:
            raise ValueError(f"torque_limit must be positive, got {self.torque_limit}")
        self.plant_substeps = int(self.plant_substeps)
        if self.plant_substeps < 1:
            raise ValueError(f"plant_substeps must be >= 1, got {self.plant_substeps}")
        if self.reaching_on not in REACHING_TARGETS:
            raise ValueError(
                f"reaching_on must be one of {REACHING_TARGETS}, got {self.reaching_on!r}")
        if self.filter_target not in FILTER_TARGETS:
            raise ValueError(
                f"filter_target must be one of {FILTER_TARGETS}, got {self.filter_target!r}")
        for name in ("lam", "eta"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape == ():
                v = np.full(2, float(v))
            if v.shape != (2,):
                raise ValueError(f"{name} must be a scalar or 2-vector")
            setattr(self, name, v)
        self.trajectory.validate_waypoints(self.robot)


@dataclass
class SimRecord:
    """One log row (field names match the CSV columns)."""

    t: float
    q1: float
    q2: float
    qd1: float
    qd2: float
    ref_q1: float
    ref_q2: float
    ref_qd1: float
    ref_qd2: float
    ref_qdd1: float
    ref_qdd2: float
    e1: float
    e2: float
    edot1: float
    edot2: float
    f1: float
    f2: float
    Ly: float
    tau1: float
    tau2: float
    ueq1: float
    ueq2: float
    ur1: float
    ur2: float
    un1: float
    un2: float
    d1: float
    d2: float


class RunLog:
    """Column store of one run, one row per control step.

    Columns follow COLUMNS; q/qd are the true plant state except qd1/qd2,
    which are the measured (post-filter) velocities the controller saw.
    tau is the applied (post-saturation) torque; ueq/ur/un are the
    pre-saturation components, so their sum recovers the raw command.
    """

    def __init__(self, data: dict[str, np.ndarray]):
        missing = set(COLUMNS) - set(data)
        if missing:
            raise ValueError(f"log columns missing: {sorted(missing)}")
        n = len(data["t"])
        for name in COLUMNS:
            col = np.asarray(data[name], dtype=float)
            if col.shape != (n,):
                raise ValueError(f"log column {name} has shape {col.shape}, want ({n},)")
            setattr(self, name, col)
        self.n = n

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunLog):
            return NotImplemented
        return len(self) == len(other) and all(
            np.array_equal(getattr(self, c), getattr(other, c)) for c in COLUMNS)

    def column(self, name: str) -> np.ndarray:
        return getattr(self, name)

    def records(self):
        """Iterate rows as SimRecord instances."""
        for i in range(self.n):
            yield SimRecord(*(float(getattr(self, c)[i]) for c in COLUMNS))

    def pair(self, stem: str) -> np.ndarray:
        """(n, 2) view of a per-joint column pair such as 'e' or 'tau'."""
        return np.column_stack([getattr(self, stem + "1"), getattr(self, stem + "2")])


def _eval_smc(scenario: Scenario, model: RobotParams, state: JointState, ref,
              cstate: ControllerState) -> ControlOutput:
    return conventional_smc_control(model, state, ref, scenario.lam, scenario.eta)


def _eval_nsmc(scenario: Scenario, model: RobotParams, state: JointState, ref,
               cstate: ControllerState) -> ControlOutput:
    return nsmc_control(model, state, ref, cstate, scenario.gains, scenario.reaching_on)


def _eval_ncsmc(scenario: Scenario, model: RobotParams, state: JointState, ref,
                cstate: ControllerState) -> ControlOutput:
    return ncsmc_control(model, state, ref, cstate, scenario.gains, scenario.reaching_on)


# dispatch table; tests may wrap entries to count evaluations
CONTROLLERS: dict[str, Callable] = {
    "smc": _eval_smc,
    "nsmc": _eval_nsmc,
    "ncsmc": _eval_ncsmc,
}


def run(scenario: Scenario) -> tuple[RunLog, RunMetrics]:
    """Simulate one scenario; returns the full log and its metrics."""
    dt = scenario.integrator.dt
    n_steps = int(round(scenario.duration / dt))
    model = scenario.robot
    plant = scenario.plant_override if scenario.plant_override is not None else scenario.robot
    controller = CONTROLLERS[scenario.controller]
    sub_cfg = numerics.IntegratorConfig(method=scenario.integrator.method,
                                        dt=dt / scenario.plant_substeps)

    ref0 = reference_at(scenario.trajectory, model, 0.0)
    if scenario.initial_state is not None:
        q = scenario.initial_state.q.copy()
        qd = scenario.initial_state.qd.copy()
    else:
        q = ref0.q.copy()
        qd = ref0.qd.copy()

    fstate = None
    if scenario.filter_params is not None:
        fstate = FilterState.steady(scenario.filter_params, qd)

    cstate = ControllerState.initial()
    cols = {name: np.empty(n_steps + 1) for name in COLUMNS}
    clipped = 0

    # a constant (or zero) disturbance can be evaluated once
    d_const = None
    if scenario.disturbance.kind in ("none", "constant"):
        d_const = disturbance_at(scenario.disturbance, 0.0)

    def plant_rhs(tt: float, x: np.ndarray) -> np.ndarray:
        d_now = d_const if d_const is not None else disturbance_at(scenario.disturbance, tt)
        qdd = _forward_dynamics(plant, x[:2], x[2:], tau_applied, d_now)
        out = np.empty(4)
        out[:2] = x[2:]
        out[2:] = qdd
        return out

    for k in range(n_steps + 1):
        t = k * dt
        if fstate is not None:
            fstate, qd_meas = filter_step(fstate, scenario.filter_params, qd)
        else:
            qd_meas = qd
        ref = reference_at(scenario.trajectory, model, t)
        e = ref.q - q
        edot = ref.qd - qd_meas
        cstate = update_surface_integral(cstate, e, edot, scenario.gains, dt)
        out = controller(scenario, model, JointState(q, qd_meas), ref, cstate)
        tau_applied = saturate(out.tau, scenario.torque_limit)
        if tau_applied[0] != out.tau[0] or tau_applied[1] != out.tau[1]:
            clipped += 1
        d_now = disturbance_at(scenario.disturbance, t)

        row = (t, q[0], q[1], qd_meas[0], qd_meas[1],
               ref.q[0], ref.q[1], ref.qd[0], ref.qd[1], ref.qdd[0], ref.qdd[1],
               e[0], e[1], edot[0], edot[1], out.surface[0], out.surface[1],
               0.5 * float(out.surface @ out.surface),
               tau_applied[0], tau_applied[1], out.u_eq[0], out.u_eq[1],
               out.u_r[0], out.u_r[1], out.u_n[0], out.u_n[1], d_now[0], d_now[1])
        for name, value in zip(COLUMNS, row):
            cols[name][k] = value

        if k < n_steps:
            x = np.concatenate([q, qd])
            for j in range(scenario.plant_substeps):
                x = numerics.step(plant_rhs, x, t + j * sub_cfg.dt, sub_cfg)
            q = x[:2]
            qd = x[2:]

    if clipped:
        log.warning("%s: torque saturation active on %d of %d steps (limit %.3g N m)",
                    scenario.name, clipped, n_steps + 1, scenario.torque_limit)

    run_log = RunLog(cols)
    run_metrics = metrics_mod.compute_run_metrics(
        run_log.t, run_log.pair("e"), run_log.pair("tau"), run_log.Ly)
    return run_log, run_metrics


@dataclass
class ComparisonResult:
    base_name: str
    runs: dict[str, tuple[RunLog, RunMetrics]]
    chattering_ratios: dict[str, list[float]]

    def to_dict(self) -> dict:
        return {
            "scenario": self.base_name,
            "controllers": {name: m.to_dict() for name, (_, m) in self.runs.items()},
            "chattering_ratios": self.chattering_ratios,
        }


def run_comparison(base: Scenario, controllers: Sequence[str]) -> ComparisonResult:
    """Run several controllers on an otherwise identical scenario.

    Emits per-controller logs and metrics plus every ordered pairwise
    per-joint chattering ratio ("a/b" means chattering(a)/chattering(b)).
    """
    controllers = list(controllers)
    if len(controllers) < 2:
        raise ValueError("comparison needs >= 2 controllers")
    dupes = {c for c in controllers if controllers.count(c) > 1}
    if dupes:
        raise ValueError(f"duplicate controllers in comparison: {sorted(dupes)}")
    runs = {}
    for name in controllers:
        scenario = replace(base, controller=name, name=f"{base.name}_{name}")
        runs[name] = run(scenario)
    ratios = {}
    for a in controllers:
        for b in controllers:
            if a != b:
                ca = runs[a][1].chattering_index
                cb = runs[b][1].chattering_index
                ratios[f"{a}/{b}"] = (ca / cb).tolist()
    return ComparisonResult(base_name=base.name, runs=runs, chattering_ratios=ratios)
