"""Scenario files: TOML, strict keys, explicit unit suffixes.

Robot geometry may be written with unit suffixes ("320 mm", "386 g");
everything is converted to SI on load and the in-memory Scenario only
ever holds SI values.  Unknown keys anywhere are rejected by name, as
typo protection.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .controllers import GainSet
from .dynamics import Disturbance, JointState, RobotParams
from .filters import FilterParams
from .numerics import IntegratorConfig
from .simulation import Scenario
from .trajectory import TrajectorySpec


class ScenarioError(ValueError):
    """Scenario file failed to parse or validate."""


_LENGTH_UNITS = {"m": 1.0, "mm": 1e-3, "cm": 1e-2}
_MASS_UNITS = {"kg": 1.0, "g": 1e-3, "gr": 1e-3}
_ANGLE_UNITS = {"rad": 1.0, "deg": math.pi / 180.0}

_SECTIONS = {
    "robot": {"l1", "l2", "m1", "m2", "g"},
    "plant_override": {"l1", "l2", "m1", "m2", "g"},
    "controller": {"type", "reaching_on", "torque_limit", "lam", "eta"},
    "gains": {"k1", "k2", "kr", "mu1", "mu2", "alpha"},
    "trajectory": {"kind", "amplitude", "frequency", "phase", "offset",
                   "waypoints", "segment_duration", "elbow"},
    "disturbance": {"kind", "amplitude", "frequency", "phase", "times", "values"},
    "filter": {"zeta", "omega0", "target"},
    "integrator": {"method", "dt", "plant_substeps"},
    "simulation": {"duration", "initial_state", "seed"},
}
_TOP_LEVEL = set(_SECTIONS) | {"name"}


def _quantity(value, units: dict[str, float], where: str) -> float:
    """A bare number is SI; a string must be '<number> <unit>'."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        parts = value.split()
        if len(parts) == 2:
            try:
                magnitude = float(parts[0])
            except ValueError:
                raise ScenarioError(f"{where}: cannot parse quantity {value!r}") from None
            if parts[1] not in units:
                raise ScenarioError(
                    f"{where}: unknown unit {parts[1]!r} (accepted: {sorted(units)})")
            return magnitude * units[parts[1]]
        raise ScenarioError(f"{where}: cannot parse quantity {value!r}")
    raise ScenarioError(f"{where}: expected a number or '<number> <unit>', got {value!r}")


def _check_keys(section: str, table: dict) -> None:
    if not isinstance(table, dict):
        raise ScenarioError(f"section [{section}] must be a table")
    unknown = set(table) - _SECTIONS[section]
    if unknown:
        raise ScenarioError(f"unknown key '{section}.{sorted(unknown)[0]}'")


def _robot_params(table: dict, section: str, base: RobotParams | None = None) -> RobotParams:
    _check_keys(section, table)
    values = {"l1": base.l1, "l2": base.l2, "m1": base.m1, "m2": base.m2,
              "g": base.g} if base is not None else {}
    for key in ("l1", "l2"):
        if key in table:
            values[key] = _quantity(table[key], _LENGTH_UNITS, f"{section}.{key}")
    for key in ("m1", "m2"):
        if key in table:
            values[key] = _quantity(table[key], _MASS_UNITS, f"{section}.{key}")
    if "g" in table:
        values["g"] = _quantity(table["g"], {"m/s^2": 1.0}, f"{section}.g")
    missing = {"l1", "l2", "m1", "m2"} - set(values)
    if missing:
        raise ScenarioError(f"section [{section}] missing key '{sorted(missing)[0]}'")
    try:
        return RobotParams(**values)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


def _angles(table: dict, key: str, default, where: str):
    if key not in table:
        return default
    value = table[key]
    if isinstance(value, list):
        return [_quantity(v, _ANGLE_UNITS, f"{where}.{key}") for v in value]
    return _quantity(value, _ANGLE_UNITS, f"{where}.{key}")


def load_scenario(path: str | Path) -> Scenario:
    """Load, convert to SI and validate one scenario file."""
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"{path}: {exc}") from None

    unknown = set(raw) - _TOP_LEVEL
    if unknown:
        raise ScenarioError(f"unknown key '{sorted(unknown)[0]}'")
    for section in ("robot", "controller"):
        if section not in raw:
            raise ScenarioError(f"missing required section [{section}]")

    try:
        robot = _robot_params(raw["robot"], "robot")
        plant_override = None
        if "plant_override" in raw:
            plant_override = _robot_params(raw["plant_override"], "plant_override", base=robot)

        ctl = raw["controller"]
        _check_keys("controller", ctl)
        if "type" not in ctl:
            raise ScenarioError("missing key 'controller.type'")

        gains_table = dict(raw.get("gains", {}))
        _check_keys("gains", gains_table)
        gains = GainSet(**gains_table)

        traj_table = dict(raw.get("trajectory", {}))
        _check_keys("trajectory", traj_table)
        for key in ("amplitude", "phase", "offset"):
            if key in traj_table:
                traj_table[key] = _angles(traj_table, key, None, "trajectory")
        trajectory = TrajectorySpec(**traj_table)

        dist_table = dict(raw.get("disturbance", {}))
        _check_keys("disturbance", dist_table)
        disturbance = Disturbance(**dist_table)

        filter_params = None
        filter_target = "velocity"
        if "filter" in raw:
            ftable = dict(raw["filter"])
            _check_keys("filter", ftable)
            filter_target = ftable.pop("target", "velocity")
            integ_dt = raw.get("integrator", {}).get("dt", IntegratorConfig().dt)
            filter_params = FilterParams(dt=float(integ_dt), **ftable)

        integ_table = dict(raw.get("integrator", {}))
        _check_keys("integrator", integ_table)
        plant_substeps = integ_table.pop("plant_substeps", 1)
        integrator = IntegratorConfig(**integ_table)

        sim_table = dict(raw.get("simulation", {}))
        _check_keys("simulation", sim_table)
        initial_state = None
        if "initial_state" in sim_table:
            st = sim_table.pop("initial_state")
            if not isinstance(st, dict) or set(st) != {"q", "qd"}:
                raise ScenarioError("simulation.initial_state must be {q = [..], qd = [..]}")
            initial_state = JointState(np.asarray(st["q"], dtype=float),
                                       np.asarray(st["qd"], dtype=float))

        return Scenario(
            robot=robot,
            plant_override=plant_override,
            controller=ctl["type"],
            reaching_on=ctl.get("reaching_on", "error"),
            torque_limit=ctl.get("torque_limit", 100.0),
            lam=np.asarray(ctl.get("lam", [10.0, 10.0]), dtype=float),
            eta=np.asarray(ctl.get("eta", [30.0, 30.0]), dtype=float),
            gains=gains,
            trajectory=trajectory,
            disturbance=disturbance,
            filter_params=filter_params,
            filter_target=filter_target,
            integrator=integrator,
            plant_substeps=plant_substeps,
            duration=sim_table.get("duration", 20.0),
            initial_state=initial_state,
            seed=int(sim_table.get("seed", 0)),
            name=str(raw.get("name", path.stem)),
        )
    except ScenarioError:
        raise
    except (TypeError, ValueError) as exc:
        raise ScenarioError(str(exc)) from None


def scenario_to_dict(scenario: Scenario) -> dict:
    """Resolved SI-unit view of a scenario, for printing and inspection."""
    def robot_dict(p: RobotParams | None):
        if p is None:
            return None
        return {"l1": p.l1, "l2": p.l2, "m1": p.m1, "m2": p.m2, "g": p.g}

    traj = {"kind": scenario.trajectory.kind}
    if scenario.trajectory.kind == "joint-sinusoid":
        traj.update(amplitude=scenario.trajectory.amplitude.tolist(),
                    frequency=scenario.trajectory.frequency.tolist(),
                    phase=scenario.trajectory.phase.tolist(),
                    offset=scenario.trajectory.offset.tolist())
    else:
        traj.update(waypoints=scenario.trajectory.waypoints.tolist(),
                    segment_duration=scenario.trajectory.segment_duration,
                    elbow=scenario.trajectory.elbow)
    dist = {"kind": scenario.disturbance.kind,
            "amplitude": scenario.disturbance.amplitude.tolist(),
            "frequency": scenario.disturbance.frequency,
            "phase": scenario.disturbance.phase}
    out = {
        "name": scenario.name,
        "robot": robot_dict(scenario.robot),
        "plant_override": robot_dict(scenario.plant_override),
        "controller": {
            "type": scenario.controller,
            "reaching_on": scenario.reaching_on,
            "torque_limit": scenario.torque_limit,
            "lam": scenario.lam.tolist(),
            "eta": scenario.eta.tolist(),
        },
        "gains": {
            "k1": scenario.gains.k1.tolist(),
            "k2": scenario.gains.k2.tolist(),
            "kr": scenario.gains.kr.tolist(),
            "mu1": scenario.gains.mu1.tolist(),
            "mu2": scenario.gains.mu2.tolist(),
            "alpha": scenario.gains.alpha,
        },
        "trajectory": traj,
        "disturbance": dist,
        "filter": None if scenario.filter_params is None else {
            "zeta": scenario.filter_params.zeta,
            "omega0": scenario.filter_params.omega0,
            "dt": scenario.filter_params.dt,
            "target": scenario.filter_target,
        },
        "integrator": {
            "method": scenario.integrator.method,
            "dt": scenario.integrator.dt,
            "plant_substeps": scenario.plant_substeps,
        },
        "simulation": {
            "duration": scenario.duration,
            "seed": scenario.seed,
            "initial_state": None if scenario.initial_state is None else {
                "q": scenario.initial_state.q.tolist(),
                "qd": scenario.initial_state.qd.tolist(),
            },
        },
    }
    return out
