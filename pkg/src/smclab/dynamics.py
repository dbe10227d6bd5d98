"""Planar two-link arm dynamics.

Point masses m1, m2 sit at the tips of rigid massless links L1, L2; both
joints are revolute and the arm moves in a vertical plane.  The model is
the standard rigid-body form

    M(q) qdd + n(q, qd) + g(q) = tau

with M(q) the 2x2 inertia matrix, n(q, qd) the Coriolis/centrifugal
torque vector (quadratic in joint velocity) and g(q) the gravity torque.

Angle convention: the gravity vector below makes q = (0, 0) the upright
(potential-energy maximum) pose, i.e. angles are measured from the upward
vertical; the hanging rest pose is q1 = pi, q2 = 0.  Only the sign of
g(q) depends on this choice.

The external disturbance enters additively at acceleration level, so the
forward dynamics used throughout is

    qdd = M(q)^-1 (tau - n - g) + d(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import numerics

DISTURBANCE_KINDS = ("none", "constant", "sinusoid", "table")


class SingularInertiaError(RuntimeError):
    """Inertia solve failed; signals corrupted robot parameters."""


@dataclass
class RobotParams:
    """Link lengths (m), point masses (kg) and gravity (m/s^2)."""

    l1: float
    l2: float
    m1: float
    m2: float
    g: float = 9.81

    def __post_init__(self):
        for name in ("l1", "l2", "m1", "m2", "g"):
            value = float(getattr(self, name))
            setattr(self, name, value)
            if not value > 0.0:
                raise ValueError(f"robot.{name} must be strictly positive, got {value}")


@dataclass
class JointState:
    """Joint angles q (rad) and velocities qd (rad/s), both 2-vectors."""

    q: np.ndarray
    qd: np.ndarray

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=float)
        self.qd = np.asarray(self.qd, dtype=float)
        if self.q.shape != (2,) or self.qd.shape != (2,):
            raise ValueError("state.q and state.qd must be 2-vectors")
        if not (math.isfinite(self.q[0]) and math.isfinite(self.q[1])
                and math.isfinite(self.qd[0]) and math.isfinite(self.qd[1])):
            raise ValueError("state entries must be finite")


@dataclass
class Disturbance:
    """Exogenous acceleration-level disturbance signal d(t).

    kind "none": zero.  "constant": amplitude.  "sinusoid":
    amplitude * sin(frequency * t + phase).  "table": linear
    interpolation of (times, values); lookups outside the table range are
    an error.  Amplitudes are in rad/s^2 (the disturbance adds directly
    to the joint accelerations).
    """

    kind: str = "none"
    amplitude: np.ndarray = field(default_factory=lambda: np.zeros(2))
    frequency: float = 0.0
    phase: float = 0.0
    times: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in DISTURBANCE_KINDS:
            raise ValueError(f"disturbance.kind must be one of {DISTURBANCE_KINDS}, got {self.kind!r}")
        self.amplitude = np.asarray(self.amplitude, dtype=float)
        if self.amplitude.shape != (2,):
            raise ValueError("disturbance.amplitude must be a 2-vector")
        if not np.all(np.isfinite(self.amplitude)):
            raise ValueError("disturbance.amplitude must be finite")
        self.frequency = float(self.frequency)
        if self.frequency < 0.0:
            raise ValueError(f"disturbance.frequency must be >= 0, got {self.frequency}")
        self.phase = float(self.phase)
        if self.kind == "table":
            self.times = np.asarray(self.times, dtype=float)
            self.values = np.asarray(self.values, dtype=float)
            if self.times.ndim != 1 or self.values.shape != (self.times.size, 2):
                raise ValueError("disturbance table needs times (n,) and values (n, 2)")
            if not np.all(np.diff(self.times) > 0):
                raise ValueError("disturbance table times must be strictly increasing")


def inertia_matrix(params: RobotParams, q: np.ndarray) -> np.ndarray:
    """Inertia matrix M(q); symmetric by construction, positive-definite
    for any valid parameters."""
    a = params.m2 * params.l1 * params.l2 * math.cos(q[1])
    m22 = params.m2 * params.l2 ** 2
    m12 = m22 + a
    m11 = (params.m1 + params.m2) * params.l1 ** 2 + m22 + 2.0 * a
    return np.array([[m11, m12], [m12, m22]])


def coriolis_vector(params: RobotParams, state: JointState) -> np.ndarray:
    """Velocity-product torque vector n(q, qd).

    This is the Lagrangian (energy-consistent) form: the power it absorbs
    equals the rate of change of the inertia matrix along the motion,
    qd . n = 0.5 qd . (dM/dt) qd, so free motion with g = 0 conserves
    kinetic energy.  It equals C(q, qd) qd for the standard Christoffel
    matrix of this arm.
    """
    return _coriolis(params, state.q, state.qd)


def _coriolis(params: RobotParams, q: np.ndarray, qd: np.ndarray) -> np.ndarray:
    h = params.m2 * params.l1 * params.l2 * math.sin(q[1])
    qd1, qd2 = qd[0], qd[1]
    return np.array([-h * (2.0 * qd1 * qd2 + qd2 * qd2), h * qd1 * qd1])


def gravity_vector(params: RobotParams, q: np.ndarray) -> np.ndarray:
    """Gravity torque vector g(q) for angles measured from the upward
    vertical (zero at the upright pose because sin 0 = 0)."""
    s12 = math.sin(q[0] + q[1])
    g2 = -params.m2 * params.g * params.l2 * s12
    g1 = -(params.m1 + params.m2) * params.g * params.l1 * math.sin(q[0]) + g2
    return np.array([g1, g2])


def forward_dynamics(params: RobotParams, state: JointState, tau: np.ndarray,
                     d: np.ndarray) -> np.ndarray:
    """Joint accelerations qdd = M^-1 (tau - n - g) + d.

    d is the acceleration-level disturbance sample.  Raises
    SingularInertiaError if the inertia solve fails, which is unreachable
    for valid parameters and signals corruption.
    """
    return _forward_dynamics(params, state.q, state.qd, tau, d)


def _forward_dynamics(params: RobotParams, q: np.ndarray, qd: np.ndarray,
                      tau: np.ndarray, d: np.ndarray) -> np.ndarray:
    # array-level kernel shared with the simulation hot path
    M = inertia_matrix(params, q)
    rhs = tau - _coriolis(params, q, qd) - gravity_vector(params, q)
    try:
        qdd = numerics.solve2x2(M, rhs)
    except numerics.SingularMatrixError as exc:
        raise SingularInertiaError(f"inertia matrix singular at q={np.asarray(q).tolist()}") from exc
    return qdd + d


def disturbance_at(dist: Disturbance, t: float) -> np.ndarray:
    """Evaluate the configured disturbance signal at time t >= 0."""
    if t < 0.0:
        raise ValueError(f"disturbance time must be >= 0, got {t}")
    if dist.kind == "none":
        return np.zeros(2)
    if dist.kind == "constant":
        return dist.amplitude.copy()
    if dist.kind == "sinusoid":
        return dist.amplitude * math.sin(dist.frequency * t + dist.phase)
    # table
    if t < dist.times[0] or t > dist.times[-1]:
        raise ValueError(
            f"disturbance table lookup t={t} outside range "
            f"[{dist.times[0]}, {dist.times[-1]}]")
    return np.array([np.interp(t, dist.times, dist.values[:, 0]),
                     np.interp(t, dist.times, dist.values[:, 1])])


def kinetic_energy(params: RobotParams, state: JointState) -> float:
    """Kinetic energy 0.5 qd . M(q) qd."""
    M = inertia_matrix(params, state.q)
    return 0.5 * float(state.qd @ M @ state.qd)
