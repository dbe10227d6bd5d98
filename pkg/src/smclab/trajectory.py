"""Reference trajectories and planar two-link kinematics.

Two reference kinds are supported:

* ``joint-sinusoid``: per-joint q_i(t) = offset_i + A_i sin(w_i t + phi_i)
  with analytic velocity and acceleration.
* ``cartesian-path``: a tip-space waypoint polyline with a quintic timing
  law per segment (zero velocity and acceleration at the waypoints, so
  the joint reference is C2), converted to joint space through inverse
  kinematics and the Jacobian chain.  A path whose last waypoint equals
  its first repeats periodically; an open path holds its final point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .dynamics import RobotParams

TRAJECTORY_KINDS = ("joint-sinusoid", "cartesian-path")
ELBOWS = ("up", "down")

# waypoints must sit strictly inside the reachable annulus by this margin
REACH_MARGIN = 1e-6


class UnreachableTargetError(ValueError):
    """Cartesian target outside the arm's reachable annulus."""


@dataclass
class Reference:
    """Desired joint position, velocity and acceleration at one instant."""

    q: np.ndarray
    qd: np.ndarray
    qdd: np.ndarray


@dataclass
class TrajectorySpec:
    kind: str = "joint-sinusoid"
    # joint-sinusoid fields (per joint)
    amplitude: np.ndarray = field(default_factory=lambda: np.array([0.5, 0.5]))
    frequency: np.ndarray = field(default_factory=lambda: np.array([1.0, 1.0]))
    phase: np.ndarray = field(default_factory=lambda: np.zeros(2))
    offset: np.ndarray = field(default_factory=lambda: np.zeros(2))
    # cartesian-path fields
    waypoints: np.ndarray | None = None
    segment_duration: float = 1.0
    elbow: str = "up"

    def __post_init__(self):
        if self.kind not in TRAJECTORY_KINDS:
            raise ValueError(f"trajectory.kind must be one of {TRAJECTORY_KINDS}, got {self.kind!r}")
        for name in ("amplitude", "frequency", "phase", "offset"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape == ():
                v = np.full(2, float(v))
            if v.shape != (2,):
                raise ValueError(f"trajectory.{name} must be a scalar or 2-vector")
            setattr(self, name, v)
        if self.kind == "cartesian-path":
            if self.waypoints is None:
                raise ValueError("trajectory.waypoints required for cartesian-path")
            self.waypoints = np.asarray(self.waypoints, dtype=float)
            if self.waypoints.ndim != 2 or self.waypoints.shape[1] != 2 or len(self.waypoints) < 2:
                raise ValueError("trajectory.waypoints must be an (n>=2, 2) list of (x, y)")
            self.segment_duration = float(self.segment_duration)
            if not self.segment_duration > 0.0:
                raise ValueError("trajectory.segment_duration must be positive")
            if self.elbow not in ELBOWS:
                raise ValueError(f"trajectory.elbow must be one of {ELBOWS}, got {self.elbow!r}")

    def validate_waypoints(self, params: RobotParams) -> None:
        """Check every waypoint sits strictly inside the reachable annulus."""
        if self.kind != "cartesian-path":
            return
        lo = abs(params.l1 - params.l2) + REACH_MARGIN
        hi = params.l1 + params.l2 - REACH_MARGIN
        for i, (x, y) in enumerate(self.waypoints):
            r = math.hypot(x, y)
            if not lo < r < hi:
                raise UnreachableTargetError(
                    f"trajectory.waypoints[{i}] = ({x}, {y}) is outside the reachable "
                    f"annulus {lo:.6g} < r < {hi:.6g} (r = {r:.6g})")

    @property
    def is_closed(self) -> bool:
        return self.kind == "cartesian-path" and bool(
            np.allclose(self.waypoints[0], self.waypoints[-1], atol=1e-12))


def forward_kinematics(params: RobotParams, q: np.ndarray) -> np.ndarray:
    """Tip position (x, y) of the two-link arm."""
    s1 = math.sin(q[0])
    c1 = math.cos(q[0])
    s12 = math.sin(q[0] + q[1])
    c12 = math.cos(q[0] + q[1])
    return np.array([params.l1 * c1 + params.l2 * c12,
                     params.l1 * s1 + params.l2 * s12])


def jacobian(params: RobotParams, q: np.ndarray) -> np.ndarray:
    """Tip-velocity Jacobian J(q) with xy_dot = J qd."""
    s1 = math.sin(q[0])
    c1 = math.cos(q[0])
    s12 = math.sin(q[0] + q[1])
    c12 = math.cos(q[0] + q[1])
    return np.array([[-params.l1 * s1 - params.l2 * s12, -params.l2 * s12],
                     [params.l1 * c1 + params.l2 * c12, params.l2 * c12]])


def _jacobian_dot(params: RobotParams, q: np.ndarray, qd: np.ndarray) -> np.ndarray:
    th1d = qd[0]
    th12d = qd[0] + qd[1]
    c1 = math.cos(q[0])
    s1 = math.sin(q[0])
    c12 = math.cos(q[0] + q[1])
    s12 = math.sin(q[0] + q[1])
    return np.array([
        [-params.l1 * c1 * th1d - params.l2 * c12 * th12d, -params.l2 * c12 * th12d],
        [-params.l1 * s1 * th1d - params.l2 * s12 * th12d, -params.l2 * s12 * th12d],
    ])


def inverse_kinematics(params: RobotParams, target: np.ndarray, elbow: str = "up") -> np.ndarray:
    """Joint angles reaching the tip target; elbow selects the branch.

    "down" gives q2 in [0, pi], "up" the mirrored q2 in [-pi, 0].  Raises
    UnreachableTargetError outside the annulus |l1 - l2| < r < l1 + l2.
    """
    if elbow not in ELBOWS:
        raise ValueError(f"elbow must be one of {ELBOWS}, got {elbow!r}")
    x = float(target[0])
    y = float(target[1])
    r2 = x * x + y * y
    l1, l2 = params.l1, params.l2
    c2 = (r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)
    if not -1.0 <= c2 <= 1.0:
        # allow roundoff-level excursions right at the annulus boundary
        if abs(c2) > 1.0 + 1e-12:
            raise UnreachableTargetError(
                f"target ({x}, {y}) outside reachable annulus "
                f"{abs(l1 - l2):.6g} < r < {l1 + l2:.6g} (r = {math.sqrt(r2):.6g})")
        c2 = max(-1.0, min(1.0, c2))
    q2 = math.acos(c2)
    if elbow == "up":
        q2 = -q2
    q1 = math.atan2(y, x) - math.atan2(l2 * math.sin(q2), l1 + l2 * math.cos(q2))
    return np.array([q1, q2])


def _quintic(sigma: float) -> tuple[float, float, float]:
    """Smoothstep 10 s^3 - 15 s^4 + 6 s^5 and its first two derivatives
    with respect to sigma."""
    s = sigma
    p = s * s * s * (10.0 + s * (-15.0 + 6.0 * s))
    dp = s * s * (30.0 + s * (-60.0 + 30.0 * s))
    ddp = s * (60.0 + s * (-180.0 + 120.0 * s))
    return p, dp, ddp


def _cartesian_point(spec: TrajectorySpec, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n_seg = len(spec.waypoints) - 1
    total = n_seg * spec.segment_duration
    if spec.is_closed:
        t = t % total
    elif t >= total:
        return spec.waypoints[-1].copy(), np.zeros(2), np.zeros(2)
    i = min(int(t / spec.segment_duration), n_seg - 1)
    sigma = (t - i * spec.segment_duration) / spec.segment_duration
    p0 = spec.waypoints[i]
    dp = spec.waypoints[i + 1] - p0
    s, ds, dds = _quintic(sigma)
    T = spec.segment_duration
    return p0 + dp * s, dp * (ds / T), dp * (dds / (T * T))


def reference_at(spec: TrajectorySpec, params: RobotParams, t: float) -> Reference:
    """Reference (q, qd, qdd) at time t >= 0.

    Derivatives are analytic for the sinusoid; for the cartesian path the
    joint-space derivatives come from the inverse-kinematics Jacobian
    chain qd = J^-1 pd, qdd = J^-1 (pdd - Jdot qd).
    """
    if t < 0.0:
        raise ValueError(f"reference time must be >= 0, got {t}")
    if spec.kind == "joint-sinusoid":
        w = spec.frequency
        ph = w * t + spec.phase
        q = spec.offset + spec.amplitude * np.sin(ph)
        qd = spec.amplitude * w * np.cos(ph)
        qdd = -spec.amplitude * w * w * np.sin(ph)
        return Reference(q, qd, qdd)
    p, pd, pdd = _cartesian_point(spec, t)
    q = inverse_kinematics(params, p, spec.elbow)
    J = jacobian(params, q)
    qd = numerics.solve2x2(J, pd)
    qdd = numerics.solve2x2(J, pdd - _jacobian_dot(params, q, qd) @ qd)
    return Reference(q, qd, qdd)
