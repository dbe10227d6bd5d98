"""Three sliding-mode control laws for the two-link arm.

All laws are computed in acceleration space and mapped to joint torque
through the inertia matrix, so the commanded torque is

    tau = M(q) u + n(q, qd) + g(q)

with u the acceleration-space control.  This makes gravity compensation
at perfect tracking exact: with zero error and a static reference the
commanded torque is exactly n + g.

* ``conventional_smc_control``: classical first-order law with surface
  s = edot + lam * e and switching term eta * sign(s).
* ``nsmc_control``: integral-type surface
  f = edot + int(k1 sig(e) + k2 sig(edot)) dt, equivalent control
  u_eq = qdd_ref + k1 sig(e) + k2 sig(edot) plus reaching term
  u_r = kr * sign(e) (switchable to sign(f) via ``reaching_on``).
* ``ncsmc_control``: the same plus a continuous compound correction
  u_n = -mu1 e - mu2 edot, intended to shrink the burden carried by the
  switching term.

The error convention is e = q_ref - q.  sign(0) is taken as 0 so the
switching torque has no jump at an exact zero crossing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .dynamics import (RobotParams, JointState, inertia_matrix,
                       coriolis_vector, gravity_vector)
from .trajectory import Reference

REACHING_TARGETS = ("error", "surface")


@dataclass
class GainSet:
    """Diagonal controller gains, stored as per-joint 2-vectors.

    k1, k2 (surface), kr (switching) must be strictly positive; mu1, mu2
    (compound correction) may be zero, which degenerates the compound law
    to the plain integral-surface law.  alpha is the sig-function
    exponent; at the default 1.0, sig(x) = x.
    """

    k1: np.ndarray = field(default_factory=lambda: np.array([580.0, 580.0]))
    k2: np.ndarray = field(default_factory=lambda: np.array([50.0, 50.0]))
    kr: np.ndarray = field(default_factory=lambda: np.array([30.0, 30.0]))
    mu1: np.ndarray = field(default_factory=lambda: np.array([40.0, 40.0]))
    mu2: np.ndarray = field(default_factory=lambda: np.array([40.0, 40.0]))
    alpha: float = 1.0

    def __post_init__(self):
        for name in ("k1", "k2", "kr", "mu1", "mu2"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape == ():
                v = np.full(2, float(v))
            if v.shape != (2,):
                raise ValueError(f"gains.{name} must be a scalar or 2-vector")
            setattr(self, name, v)
        for name in ("k1", "k2", "kr"):
            if not np.all(getattr(self, name) > 0.0):
                raise ValueError(f"gains.{name} entries must be strictly positive")
        for name in ("mu1", "mu2"):
            if not np.all(getattr(self, name) >= 0.0):
                raise ValueError(f"gains.{name} entries must be non-negative")
        self.alpha = float(self.alpha)
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"gains.alpha must be in (0, 1], got {self.alpha}")


@dataclass
class ControllerState:
    """Running trapezoid of the surface integrand.

    ``surface_integral`` accumulates int(k1 sig(e) + k2 sig(edot)) dt.
    The first update binds the integrand sample at t = 0 without
    advancing; every later update integrates one step.
    """

    surface_integral: np.ndarray = field(default_factory=lambda: np.zeros(2))
    t_prev: float = 0.0
    prev_integrand: np.ndarray | None = None

    @classmethod
    def initial(cls) -> "ControllerState":
        return cls()


@dataclass
class ControlOutput:
    """Commanded torque, its logged components and the surface value.

    tau is the plain sum u_eq + u_r + u_n of the torque-space components
    (saturation, if any, is applied by the caller and logged separately).
    """

    tau: np.ndarray
    surface: np.ndarray
    u_eq: np.ndarray
    u_r: np.ndarray
    u_n: np.ndarray


def sig(x: np.ndarray, alpha: float) -> np.ndarray:
    """Component-wise |x|^alpha * sign(x); the identity when alpha = 1."""
    x = np.asarray(x, dtype=float)
    if alpha == 1.0:
        return x
    return np.abs(x) ** alpha * np.sign(x)


def surface_integrand(e: np.ndarray, edot: np.ndarray, gains: GainSet) -> np.ndarray:
    """Integrand k1 sig(e) + k2 sig(edot) of the surface integral."""
    return gains.k1 * sig(e, gains.alpha) + gains.k2 * sig(edot, gains.alpha)


def sliding_surface(state: ControllerState, e: np.ndarray, edot: np.ndarray,
                    gains: GainSet) -> np.ndarray:
    """Surface value f = edot + accumulated integral.  Does not mutate
    state; advancing the integral is update_surface_integral's job."""
    return np.asarray(edot, dtype=float) + state.surface_integral


def update_surface_integral(state: ControllerState, e: np.ndarray, edot: np.ndarray,
                            gains: GainSet, dt: float) -> ControllerState:
    """Advance the surface integral one step by the trapezoid rule.

    Uses the stored previous integrand and the current one over
    [t_prev, t_prev + dt].  The very first call binds the initial sample
    and leaves the integral (and t_prev) untouched, so the integral is
    exactly zero at t = 0.
    """
    if not dt > 0.0:
        raise ValueError(f"surface integral update needs dt > 0, got {dt} (clock went backwards?)")
    g_now = surface_integrand(e, edot, gains)
    if state.prev_integrand is None:
        return replace(state, prev_integrand=g_now)
    integral = state.surface_integral + (0.5 * dt) * (state.prev_integrand + g_now)
    return ControllerState(surface_integral=integral, t_prev=state.t_prev + dt,
                           prev_integrand=g_now)


def _sign(x: np.ndarray) -> np.ndarray:
    # np.sign already maps 0 -> 0
    return np.sign(x)


def _plant_terms(model: RobotParams, state: JointState):
    M = inertia_matrix(model, state.q)
    n = coriolis_vector(model, state)
    g = gravity_vector(model, state.q)
    return M, n, g


def nsmc_control(model: RobotParams, state: JointState, ref: Reference,
                 cstate: ControllerState, gains: GainSet,
                 reaching_on: str = "error") -> ControlOutput:
    """Integral-surface sliding-mode law.

    The equivalent component tracks the reference and cancels the known
    plant terms; the reaching component switches on sign(e) by default
    (``reaching_on="surface"`` switches on sign(f) instead).  The unknown
    disturbance cannot enter the equivalent control; rejecting it is the
    switching term's job.
    """
    if reaching_on not in REACHING_TARGETS:
        raise ValueError(f"reaching_on must be one of {REACHING_TARGETS}, got {reaching_on!r}")
    e = ref.q - state.q
    edot = ref.qd - state.qd
    f = sliding_surface(cstate, e, edot, gains)
    M, n, g = _plant_terms(model, state)
    u_track = ref.qdd + surface_integrand(e, edot, gains)
    switch = _sign(e) if reaching_on == "error" else _sign(f)
    tau_eq = M @ u_track + n + g
    tau_r = M @ (gains.kr * switch)
    return ControlOutput(tau=tau_eq + tau_r, surface=f, u_eq=tau_eq, u_r=tau_r,
                         u_n=np.zeros(2))


def ncsmc_control(model: RobotParams, state: JointState, ref: Reference,
                  cstate: ControllerState, gains: GainSet,
                  reaching_on: str = "error") -> ControlOutput:
    """Compound law: the integral-surface law plus the continuous
    correction u_n = -mu1 e - mu2 edot mapped through M(q).

    With mu1 = mu2 = 0 the output is bit-identical to nsmc_control.
    """
    base = nsmc_control(model, state, ref, cstate, gains, reaching_on)
    e = ref.q - state.q
    edot = ref.qd - state.qd
    # + 0.0 normalizes -0.0 so the mu = 0 case logs identically to nsmc
    u_comp = (-(gains.mu1 * e) - gains.mu2 * edot) + 0.0
    M = inertia_matrix(model, state.q)
    tau_n = (M @ u_comp) + 0.0
    return ControlOutput(tau=base.tau + tau_n, surface=base.surface,
                         u_eq=base.u_eq, u_r=base.u_r, u_n=tau_n)


def conventional_smc_control(model: RobotParams, state: JointState, ref: Reference,
                             lam: np.ndarray, eta: np.ndarray) -> ControlOutput:
    """Classical first-order sliding-mode baseline.

    Surface s = edot + lam e; torque
    tau = M (qdd_ref + lam edot) + n + g + M (eta sign(s)).  The logged
    surface is this controller's own s.
    """
    lam = np.asarray(lam, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if not (np.all(lam > 0.0) and np.all(eta > 0.0)):
        raise ValueError("smc lam and eta entries must be strictly positive")
    e = ref.q - state.q
    edot = ref.qd - state.qd
    s = edot + lam * e
    M, n, g = _plant_terms(model, state)
    tau_eq = M @ (ref.qdd + lam * edot) + n + g
    tau_r = M @ (eta * _sign(s))
    return ControlOutput(tau=tau_eq + tau_r, surface=s, u_eq=tau_eq, u_r=tau_r,
                         u_n=np.zeros(2))


def saturate(tau: np.ndarray, limit: float) -> np.ndarray:
    """Component-wise clamp of the commanded torque to [-limit, limit]."""
    if not limit > 0.0:
        raise ValueError(f"torque limit must be positive, got {limit}")
    return np.clip(tau, -limit, limit)
