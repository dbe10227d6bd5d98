"""Fixed-step ODE stepping and small dense linear algebra.

Only fixed-step explicit methods are provided.  The switching term in the
control laws is discontinuous, so adaptive error estimators misbehave on
the closed loop; a fixed step also matches the discrete controller, which
is held constant across each step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

METHODS = ("euler", "rk4")

# dt ceiling for closed-loop scenarios (the switching term makes the loop
# stiff); enforced by Scenario, not here, so the stepper itself can be
# used on ordinary smooth problems at any step size.
MAX_SCENARIO_DT = 0.01


class SingularMatrixError(ArithmeticError):
    """2x2 solve rejected because the determinant is below threshold."""


class IntegrationDivergedError(RuntimeError):
    """A step produced a non-finite state.  Carries the step's t and x."""

    def __init__(self, t: float, x: np.ndarray):
        self.t = float(t)
        self.x = np.asarray(x)
        super().__init__(f"integration diverged at t={self.t:.6g}, state={self.x.tolist()}")


@dataclass
class IntegratorConfig:
    method: str = "rk4"
    dt: float = 0.00125

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"integrator.method must be one of {METHODS}, got {self.method!r}")
        self.dt = float(self.dt)
        if not self.dt > 0.0:
            raise ValueError(f"integrator.dt must be positive, got {self.dt}")


def solve2x2(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A x = b for a 2x2 system by the closed-form inverse.

    Raises SingularMatrixError when |det A| <= 1e-12 * max|A_ij|.
    """
    a00 = float(A[0, 0])
    a01 = float(A[0, 1])
    a10 = float(A[1, 0])
    a11 = float(A[1, 1])
    det = a00 * a11 - a01 * a10
    scale = max(abs(a00), abs(a01), abs(a10), abs(a11))
    if abs(det) <= 1e-12 * scale:
        raise SingularMatrixError(f"2x2 system is singular (det={det:.3e}, scale={scale:.3e})")
    b0 = float(b[0])
    b1 = float(b[1])
    return np.array([(a11 * b0 - a01 * b1) / det, (a00 * b1 - a10 * b0) / det])


def step(f: Callable[[float, np.ndarray], np.ndarray], x: np.ndarray, t: float,
         cfg: IntegratorConfig) -> np.ndarray:
    """Advance x(t) to x(t + cfg.dt) with the configured method.

    f(t, x) is the state derivative.  rk4 is the classical 4-stage scheme.
    Raises IntegrationDivergedError (carrying t and the pre-step state) if
    the step produces a non-finite result.
    """
    dt = cfg.dt
    if cfg.method == "euler":
        x_next = x + dt * f(t, x)
    else:
        k1 = f(t, x)
        k2 = f(t + 0.5 * dt, x + (0.5 * dt) * k1)
        k3 = f(t + 0.5 * dt, x + (0.5 * dt) * k2)
        k4 = f(t + dt, x + dt * k3)
        x_next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    # a non-finite entry always poisons the sum (inf - inf is nan)
    if not math.isfinite(float(x_next.sum())):
        raise IntegrationDivergedError(t, x)
    return x_next
