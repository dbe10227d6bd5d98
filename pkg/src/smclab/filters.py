"""Second-order low-pass filtering of measured signals.

Unity-DC-gain filter w0^2 / (s^2 + 2 zeta w0 s + w0^2), discretized by
the bilinear (trapezoidal) transform and run in direct form II
transposed, two channels in parallel.  The numerator is renormalized so
the discrete DC gain is exactly 1.0 in floating point.  States are
initialized at the steady state of the first input sample, so a constant
input produces no startup transient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class FilterParams:
    """Damping ratio, natural frequency (rad/s) and sample period (s)."""

    zeta: float = 0.9
    omega0: float = 30.0
    dt: float = 0.00125

    def __post_init__(self):
        self.zeta = float(self.zeta)
        self.omega0 = float(self.omega0)
        self.dt = float(self.dt)
        if not self.zeta > 0.0:
            raise ValueError(f"filter.zeta must be positive, got {self.zeta}")
        if not self.omega0 > 0.0:
            raise ValueError(f"filter.omega0 must be positive, got {self.omega0}")
        if not self.dt > 0.0:
            raise ValueError(f"filter.dt must be positive, got {self.dt}")
        if not self.omega0 * self.dt < 2.0:
            raise ValueError(
                f"filter.omega0 * dt must be < 2 for a sane discretization, "
                f"got {self.omega0 * self.dt}")


def measurement_preset(dt: float = 0.00125) -> FilterParams:
    """Velocity-measurement smoothing set (zeta 0.9, 30 rad/s)."""
    return FilterParams(zeta=0.9, omega0=30.0, dt=dt)


def current_loop_preset(dt: float = 5e-5) -> FilterParams:
    """Fast current-feedback set (zeta 0.9, 3000 rad/s); shipped for
    completeness, unused by the default sensing path."""
    return FilterParams(zeta=0.9, omega0=3000.0, dt=dt)


def lowpass_coefficients(params: FilterParams) -> tuple[np.ndarray, np.ndarray]:
    """Discrete coefficients (b, a) with a[0] = 1 and sum(b) == sum(a)
    exactly, so H(z=1) is exactly 1.0."""
    K = 2.0 / params.dt
    w = params.omega0
    delta = K * K + 2.0 * params.zeta * K * w + w * w
    a1 = 2.0 * (w * w - K * K) / delta
    a2 = (K * K - 2.0 * params.zeta * K * w + w * w) / delta
    s = 1.0 + a1 + a2
    b = np.array([s / 4.0, s / 2.0, s / 4.0])
    return b, np.array([1.0, a1, a2])


@dataclass
class FilterState:
    """Direct-form-II-transposed internal states, one column per channel."""

    s1: np.ndarray = field(default_factory=lambda: np.zeros(2))
    s2: np.ndarray = field(default_factory=lambda: np.zeros(2))

    @classmethod
    def steady(cls, params: FilterParams, x0: np.ndarray) -> "FilterState":
        """State whose output already equals the constant input x0."""
        b, a = lowpass_coefficients(params)
        x0 = np.asarray(x0, dtype=float)
        return cls(s1=(1.0 - b[0]) * x0, s2=(b[2] - a[2]) * x0)


def filter_step(fstate: FilterState, params: FilterParams,
                x: np.ndarray) -> tuple[FilterState, np.ndarray]:
    """Process one input sample; returns the new state and the output."""
    b, a = lowpass_coefficients(params)
    x = np.asarray(x, dtype=float)
    y = b[0] * x + fstate.s1
    s1 = b[1] * x - a[1] * y + fstate.s2
    s2 = b[2] * x - a[2] * y
    return FilterState(s1=s1, s2=s2), y
