import math

import numpy as np
import pytest

from smclab.numerics import (IntegrationDivergedError, IntegratorConfig,
                             SingularMatrixError, solve2x2, step)


def test_config_validation():
    with pytest.raises(ValueError, match="method"):
        IntegratorConfig(method="rk45")
    with pytest.raises(ValueError, match="positive"):
        IntegratorConfig(dt=0.0)


def test_zero_derivative_keeps_state():
    cfg = IntegratorConfig(method="rk4", dt=0.1)
    x = np.array([1.5, -2.5])
    out = step(lambda t, x: np.zeros(2), x, 0.0, cfg)
    assert np.array_equal(out, x)


def test_rk4_matches_degree4_taylor_of_exponential():
    # oracle: 1 - h + h^2/2 - h^3/6 + h^4/24 at h = 0.1 is 0.9048375
    cfg = IntegratorConfig(method="rk4", dt=0.1)
    out = step(lambda t, x: -x, np.array([1.0]), 0.0, cfg)
    assert out[0] == pytest.approx(0.9048375, abs=1e-15)


def test_rk4_integrates_cosine_to_sine():
    cfg = IntegratorConfig(method="rk4", dt=1e-3)
    x = np.array([0.0])
    t = 0.0
    n = int(np.pi // cfg.dt)
    for k in range(n):
        x = step(lambda tt, xx: np.array([math.cos(tt)]), x, t, cfg)
        t = (k + 1) * cfg.dt
    final = IntegratorConfig(method="rk4", dt=np.pi - t)
    x = step(lambda tt, xx: np.array([math.cos(tt)]), x, t, final)
    assert abs(x[0] - math.sin(np.pi)) <= 1e-9


@pytest.mark.parametrize("method,order", [("euler", 1.0), ("rk4", 4.0)])
def test_measured_convergence_order_smooth_ode(method, order):
    # xdot = -x + cos t, smooth; endpoint error vs a fine rk4 reference
    def f(t, x):
        return -x + np.array([math.cos(t)])

    def integrate(m, dt, T=1.0):
        x = np.array([0.3])
        n = int(round(T / dt))
        cfg = IntegratorConfig(method=m, dt=dt)
        for k in range(n):
            x = step(f, x, k * dt, cfg)
        return x[0]

    ref = integrate("rk4", 1.0 / 4096)
    errs = [abs(integrate(method, dt) - ref) for dt in (1 / 64, 1 / 128, 1 / 256)]
    measured = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    for p in measured:
        assert abs(p - order) <= 0.5


def test_step_deterministic():
    cfg = IntegratorConfig(method="rk4", dt=0.01)

    def f(t, x):
        return np.sin(x) + t

    x = np.array([0.2, 0.4, -1.0])
    a = step(f, x, 0.3, cfg)
    b = step(f, x, 0.3, cfg)
    assert np.array_equal(a, b)


def test_divergence_error_carries_context():
    cfg = IntegratorConfig(method="euler", dt=0.01)
    x0 = np.array([1.0, 2.0])
    with pytest.raises(IntegrationDivergedError) as err:
        step(lambda t, x: np.array([np.inf, 0.0]), x0, 0.75, cfg)
    assert err.value.t == 0.75
    assert np.array_equal(err.value.x, x0)


def test_solve2x2_identity_and_diagonal():
    assert np.array_equal(solve2x2(np.eye(2), np.array([3.0, 4.0])), np.array([3.0, 4.0]))
    out = solve2x2(np.diag([2.0, 5.0]), np.array([2.0, 5.0]))
    assert out == pytest.approx(np.array([1.0, 1.0]), abs=1e-16)


def test_solve2x2_cramer_frozen_value():
    # oracle by Cramer: det = 11, x = (1*3 - 1*2)/11, y = (4*2 - 1*1)/11
    out = solve2x2(np.array([[4.0, 1.0], [1.0, 3.0]]), np.array([1.0, 2.0]))
    assert out[0] == pytest.approx(1.0 / 11.0, abs=1e-15)
    assert out[1] == pytest.approx(7.0 / 11.0, abs=1e-15)


def test_solve2x2_residual_property(rng):
    count = 0
    while count < 200:
        A = rng.uniform(-2, 2, (2, 2))
        scale = np.max(np.abs(A))
        if abs(np.linalg.det(A)) < 0.05 * scale * scale:
            continue
        count += 1
        b = rng.uniform(-5, 5, 2)
        x = solve2x2(A, b)
        resid = np.max(np.abs(A @ x - b))
        assert resid <= 1e-10 * max(np.max(np.abs(b)), 1e-30)


def test_solve2x2_singular_raises():
    with pytest.raises(SingularMatrixError):
        solve2x2(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 1.0]))
    with pytest.raises(SingularMatrixError):
        solve2x2(np.zeros((2, 2)), np.zeros(2))
