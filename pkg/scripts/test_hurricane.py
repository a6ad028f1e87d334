#!/usr/bin/env python3
"""
Hurricane Wind-Field Test Script

Tests:
1. The trade wind is a fixed point
2. Maximum relative wind speed never grows when vertical action <= friction
3. Solid-body rotation balanced by Coriolis stays steady and converges
4. Eye tracking, schedules and the stability guard

Run: python scripts/test_hurricane.py   (or: pytest scripts/test_hurricane.py)
"""
import sys
sys.path.insert(0, '.')

import numpy as np
import pytest

from app.core.exceptions import StabilityViolationError
from app.models.wind import HurricaneParams, WindField
from app.services.hurricane_service import (
    backtrack,
    eye_position,
    hurricane_step,
    relative_speed,
    ring_vortex,
    run_hurricane,
    solid_body_rotation,
    source_exact,
    stable_dt,
)

TRADE = (0.2, -0.1)


def _ring(nx=41, dx=0.25):
    return ring_vortex(nx, nx, dx, dx, 5.0, 5.0, 0.75, 2.5, 1.0, TRADE)


def _gaussian_vortex(n, width=0.3):
    dx = 2.0 / n
    x = dx * np.arange(n + 1)
    xx, yy = np.meshgrid(x, x)
    rx, ry = xx - 1.0, yy - 1.0
    g = np.exp(-(rx ** 2 + ry ** 2) / width ** 2) * np.sqrt(2.0 * np.e) / width
    return WindField(dx, dx, -ry * g, rx * g)


def test_trade_wind_is_a_fixed_point():
    print("\n[1] Uniform trade wind...")
    field = WindField(0.5, 0.5, np.full((12, 15), TRADE[0]), np.full((12, 15), TRADE[1]))
    params = HurricaneParams(omega=1.0, mu=0.1, kcoef=0.3, trade=TRADE)
    for _ in range(10):
        field = hurricane_step(field, params, 0.4)
    assert np.max(np.abs(field.u - TRADE[0])) <= 1e-12
    assert np.max(np.abs(field.v - TRADE[1])) <= 1e-12


def test_source_is_a_damped_rotation():
    params = HurricaneParams(omega=2.0, mu=0.3, kcoef=0.1)
    u, v = source_exact(np.array([1.0]), np.array([0.0]), params, 0.25)
    assert np.hypot(u, v)[0] == pytest.approx(np.exp(-0.2 * 0.25))
    assert np.arctan2(v, u)[0] == pytest.approx(-0.5)


def test_max_relative_speed_never_grows():
    print("\n[2] Max relative speed under friction...")
    field = _ring()
    params = HurricaneParams(omega=1.0, mu=0.1, kcoef=0.05, trade=TRADE)
    peak = relative_speed(field, params).max()
    for _ in range(25):
        field = hurricane_step(field, params, stable_dt(field, 0.8))
        new_peak = relative_speed(field, params).max()
        assert new_peak <= peak * (1.0 + 1e-12)
        peak = new_peak
    print(f"    peak after 25 steps: {peak:.6f}")


def test_balanced_solid_body_rotation_converges():
    print("\n[3] Solid-body rotation balanced by Coriolis...")
    spin = 1.0
    params = HurricaneParams(omega=-spin, mu=0.2, kcoef=0.2)
    errors, spacings = [], []
    for n in (20, 40, 80):
        dx = 2.0 / n
        start = solid_body_rotation(n + 1, n + 1, dx, dx, 1.0, 1.0, spin)
        field = start
        for _ in range(n // 2):
            field = hurricane_step(field, params, 1.0 / n)
        xx, yy = np.meshgrid(field.x, field.y)
        disk = np.hypot(xx - 1.0, yy - 1.0) <= 0.5
        err = max(np.max(np.abs(field.u - start.u)[disk]), np.max(np.abs(field.v - start.v)[disk]))
        errors.append(err)
        spacings.append(dx)
        print(f"    N={n:3d}: max error {err:.3e}")
    order = np.polyfit(np.log(spacings), np.log(errors), 1)[0]
    print(f"    observed order {order:.2f}")
    assert order >= 1.0


def test_balanced_friction_step_error_shrinks_with_the_grid():
    """With k = mu and no rotation, speeds are carried unchanged along particles."""
    params = HurricaneParams(omega=0.0, mu=0.1, kcoef=0.1)
    changes, spacings = [], []
    for n in (64, 128, 256):
        field = _gaussian_vortex(n)
        before = field.speed().max()
        after = hurricane_step(field, params, 0.5 * field.dx).speed().max()
        changes.append(abs(after - before))
        spacings.append(field.dx)
    assert changes[0] > changes[1] > changes[2]
    order = np.polyfit(np.log(spacings), np.log(changes), 1)[0]
    print(f"    k = mu: per-step change of the peak speed, order {order:.2f}")
    assert order >= 2.0


def test_backtrack_on_uniform_and_calm_fields():
    shape = (21, 21)
    uniform = WindField(0.1, 0.1, np.full(shape, 0.3), np.full(shape, -0.2))
    x = np.array([0.5, 1.0, 1.37])
    y = np.array([0.8, 1.0, 0.61])
    bx, by = backtrack(uniform, x, y, 0.25)
    assert np.allclose(bx, x - 0.3 * 0.25, atol=1e-14)
    assert np.allclose(by, y + 0.2 * 0.25, atol=1e-14)

    calm = WindField(0.1, 0.1, np.zeros(shape), np.zeros(shape))
    bx, by = backtrack(calm, x, y, 0.25)
    assert np.array_equal(bx, x) and np.array_equal(by, y)


def test_step_rejects_a_long_displacement():
    field = _ring()
    with pytest.raises(StabilityViolationError):
        hurricane_step(field, HurricaneParams(1.0, 0.1, 0.1, TRADE), 2.0 * field.dx)


def test_schedule_switches_coefficients():
    params = HurricaneParams(1.0, 0.1, 0.1, TRADE, schedule=[(2.5, {"mu": 0.15}), (4.0, {"trade_u": 0.0})])
    assert params.at(2.0).mu == 0.1
    assert params.at(2.5).mu == 0.15
    later = params.at(4.5)
    assert (later.mu, later.trade, later.omega) == (0.15, (0.0, TRADE[1]), 1.0)


def test_ring_vortex_layout():
    field = _ring()
    speed = field.speed()
    r = np.hypot(*np.meshgrid(field.x - 5.0, field.y - 5.0))
    assert np.all(speed[r < 0.75] == 0.0)
    assert np.allclose(speed[(r >= 0.75) & (r <= 2.5)], 1.0)
    assert np.allclose(field.u[r > 2.5], TRADE[0])


def test_eye_track_follows_the_calm_center():
    print("\n[4] Eye track...")
    params = HurricaneParams(omega=1.0, mu=0.1, kcoef=0.1, trade=TRADE)
    field = _ring()
    eye = eye_position(field, params)
    assert np.hypot(eye.x - 5.0, eye.y - 5.0) < 0.75

    seen = []
    snapshots, track, steps = run_hurricane(field, params, 0.5, 0.8, [0.0, 0.25, 0.5], seen.append)
    assert [s.time for s in snapshots] == [0.0, 0.25, 0.5]
    assert len(track) == 3 and len(seen) == 3
    assert steps >= 1
    for point in track:
        print(f"    t={point.time:.2f}: eye at ({point.x:.2f}, {point.y:.2f})")
        assert np.hypot(point.x - 5.0, point.y - 5.0) <= 0.75 + 2 * field.dx


def main():
    print("=" * 60)
    print("HURRICANE WIND-FIELD TEST")
    print("=" * 60)

    try:
        test_trade_wind_is_a_fixed_point()
        test_source_is_a_damped_rotation()
        test_max_relative_speed_never_grows()
        test_balanced_solid_body_rotation_converges()
        test_balanced_friction_step_error_shrinks_with_the_grid()
        test_backtrack_on_uniform_and_calm_fields()
        test_step_rejects_a_long_displacement()
        test_schedule_switches_coefficients()
        test_ring_vortex_layout()
        test_eye_track_follows_the_calm_center()

        print("\n" + "=" * 60)
        print("✅ ALL HURRICANE TESTS PASSED!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed with error: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)


if __name__ == "__main__":
    main()
