#!/usr/bin/env python3
"""
Jump Condition Engine Test Script

Tests:
1. Rankine-Hugoniot and conservation-form residuals
2. Mean-value (association) residuals and their regularized oracle
3. Strong-equality profile relations (H_v = H_u = H_sigma)
4. Integral jump condition against its closed form

Run: python scripts/test_jump_engine.py   (or: pytest scripts/test_jump_engine.py)
"""
import sys
sys.path.insert(0, '.')

import math
import os

import numpy as np
import pytest
from scipy import integrate

from app.core.exceptions import (
    DegenerateJumpError,
    MixedProfileError,
    NoJumpError,
    NoTravelingWaveSpeedError,
    ProfileError,
)
from app.models.profile import Profile
from app.core.config import get_settings
from app.models.shock import JumpResidual, ShockAnsatz
from app.services.jump_service import (
    ConservationEquation,
    FieldEquation,
    assoc_jump_residual,
    burgers_speed,
    check_waves,
    integral_condition,
    integral_jump_sigma,
    integral_jump_speed,
    k2_equations,
    k2_jump_residuals,
    k2_profile_chain,
    k2_wave_from_left,
    mass_profile,
    regularized_jump_residual,
    rh_speed,
    strong_profile_relation,
)

BURGERS = ConservationEquation(lambda w: w["u"], lambda w: 0.5 * w["u"] ** 2, "burgers")


def test_rh_speed_and_zero_jump():
    assert rh_speed(0.5 * (1.0 - 0.0), 1.0 - 0.0) == 0.5
    assert burgers_speed(1.0, 0.0) == 0.5
    with pytest.raises(NoJumpError):
        rh_speed(1.0, 0.0)


def test_conservation_residual_is_profile_free():
    print("\n[1] Burgers jump under arbitrary profiles...")
    rng = np.random.default_rng(3)
    for _ in range(5):
        u_l, u_r = rng.uniform(-2, 2, size=2)
        ansatz = ShockAnsatz({"u": u_l}, {"u": u_r - u_l}, burgers_speed(u_l, u_r),
                             {"u": Profile.random_monotone(rng)})
        assert abs(regularized_jump_residual(BURGERS, ansatz)) <= 1e-14
    print("    ✅ residual vanishes for every profile")


def test_k2_wave_satisfies_all_forms():
    print("\n[2] k^2-model wave from the closed-form back-solve...")
    left = {"v": 1.3, "u": 0.2, "sigma": -0.4}
    k = 1.7
    for family in (-1, +1):
        ansatz = k2_wave_from_left(left, -0.35, k, family)
        algebraic = k2_jump_residuals(ansatz, k)
        assert algebraic.passes(1e-12), algebraic.values
        for eq in k2_equations(k):
            assert abs(assoc_jump_residual(eq, ansatz)) <= 1e-12
        oracle = check_waves(k2_equations(k), ansatz)
        print(f"    family {family:+d}: c={ansatz.speed:.6f} oracle max={oracle.max_abs():.2e}")
        assert oracle.passes(1e-10)


def test_k2_speed_straddles_characteristic():
    left = {"v": 1.0, "u": 0.0, "sigma": 0.0}
    ansatz = k2_wave_from_left(left, 1e-6, 2.0, -1)
    assert ansatz.speed == pytest.approx(-2.0, abs=1e-5)

def test_violated_stress_law_leaves_its_defect():
    """Shifting the sigma jump of a valid wave by eta / (u_mean - c) leaves residual eta."""
    k = 1.3
    ansatz = k2_wave_from_left({"v": 1.1, "u": 0.1, "sigma": 0.2}, 0.3, k, +1)
    stress_law = k2_equations(k)[2]
    u_mean = ansatz.left["u"] + 0.5 * ansatz.delta["u"]
    for eta in (0.123, -0.05):
        delta = dict(ansatz.delta)
        delta["sigma"] += eta / (u_mean - ansatz.speed)
        broken = ShockAnsatz(dict(ansatz.left), delta, ansatz.speed, dict(ansatz.profiles))
        assert assoc_jump_residual(stress_law, broken) == pytest.approx(eta, abs=1e-12)
        assert regularized_jump_residual(stress_law, broken) == pytest.approx(eta, abs=1e-8)


def test_residual_tolerance_defaults_to_settings():
    """passes() without a tolerance reads GFSHOCK_RESIDUAL_TOL."""
    residual = JumpResidual({"mass": 5e-10, "momentum": -2e-9})
    get_settings.cache_clear()
    assert not residual.passes()
    assert residual.passes(1e-8)
    os.environ["GFSHOCK_RESIDUAL_TOL"] = "3e-9"
    try:
        get_settings.cache_clear()
        assert residual.passes()
    finally:
        del os.environ["GFSHOCK_RESIDUAL_TOL"]
        get_settings.cache_clear()
    assert not residual.passes()



def test_mixed_profiles_rejected_by_mean_value_rule():
    left = {"v": 1.0, "u": 0.0, "sigma": 0.0}
    ansatz = k2_wave_from_left(left, 0.2, 1.0, -1)
    mixed = ansatz.with_profiles({"v": Profile.linear(), "u": Profile.smoothstep(), "sigma": Profile.linear()})
    with pytest.raises(MixedProfileError):
        assoc_jump_residual(k2_equations(1.0)[0], mixed)


def test_mixed_profiles_break_the_associated_law():
    """The associated stress law only holds when sigma and u share a profile."""
    left = {"v": 1.0, "u": 0.0, "sigma": 0.0}
    ansatz = k2_wave_from_left(left, 0.4, 1.0, -1)
    mixed = ansatz.with_profiles({"v": Profile.linear(), "u": Profile.power(3.0), "sigma": Profile.linear()})
    assert abs(regularized_jump_residual(k2_equations(1.0)[2], mixed)) > 1e-4


def test_partial_jump_is_degenerate():
    ansatz = ShockAnsatz({"v": 1.0, "u": 0.0, "sigma": 0.0}, {"v": 0.1, "u": 0.0, "sigma": 0.0}, 0.0,
                         {n: Profile.linear() for n in ("v", "u", "sigma")})
    with pytest.raises(DegenerateJumpError):
        k2_jump_residuals(ansatz, 1.0)


def test_strong_profile_relations_force_equal_profiles():
    print("\n[3] Strong equality gives H_v = H_u = H_sigma...")
    rng = np.random.default_rng(2024)
    for i in range(20):
        alpha = rng.uniform(0.2, 3.0)
        h_u = Profile.linear(name="H_u") if i % 2 == 0 else Profile.random_monotone(rng, name="H_u")
        h_v, h_sigma = k2_profile_chain(alpha, h_u)
        assert np.max(np.abs(h_v.samples - h_u.samples)) <= 1e-8
        assert np.max(np.abs(h_sigma.samples - h_u.samples)) <= 1e-8
    print("    ✅ 20 random cases")


def test_inconsistent_relation_is_rejected():
    # dy/dq = 2 (1 + y) / (1 + q) ends at 3, not 1
    with pytest.raises(ProfileError):
        strong_profile_relation(lambda q, y, kn: 1.0 + q, lambda q, y, kn: -2.0 * (1.0 + y), Profile.linear())


def test_mass_profile_differs_from_velocity_profile():
    h_u = Profile.linear(name="H_u")
    # rho u is continuous, so c = 0
    h_rho = mass_profile(1.0, 2.0, 1.0, 0.5, 0.0, h_u)
    assert h_rho.samples[512] == pytest.approx(1.0 / 3.0, abs=1e-8)
    ansatz = ShockAnsatz({"rho": 1.0, "u": 1.0}, {"rho": 1.0, "u": -0.5}, 0.0, {"rho": h_rho, "u": h_u})
    mass = FieldEquation({"rho": (lambda s: 1.0, lambda s: s["u"]), "u": (None, lambda s: s["rho"])}, "mass")
    assert abs(regularized_jump_residual(mass, ansatz)) <= 1e-10


def test_integral_jump_speed_matches_closed_form():
    print("\n[4] Integral jump condition...")
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(100):
        u_l, u_r = rng.uniform(-2, 2, size=2)
        if abs(u_r - u_l) < 1e-2:
            continue
        gap = rng.uniform(0.1, 2.0)
        c = max(u_l, u_r) + gap if rng.random() < 0.5 else min(u_l, u_r) - gap
        d_sigma = integral_jump_sigma(u_l, u_r, c)
        # brute-force quadrature of the condition itself
        value, _ = integrate.quad(lambda lam: 1.0 / (u_l - c + (u_r - u_l) * lam), 0.0, 1.0, epsabs=1e-14)
        assert (u_r - u_l) * value == pytest.approx(d_sigma, abs=1e-12)
        assert abs(integral_condition(u_l, u_r, d_sigma, c)) <= 1e-10
        found = integral_jump_speed(u_l, u_r, d_sigma)
        worst = max(worst, abs(found - c))
        assert abs(found - c) <= 1e-10 * max(1.0, abs(c))
    print(f"    worst speed error: {worst:.2e}")


def test_integral_jump_rejects_inadmissible_data():
    with pytest.raises(NoTravelingWaveSpeedError):
        integral_jump_sigma(0.0, 1.0, 0.5)
    with pytest.raises(NoTravelingWaveSpeedError):
        integral_jump_speed(1.0, 1.0, 0.3)
    with pytest.raises(NoTravelingWaveSpeedError):
        integral_jump_speed(0.0, 1.0, 0.0)


def test_closed_form_is_the_log_ratio():
    assert integral_jump_sigma(1.0, 2.0, 0.0) == pytest.approx(math.log(2.0))


def main():
    print("=" * 60)
    print("JUMP CONDITION ENGINE TEST")
    print("=" * 60)

    try:
        test_rh_speed_and_zero_jump()
        test_conservation_residual_is_profile_free()
        test_k2_wave_satisfies_all_forms()
        test_k2_speed_straddles_characteristic()
        test_violated_stress_law_leaves_its_defect()
        test_residual_tolerance_defaults_to_settings()
        test_mixed_profiles_rejected_by_mean_value_rule()
        test_mixed_profiles_break_the_associated_law()
        test_partial_jump_is_degenerate()
        test_strong_profile_relations_force_equal_profiles()
        test_inconsistent_relation_is_rejected()
        test_mass_profile_differs_from_velocity_profile()
        test_integral_jump_speed_matches_closed_form()
        test_integral_jump_rejects_inadmissible_data()
        test_closed_form_is_the_log_ratio()

        print("\n" + "=" * 60)
        print("✅ ALL JUMP ENGINE TESTS PASSED!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed with error: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)


if __name__ == "__main__":
    main()
