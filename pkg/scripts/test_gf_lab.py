#!/usr/bin/env python3
"""
Regularized Heaviside Lab Test Script

Tests:
1. Heaviside moments are exact and profile independent
2. Mean-value rule: integral of H^n H' = 1/(n+1) for every profile
3. Pairings with test functions and the association verdict
4. Profile validation

Run: python scripts/test_gf_lab.py   (or: pytest scripts/test_gf_lab.py)
"""
import sys
sys.path.insert(0, '.')

import numpy as np
import pytest

from app.core.exceptions import AssociationError, ProfileError
from app.models.profile import (
    Profile,
    RampPolynomial,
    RegularizedField,
    RegularizedStep,
    TestFunction,
)
from app.services.gf_lab_service import (
    association_check,
    delta_pairing,
    mean_value,
    moment_integral,
    ramp_integral,
)

# (H^2 - H) as a polynomial in the first ramp value
H2_MINUS_H = RampPolynomial.in_p([0.0, -1.0, 1.0])


def _profiles(rng):
    return [Profile.linear(), Profile.power(2.0), Profile.power(0.5), Profile.smoothstep(),
            Profile.kinked(0.25, 0.8)] + [Profile.random_monotone(rng) for _ in range(5)]


def test_heaviside_moment_linear():
    """integral of (H^2 - H) H' = -1/6 on the linear ramp."""
    print("\n[1] Heaviside moment on the linear ramp...")
    h = Profile.linear()
    value = moment_integral(H2_MINUS_H, h, h)
    print(f"    value: {value:.16f} (expected: {-1 / 6:.16f})")
    assert abs(value + 1.0 / 6.0) <= 1e-12


def test_heaviside_moment_random_profiles():
    print("\n[2] Heaviside moment on random monotone profiles...")
    rng = np.random.default_rng(7)
    for i in range(5):
        h = Profile.random_monotone(rng)
        value = moment_integral(H2_MINUS_H, h, h)
        assert abs(value + 1.0 / 6.0) <= 1e-10, f"profile {i}: {value}"
    print("    ✅ 5 random profiles agree")


def test_mean_value_rule_every_profile():
    print("\n[3] Mean-value rule H^n H' ~ H'/(n+1)...")
    rng = np.random.default_rng(11)
    for profile in _profiles(rng):
        for n in range(1, 7):
            f = RampPolynomial.in_q([0.0] * n + [1.0])
            value = moment_integral(f, profile, profile)
            assert abs(value - 1.0 / (n + 1)) <= 1e-10, (profile.name, n, value)
    print("    ✅ n = 1..6 on linear, power, smoothstep, kinked and random ramps")


def test_mean_value_matches_moment():
    for n in range(1, 7):
        assert mean_value(lambda t, n=n: t ** n) == pytest.approx(1.0 / (n + 1), abs=1e-14)


def test_different_profiles_change_the_moment():
    """H_a H_b' depends on the pair: linear against t^2 gives 2/3, not 1/2."""
    a, b = Profile.linear(), Profile.power(2.0)
    value = moment_integral(RampPolynomial.in_p([0.0, 1.0]), a, b)
    assert abs(value - 2.0 / 3.0) <= 1e-5
    assert abs(value - 0.5) > 0.1


def test_ramp_integral_per_variable_profiles():
    profiles = {"a": Profile.linear(), "b": Profile.smoothstep()}

    def integrand(values, slopes):
        return values["a"] * slopes["b"]

    # integral t d(3t^2 - 2t^3) = integral 6t^2 - 6t^3 = 2 - 3/2
    assert ramp_integral(integrand, profiles) == pytest.approx(0.5, abs=1e-6)


def test_delta_pairing_tends_to_phi_at_zero():
    print("\n[4] Dirac representative against a bump...")
    phi = TestFunction.bump(0.0, 1.0)
    for profile in (Profile.linear(), Profile.smoothstep()):
        value = delta_pairing(RegularizedStep(profile, 1e-3), phi)
        print(f"    {profile.name}: {value:.10f}")
        assert abs(value - 1.0) <= 1e-4


def test_delta_pairing_first_moment_and_order():
    """<delta_eps, x> = eps/2 on the linear ramp; the error against phi(0) decays like eps."""
    identity = TestFunction((-1.0, 1.0), lambda x: x)
    assert delta_pairing(RegularizedStep(Profile.linear(), 1e-2), identity) == pytest.approx(5e-3, rel=1e-10)

    phi = TestFunction.bump(0.2, 1.0)
    target = phi(np.array([0.0]))[0]
    eps = np.array([1e-3, 5e-4, 2.5e-4, 1.25e-4])
    for profile in (Profile.linear(), Profile.power(2.0), Profile.smoothstep()):
        errors = [abs(delta_pairing(RegularizedStep(profile, e), phi) - target) for e in eps]
        order = np.polyfit(np.log(eps), np.log(errors), 1)[0]
        print(f"    {profile.name}: pairing error order {order:.4f}")
        assert order >= 0.99


def test_h_squared_is_associated_with_h_on_every_profile():
    """H^2 - H lives on the ramp only, so its pairing is eps times a constant."""
    print("\n[4b] H^2 vs H on every profile...")
    rng = np.random.default_rng(11)
    phi = TestFunction.bump()
    eps = [1e-2, 5e-3, 2.5e-3, 1.25e-3]
    for profile in _profiles(rng):
        report = association_check(RegularizedField.heaviside_power(profile, 2),
                                   RegularizedField.heaviside_power(profile, 1), phi, eps)
        assert report.tends_to_zero, profile.name
        assert report.order >= 0.99, (profile.name, report.order)
    print("    ✅ order ~ 1 on 10 profiles")


def test_test_function_vanishes_outside_support():
    phi = TestFunction.bump(0.5, 0.25)
    assert np.all(phi(np.array([0.0, 0.25, 0.75, 1.0])) == 0.0)
    assert phi(np.array([0.5]))[0] == pytest.approx(1.0)


def test_association_verdicts():
    print("\n[5] Association verdicts...")
    h = Profile.linear()
    phi = TestFunction.bump(0.2, 1.0)
    eps = [1e-1, 5e-2, 2.5e-2, 1.25e-2]

    h2_delta = RegularizedField.heaviside_power_delta(h, 2)
    third_delta = RegularizedField(h, lambda hv, dh: dh / 3.0, "delta/3")
    report = association_check(h2_delta, third_delta, phi, eps)
    print(f"    H^2 delta vs delta/3: order={report.order:.3f} -> {report.tends_to_zero}")
    assert report.tends_to_zero
    assert report.order >= 0.5

    h_delta = RegularizedField.heaviside_power_delta(h, 1)
    delta = RegularizedField(h, lambda hv, dh: dh, "delta")
    report = association_check(h_delta, delta, phi, eps)
    print(f"    H delta vs delta: values={report.values} -> {report.tends_to_zero}")
    assert not report.tends_to_zero


def test_identical_fields_are_associated_with_infinite_order():
    h = Profile.smoothstep()
    g = RegularizedField.heaviside_power(h, 3)
    report = association_check(g, g, TestFunction.bump(), [1e-1, 1e-2])
    assert report.tends_to_zero
    assert report.order == float("inf")


def test_association_rejects_bad_sequences():
    g = RegularizedField.heaviside_power(Profile.linear(), 1)
    phi = TestFunction.bump()
    with pytest.raises(AssociationError):
        association_check(g, g, phi, [1e-2, 1e-1])
    with pytest.raises(AssociationError):
        association_check(g, g, phi, [1e-2])


def test_profile_validation():
    with pytest.raises(ProfileError):
        Profile(np.array([0.0, 0.5, 0.9]))
    with pytest.raises(ProfileError):
        Profile(np.array([0.0, 0.7, 0.4, 1.0]))
    with pytest.raises(ProfileError):
        RegularizedStep(Profile.linear(), 0.0)
    with pytest.raises(ProfileError):
        Profile.kinked(1.0, 0.5)


def test_kinked_profile_hits_its_knot():
    p = Profile.kinked(0.5, 0.2, M=1024)
    assert p.samples[512] == pytest.approx(0.2, abs=1e-15)
    assert p(0.75) == pytest.approx(0.6)


def main():
    print("=" * 60)
    print("REGULARIZED HEAVISIDE LAB TEST")
    print("=" * 60)

    try:
        test_heaviside_moment_linear()
        test_heaviside_moment_random_profiles()
        test_mean_value_rule_every_profile()
        test_mean_value_matches_moment()
        test_different_profiles_change_the_moment()
        test_ramp_integral_per_variable_profiles()
        test_delta_pairing_tends_to_phi_at_zero()
        test_delta_pairing_first_moment_and_order()
        test_h_squared_is_associated_with_h_on_every_profile()
        test_test_function_vanishes_outside_support()
        test_association_verdicts()
        test_identical_fields_are_associated_with_infinite_order()
        test_association_rejects_bad_sequences()
        test_profile_validation()
        test_kinked_profile_hits_its_knot()

        print("\n" + "=" * 60)
        print("✅ ALL GF LAB TESTS PASSED!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed with error: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)


if __name__ == "__main__":
    main()
