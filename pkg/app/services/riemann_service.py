"""
Riemann Solvers - Burgers and the k^2-model

Every solver returns a RiemannFan in the grid variables of its system.
Waves carry the profile assignment under which their jump relations
were derived, so the regularized oracle can re-check them.
"""

import logging
import math
from typing import Optional

import numpy as np

from app.core.exceptions import NoAdmissibleMiddleStateError
from app.models.fan import RiemannFan, Wave, empty_fan
from app.models.states import K2State
from app.services.jump_service import burgers_speed, k2_wave_slope
from app.utils.newton import damped_newton

logger = logging.getLogger(__name__)

# contacts with a smaller relative volume jump are dropped from the fan
CONTACT_TOL = 1e-9


# ============================================================
# BURGERS
# ============================================================

def burgers_riemann(u_l: float, u_r: float) -> RiemannFan:
    """One discontinuity at the midpoint speed, also for expansive data."""
    left, right = np.array([u_l], dtype=float), np.array([u_r], dtype=float)
    if u_l == u_r:
        return empty_fan(left)
    return RiemannFan(left, right, [Wave(burgers_speed(u_l, u_r), left, right)])


# ============================================================
# k^2-MODEL
# ============================================================

def _k2_side(outer_v: float, outer_u: float, outer_sigma: float, v_mid: float, k: float, family: int):
    """(u, sigma, c) behind a wave of the given family reached from an outer state."""
    m = k2_wave_slope(outer_v, v_mid, k, family)
    dv = v_mid - outer_v
    u_mid = outer_u + m * dv
    sigma_mid = outer_sigma + m * m * dv
    c = outer_u - outer_v * m
    return u_mid, sigma_mid, c


def k2_riemann(left: K2State, right: K2State, k: float) -> RiemannFan:
    """
    Left wave, contact at the middle velocity (only v jumps) and right wave.

    Unknowns are the two middle specific volumes; u and sigma are continuous
    across the contact.
    """
    wl, wr = left.as_array(), right.as_array()
    if np.array_equal(wl, wr):
        return empty_fan(wl)

    def residual(x):
        v_ml, v_mr = x
        u1, s1, _ = _k2_side(left.v, left.u, left.sigma, v_ml, k, -1)
        u2, s2, _ = _k2_side(right.v, right.u, right.sigma, v_mr, k, +1)
        return np.array([u1 - u2, s1 - s2])

    def admissible(x):
        return bool(np.all(x > 0.0))

    x = damped_newton(residual, [left.v, right.v], admissible, label="k2_riemann")
    v_ml, v_mr = x
    u_star, sigma_star, c1 = _k2_side(left.v, left.u, left.sigma, v_ml, k, -1)
    _, _, c2 = _k2_side(right.v, right.u, right.sigma, v_mr, k, +1)

    if not (c1 <= u_star <= c2):
        raise NoAdmissibleMiddleStateError(
            f"k2 fan out of order: c1={c1:.6g}, u*={u_star:.6g}, c2={c2:.6g}"
        )

    ml = np.array([v_ml, u_star, sigma_star])
    mr = np.array([v_mr, u_star, sigma_star])
    waves = []
    if not np.array_equal(wl, ml):
        waves.append(Wave(c1, wl, ml))
    if abs(v_ml - v_mr) > CONTACT_TOL * max(v_ml, v_mr):
        waves.append(Wave(u_star, ml, mr, kind="contact"))
    else:
        mr = ml
    if not np.array_equal(mr, wr):
        waves.append(Wave(c2, mr, wr))
    logger.debug("k2 fan: speeds=%s middle v=(%.6g, %.6g)", [w.speed for w in waves], v_ml, v_mr)
    return RiemannFan(wl, wr, waves)


def k2_characteristic_speeds(state: K2State, k: float):
    root = k * math.sqrt(state.v)
    return state.u - root, state.u, state.u + root


def k2_outer_states(middle: K2State, v_left: float, v_right: float, k: float,
                    v_middle_right: Optional[float] = None):
    """Back-solve Riemann data whose fan has the given middle state (round-trip construction)."""
    v_mr = middle.v if v_middle_right is None else v_middle_right
    m1 = k2_wave_slope(v_left, middle.v, k, -1)
    m2 = k2_wave_slope(v_mr, v_right, k, +1)
    left = K2State(v_left, middle.u - m1 * (middle.v - v_left), middle.sigma - m1 * m1 * (middle.v - v_left))
    right = K2State(v_right, middle.u + m2 * (v_right - v_mr), middle.sigma + m2 * m2 * (v_right - v_mr))
    return left, right
