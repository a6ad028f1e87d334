"""
Fractional-Step Euler Service

PURPOSE:
The two sub-systems one Euler step is split into, both on the conservative
variables (rho, rho u, rho e):

1. Pressureless transport: rho, rho u, rho e carried by u alone. Colliding
   data form a delta shock (a traveling point mass), separating data leave vacuum.
2. Pressure step: rho frozen, (rho u)_t + p_x = 0, (rho e)_t + (p u)_x = 0.
"""

import logging
import math

import numpy as np

from app.core.exceptions import NoAdmissibleMiddleStateError
from app.models.fan import DeltaShock, RiemannFan, Wave, empty_fan
from app.models.states import EulerState, gamma_law
from app.utils.newton import damped_newton

logger = logging.getLogger(__name__)

EULER_COMPONENTS = ("rho", "rho_u", "rho_e")
VACUUM = np.zeros(3)


# ============================================================
# PRESSURELESS STEP
# ============================================================

def delta_shock_speed(left: EulerState, right: EulerState) -> float:
    """Root in [u_r, u_l] of d_rho c^2 - 2 d(rho u) c + d(rho u^2) = 0."""
    a, b = math.sqrt(left.rho), math.sqrt(right.rho)
    return (a * left.u + b * right.u) / (a + b)


def pressureless_riemann(left: EulerState, right: EulerState) -> RiemannFan:
    wl, wr = left.conservative(), right.conservative()
    if np.array_equal(wl, wr):
        return empty_fan(wl)

    # one vacuum side: the material side moves as a contact
    if left.is_vacuum or right.is_vacuum:
        if left.is_vacuum and right.is_vacuum:
            return empty_fan(wl)
        speed = right.u if left.is_vacuum else left.u
        return RiemannFan(wl, wr, [Wave(speed, wl, wr, kind="contact")])

    if left.u > right.u:
        c = delta_shock_speed(left, right)
        d = wr - wl
        flux_l = wl * left.u
        flux_r = wr * right.u
        mass_rate = c * d[0] - (flux_r[0] - flux_l[0])
        energy_rate = c * d[2] - (flux_r[2] - flux_l[2])
        rates = np.array([mass_rate, c * mass_rate, energy_rate])
        return RiemannFan(wl, wr, [Wave(c, wl, wr, kind="delta")], DeltaShock(c, rates))

    if left.u == right.u:
        return RiemannFan(wl, wr, [Wave(left.u, wl, wr, kind="contact")])

    return RiemannFan(wl, wr, [
        Wave(left.u, wl, VACUUM.copy(), kind="contact"),
        Wave(right.u, VACUUM.copy(), wr, kind="contact"),
    ])


# ============================================================
# PRESSURE STEP (FROZEN DENSITY)
# ============================================================

def acoustic_wave_speed(rho: float, p_a: float, p_b: float, gamma: float) -> float:
    """|c| of a pressure-step wave between pressures p_a and p_b at density rho."""
    return math.sqrt((gamma - 1.0) * (p_a + p_b) / (2.0 * rho))


def pressure_step_riemann(rho_l: float, left, rho_r: float, right, gamma: float) -> RiemannFan:
    """
    left/right are (u, e) pairs. Each side keeps its own frozen density; a
    stationary contact separates them when the densities differ.
    """
    if not gamma > 1.0:
        raise ValueError(f"gamma must exceed 1, got {gamma}")
    u_l, e_l = left
    u_r, e_r = right
    p_l = float(gamma_law(rho_l, e_l, u_l, gamma))
    p_r = float(gamma_law(rho_r, e_r, u_r, gamma))
    wl = np.array([rho_l, rho_l * u_l, rho_l * e_l])
    wr = np.array([rho_r, rho_r * u_r, rho_r * e_r])
    if p_l <= 0.0 or p_r <= 0.0:
        raise NoAdmissibleMiddleStateError(f"nonpositive pressure in data (p_l={p_l}, p_r={p_r})")
    if np.array_equal(wl, wr):
        return empty_fan(wl)

    def u_from_left(p):
        c = -acoustic_wave_speed(rho_l, p_l, p, gamma)
        return u_l + (p - p_l) / (rho_l * c)

    def u_from_right(p):
        c = acoustic_wave_speed(rho_r, p_r, p, gamma)
        return u_r - (p_r - p) / (rho_r * c)

    if u_l == u_r and p_l == p_r:
        p_star, u_star = p_l, u_l
    else:
        z_l = math.sqrt((gamma - 1.0) * p_l * rho_l)
        z_r = math.sqrt((gamma - 1.0) * p_r * rho_r)
        guess = (z_r * p_l + z_l * p_r + z_l * z_r * (u_l - u_r)) / (z_l + z_r)
        guess = max(guess, 1e-3 * min(p_l, p_r))
        p_star = float(damped_newton(
            lambda x: np.array([u_from_left(x[0]) - u_from_right(x[0])]),
            [guess],
            lambda x: bool(x[0] > 0.0),
            label="pressure_step",
        )[0])
        u_star = u_from_left(p_star)

    e_ml = p_star / ((gamma - 1.0) * rho_l) + 0.5 * u_star * u_star
    e_mr = p_star / ((gamma - 1.0) * rho_r) + 0.5 * u_star * u_star
    ml = np.array([rho_l, rho_l * u_star, rho_l * e_ml])
    mr = np.array([rho_r, rho_r * u_star, rho_r * e_mr])

    waves = []
    if p_star != p_l:
        waves.append(Wave(-acoustic_wave_speed(rho_l, p_l, p_star, gamma), wl, ml))
    else:
        ml = wl
    if rho_l != rho_r:
        waves.append(Wave(0.0, ml, mr, kind="contact"))
    if p_star != p_r:
        waves.append(Wave(acoustic_wave_speed(rho_r, p_r, p_star, gamma), mr, wr))
    logger.debug("pressure step: p*=%.12g u*=%.12g", p_star, u_star)
    return RiemannFan(wl, wr, waves)


def pressure_step_outer_states(rho_l: float, rho_r: float, u_star: float, p_star: float,
                               p_l: float, p_r: float, gamma: float):
    """Back-solve (u, e) on both sides for a fan with the given middle (round-trip construction)."""
    c_l = -acoustic_wave_speed(rho_l, p_l, p_star, gamma)
    c_r = acoustic_wave_speed(rho_r, p_r, p_star, gamma)
    u_l = u_star - (p_star - p_l) / (rho_l * c_l)
    u_r = u_star + (p_r - p_star) / (rho_r * c_r)
    left = EulerState.from_pressure(rho_l, u_l, p_l, gamma)
    right = EulerState.from_pressure(rho_r, u_r, p_r, gamma)
    return (left.u, left.e), (right.u, right.e)
