"""
Elastoplastic Split Service

PURPOSE:
The two sub-systems of the 1D elastoplastic step, on grid variables (v, u, s, p):

1. Transport: v, u, s, p carried by u; one discontinuity at the midpoint speed.
2. Force: v_t - v u_x = 0, u_t + v (p - s)_x = 0, s_t - k^2(s) u_x ~ 0,
   p_t + gamma p u_x ~ 0, with the mean-value rule across every wave.

HOW THE FORCE FAN IS BUILT:
- a stationary contact carries [v] and equal jumps of s and p (u and p - s continuous)
- each side carries one wave from a cubic in its speed (elastic, or plastic with k^2 = 0)
- an elastic wave pushing |s| past s0 splits into a precursor up to the cap and a plastic wave
- a plastic wave that would outrun its precursor merges with it into one wave whose
  s-profile reaches the cap halfway through the ramp
"""

import logging
import math
from typing import List, Tuple

import numpy as np
from scipy import optimize

from app.core.config import get_settings
from app.core.exceptions import GFShockError, NoAdmissibleMiddleStateError
from app.models.fan import RiemannFan, Wave, empty_fan
from app.models.profile import Profile
from app.models.shock import ShockAnsatz
from app.models.states import ElastoParams, ElastoState
from app.services.jump_service import FieldEquation, burgers_speed
from app.utils.newton import damped_newton

logger = logging.getLogger(__name__)

ELASTO_COMPONENTS = ("v", "u", "s", "p")
ORACLE_VARIABLES = ("v", "u", "s", "q")

# ramp position where a merged wave's stress reaches the cap
MERGE_KNOT = 0.5


# ============================================================
# TRANSPORT STEP
# ============================================================

def elasto_transport_riemann(left: ElastoState, right: ElastoState) -> RiemannFan:
    wl, wr = left.as_array(), right.as_array()
    if np.array_equal(wl, wr):
        return empty_fan(wl)
    return RiemannFan(wl, wr, [Wave(burgers_speed(left.u, right.u), wl, wr)])


# ============================================================
# SINGLE-WAVE JUMP RELATIONS
# ============================================================

def _pick_root(roots, side: int, scale: float) -> float:
    real = [r.real for r in np.atleast_1d(roots) if abs(r.imag) <= 1e-9 * (scale + abs(r.real))]
    candidates = [r for r in real if side * r > 0.0]
    if not candidates:
        raise NoAdmissibleMiddleStateError(f"no wave speed of sign {side:+d} among roots {roots}")
    return max(candidates, key=abs)


def force_wave_speed(v_a: float, p_a: float, k2: float, gamma: float, delta: float, side: int) -> float:
    """
    Speed of a force-step wave from reference state a with velocity jump delta.

    Extreme root of sign `side` of
    c^3 + (1-gamma) delta/2 c^2 - (gamma delta^2/4 + v_a (gamma p_a + k2)) c + v_a k2 gamma delta/2;
    with k2 = 0 the zero root drops out and a quadratic remains.
    """
    b2 = 0.5 * (1.0 - gamma) * delta
    b1 = -(0.25 * gamma * delta * delta + v_a * (gamma * p_a + k2))
    if k2 == 0.0:
        # b1 < 0: one root of each sign
        root = math.sqrt(b2 * b2 - 4.0 * b1)
        return 0.5 * (-b2 + side * root)

    b0 = 0.5 * v_a * k2 * gamma * delta
    # Newton from outside the root bound approaches the extreme root monotonically
    c = side * 2.0 * max(abs(b2), math.sqrt(abs(b1)), (0.5 * abs(b0)) ** (1.0 / 3.0))
    for _ in range(60):
        f = ((c + b2) * c + b1) * c + b0
        d = (3.0 * c + 2.0 * b2) * c + b1
        if d == 0.0:
            break
        step = f / d
        c -= step
        if abs(step) <= 1e-15 * abs(c):
            break
    if side * c > 0.0 and abs(((c + b2) * c + b1) * c + b0) <= 1e-10 * (abs(b1) * abs(c) + abs(b0) + 1.0):
        return c
    scale = math.sqrt(abs(b1)) + abs(b2)
    return float(_pick_root(np.roots([1.0, b2, b1, b0]), side, scale))


def precursor_amplitude(a: np.ndarray, cap: float, k2: float, gamma: float, side: int) -> Tuple[float, float]:
    """
    (speed, velocity jump) of the elastic wave taking s from s_a exactly to the cap.

    With d_s fixed, delta = -c d_s / k2 turns the speed cubic into
    c^2 (1 - (1-gamma) d_s/(2 k2) - gamma d_s^2/(4 k2^2)) = v_a (gamma p_a + k2 + gamma d_s/2).
    """
    v_a, _, s_a, p_a = a
    d_s = cap - s_a
    num = v_a * (gamma * p_a + k2 + 0.5 * gamma * d_s)
    den = 1.0 - (1.0 - gamma) * d_s / (2.0 * k2) - gamma * d_s * d_s / (4.0 * k2 * k2)
    if not (num > 0.0 and den > 0.0):
        raise NoAdmissibleMiddleStateError(f"no elastic precursor reaches s={cap:.6g} from s={s_a:.6g}")
    c = side * math.sqrt(num / den)
    return c, -c * d_s / k2


def force_jump(a: np.ndarray, delta: float, c: float, k2: float, gamma: float) -> np.ndarray:
    """State b reached from a across a wave of speed c with velocity jump delta."""
    v_a, u_a, s_a, p_a = a
    d_v = -v_a * delta / (c + 0.5 * delta)
    d_s = -k2 * delta / c
    d_p = gamma * p_a * delta / (c - 0.5 * gamma * delta)
    b = np.array([v_a + d_v, u_a + delta, s_a + d_s, p_a + d_p])
    if not (b[0] > 0.0 and b[3] > 0.0):
        raise NoAdmissibleMiddleStateError(f"wave leaves admissible states: v={b[0]:.6g}, p={b[3]:.6g}")
    return b


def merged_wave(a: np.ndarray, delta: float, cap: float, params: ElastoParams, side: int):
    """
    One elastoplastic wave from a to stress `cap`: returns (c, b, theta).

    theta is the fraction of the velocity jump achieved while the material is
    still elastic; the stress relation gives theta = -c d_s / (k^2 delta).
    """
    v_a, u_a, s_a, p_a = a
    g, k2 = params.gamma, params.k2
    d_s = cap - s_a
    coeffs = [
        delta,
        0.5 * (1.0 - g) * delta * delta - v_a * d_s * (0.5 * g * d_s / k2 - 1.0),
        -0.25 * g * delta ** 3 - v_a * g * delta * (p_a + d_s),
    ]
    roots = [r.real for r in np.roots(coeffs) if abs(r.imag) <= 1e-12 * (1.0 + abs(r.real))]
    best = None
    for c in roots:
        theta = -c * d_s / (k2 * delta)
        if side * c > 0.0 and 0.0 < theta <= 1.0 + 1e-12:
            if best is None or abs(c) > abs(best[0]):
                best = (c, min(theta, 1.0))
    if best is None:
        raise NoAdmissibleMiddleStateError(f"no merged elastoplastic wave for delta={delta:.6g}")
    c, theta = best
    d_p = g * (delta * (p_a + 0.5 * d_s) + c * d_s * d_s / (2.0 * k2)) / (c - 0.5 * g * delta)
    d_v = -v_a * delta / (c + 0.5 * delta)
    b = np.array([v_a + d_v, u_a + delta, cap, p_a + d_p])
    if not (b[0] > 0.0 and b[3] > 0.0):
        raise NoAdmissibleMiddleStateError(f"merged wave leaves admissible states: v={b[0]:.6g}, p={b[3]:.6g}")
    return float(c), b, float(theta)


def merged_profiles(theta: float, side: int, nodes: int) -> dict:
    """Profiles of a merged wave, ramp oriented from the fan's left state to its right state."""
    if side < 0:
        h_s = Profile.kinked(MERGE_KNOT, 1.0, nodes, name="H_s")
        h_u = Profile.kinked(MERGE_KNOT, theta, nodes, name="H_u")
    else:
        h_s = Profile.kinked(MERGE_KNOT, 0.0, nodes, name="H_s")
        h_u = Profile.kinked(MERGE_KNOT, 1.0 - theta, nodes, name="H_u")
    return {"v": h_u, "u": h_u, "q": h_u, "s": h_s}


# ============================================================
# ONE SIDE OF THE FORCE FAN
# ============================================================

def _side_waves(a: np.ndarray, u_star: float, params: ElastoParams, side: int,
                record: bool = False) -> Tuple[List[Tuple[float, np.ndarray, np.ndarray, dict]], np.ndarray]:
    """
    Waves (outer to inner) connecting outer state a to velocity u_star, and the middle state.

    Each wave is (speed, reference state, reached state, profiles or None).
    """
    delta = u_star - a[1]
    if delta == 0.0:
        return [], a
    g = params.gamma
    k2 = params.k2_of(a[2])
    c = force_wave_speed(a[0], a[3], k2, g, delta, side)
    b = force_jump(a, delta, c, k2, g)
    if k2 == 0.0 or abs(b[2]) <= params.s0:
        return [(c, a, b, None)], b

    # pass 1: elastic precursor up to the cap, then a plastic wave
    cap = math.copysign(params.s0, b[2])

    c_e, delta_e = precursor_amplitude(a, cap, k2, g, side)
    e = force_jump(a, delta_e, c_e, k2, g)
    e[2] = cap
    delta_p = u_star - e[1]
    if delta_p == 0.0:
        return [(c_e, a, e, None)], e
    c_p = force_wave_speed(e[0], e[3], 0.0, g, delta_p, side)
    if abs(c_p) < abs(c_e):
        m = force_jump(e, delta_p, c_p, 0.0, g)
        return [(c_e, a, e, None), (c_p, e, m, None)], m

    # pass 2: the plastic wave would overtake its precursor
    c_m, m, theta = merged_wave(a, delta, cap, params, side)
    profiles = None
    if record:
        logger.debug("merged elastoplastic wave: c=%.6g theta=%.6g", c_m, theta)
        profiles = merged_profiles(theta, side, get_settings().profile_nodes)
    return [(c_m, a, m, profiles)], m


def _acoustic_guess(wl: np.ndarray, wr: np.ndarray, params: ElastoParams) -> float:
    def impedance(w):
        return math.sqrt((params.gamma * w[3] + params.k2_of(w[2])) / w[0])

    z_l, z_r = impedance(wl), impedance(wr)
    q_l, q_r = wl[3] - wl[2], wr[3] - wr[2]
    return (q_l - q_r + z_l * wl[1] + z_r * wr[1]) / (z_l + z_r)


def _bracketed_root(fun, guess: float, admissible) -> float:
    width = 0.1 * max(1.0, abs(guess))
    f0 = fun(guess)
    for _ in range(60):
        for other in (guess - width, guess + width):
            if admissible([other]) and np.sign(fun(other)) != np.sign(f0):
                lo, hi = sorted((guess, other))
                return float(optimize.brentq(fun, lo, hi, xtol=1e-14))
        width *= 2.0
    raise NoAdmissibleMiddleStateError(f"elasto_force: no bracket around u*={guess:.6g}")


def elasto_force_riemann(left: ElastoState, right: ElastoState, params: ElastoParams) -> RiemannFan:
    wl, wr = left.as_array(), right.as_array()
    if np.array_equal(wl, wr):
        return empty_fan(wl)
    if left.p <= 0.0 or right.p <= 0.0:
        raise NoAdmissibleMiddleStateError("force step needs positive pressure on both sides")

    def residual(x):
        _, ml = _side_waves(wl, x[0], params, -1)
        _, mr = _side_waves(wr, x[0], params, +1)
        return np.array([(ml[3] - ml[2]) - (mr[3] - mr[2])])

    def admissible(x):
        try:
            residual(x)
        except GFShockError:
            return False
        return True

    if wl[1] == wr[1] and wl[3] - wl[2] == wr[3] - wr[2]:
        u_star = float(wl[1])
    else:
        guess = _acoustic_guess(wl, wr, params)
        try:
            u_star = float(damped_newton(residual, [guess], admissible, label="elasto_force")[0])
        except NoAdmissibleMiddleStateError:
            # residual is monotone in u*: fall back to a bracketed root
            u_star = _bracketed_root(lambda u: residual([u])[0], guess, admissible)

    left_waves, ml = _side_waves(wl, u_star, params, -1, record=True)
    right_waves, mr = _side_waves(wr, u_star, params, +1, record=True)

    waves = [Wave(c, a, b, profiles=prof) for c, a, b, prof in left_waves]
    if not np.array_equal(ml, mr):
        waves.append(Wave(0.0, ml, mr, kind="contact"))
    for c, a, b, prof in reversed(right_waves):
        waves.append(Wave(c, b, a, profiles=prof))
    return RiemannFan(wl, wr, waves)


# ============================================================
# ORACLE FORMS
# ============================================================

def _k2_field(params: ElastoParams):
    cap = params.s0 * (1.0 - 1e-12)

    def k2(s):
        return np.where(np.abs(s["s"]) >= cap, 0.0, params.k2)

    return k2


def force_equations(params: ElastoParams):
    """Force sub-system in (v, u, s, q = p - s)."""
    k2 = _k2_field(params)
    g = params.gamma
    return [
        FieldEquation({"v": (lambda s: 1.0, None), "u": (None, lambda s: -s["v"])}, "v"),
        FieldEquation({"u": (lambda s: 1.0, None), "q": (None, lambda s: s["v"])}, "u"),
        FieldEquation({"s": (lambda s: 1.0, None), "u": (None, lambda s: -k2(s))}, "s"),
        FieldEquation({"q": (lambda s: 1.0, None),
                       "u": (None, lambda s: g * (s["q"] + s["s"]) + k2(s))}, "q"),
    ]


def transport_equations():
    return [
        FieldEquation({name: (lambda s: 1.0, lambda s: s["u"])}, name) for name in ELASTO_COMPONENTS
    ]


def wave_ansatz(wave: Wave, nodes: int = None) -> ShockAnsatz:
    """Ansatz in (v, u, s, q) for a force-step wave, with its recorded profiles."""
    nodes = nodes or get_settings().profile_nodes
    profiles = wave.profiles
    if profiles is None:
        shared = Profile.linear(nodes)
        profiles = {n: shared for n in ORACLE_VARIABLES}

    def to_q(w):
        return [w[0], w[1], w[2], w[3] - w[2]]

    return ShockAnsatz.between(ORACLE_VARIABLES, to_q(wave.left), to_q(wave.right), wave.speed, profiles)


def transport_ansatz(wave: Wave, nodes: int = None) -> ShockAnsatz:
    shared = Profile.linear(nodes or get_settings().profile_nodes)
    return ShockAnsatz.between(ELASTO_COMPONENTS, wave.left, wave.right, wave.speed,
                               {n: shared for n in ELASTO_COMPONENTS})
