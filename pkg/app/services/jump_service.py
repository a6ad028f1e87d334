"""
Jump Condition Service

PURPOSE:
Derive and check shock jump conditions for equations stated either with
strong equality (profile relations) or with association (mean-value rule),
and for the integral condition of nonconservative equations.

HOW IT WORKS:
1. Equations are coefficient callbacks, never parsed text
2. Association: every f(H) * H' term becomes (integral of f over [0,1]) * H'
3. The regularized oracle integrates the same equation across a ramp where
   each variable keeps its own profile (gf_lab ramp_integral)
4. Strong equality: a linear ODE for one profile in terms of another, RK4 on the samples
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np
from scipy import integrate, optimize

from app.core.config import get_settings
from app.core.exceptions import (
    DegenerateJumpError,
    MixedProfileError,
    NoJumpError,
    NoTravelingWaveSpeedError,
    ProfileError,
    ResonantProfileError,
)
from app.models.profile import Profile
from app.models.shock import JumpResidual, ShockAnsatz
from app.services.gf_lab_service import mean_value, ramp_integral

logger = logging.getLogger(__name__)

StateMap = Dict[str, np.ndarray]
Coefficient = Callable[[StateMap], np.ndarray]


# ============================================================
# EQUATION FORMS
# ============================================================

@dataclass(frozen=True)
class FieldEquation:
    """
    sum_k A_k(w) d_t w_k + sum_k B_k(w) d_x w_k  (= 0 or ~ 0).

    `terms` maps a variable to (A_k, B_k); either may be None.
    """

    terms: Mapping[str, Tuple[Optional[Coefficient], Optional[Coefficient]]]
    label: str = ""

    def density(self, ansatz: ShockAnsatz, state: StateMap) -> np.ndarray:
        """Coefficient of dw_k * H_k' for every variable, as a dict of arrays."""
        out = {}
        for name, (a, b) in self.terms.items():
            term = 0.0
            if a is not None:
                term = term - ansatz.speed * a(state)
            if b is not None:
                term = term + b(state)
            out[name] = term
        return out


@dataclass(frozen=True)
class ConservationEquation:
    """D(w)_t + F(w)_x = 0: the jump condition is -c[D] + [F] for every profile choice."""

    density: Callable[[Dict[str, float]], float]
    flux: Callable[[Dict[str, float]], float]
    label: str = ""

    def residual(self, ansatz: ShockAnsatz) -> float:
        wl, wr = ansatz.left, ansatz.right
        return -ansatz.speed * (self.density(wr) - self.density(wl)) + (self.flux(wr) - self.flux(wl))


def advection_source(var: str, speed_coef: Coefficient, source_var: Optional[str] = None,
                     source_coef: Optional[Coefficient] = None, label: str = "") -> FieldEquation:
    """w_t + a(w) w_x ~ b(w) u_x as a FieldEquation."""
    terms = {var: (lambda s: 1.0, speed_coef)}
    if source_var is not None:
        if source_var == var:
            raise ValueError("source variable must differ from the transported one")
        terms[source_var] = (None, lambda s: -source_coef(s))
    return FieldEquation(terms, label or f"{var}_t + a {var}_x ~ b {source_var}_x")


# ============================================================
# RANKINE-HUGONIOT
# ============================================================

def rh_speed(flux_jump: float, state_jump: float) -> float:
    if state_jump == 0.0:
        raise NoJumpError("Rankine-Hugoniot speed undefined across a zero jump")
    return flux_jump / state_jump


def burgers_speed(u_l: float, u_r: float) -> float:
    """Midpoint speed; also defined (as the characteristic speed) when u_l == u_r."""
    return 0.5 * (u_l + u_r)


# ============================================================
# ASSOCIATION (MEAN-VALUE RULE) AND ITS REGULARIZED ORACLE
# ============================================================

def assoc_jump_residual(equation: FieldEquation, ansatz: ShockAnsatz) -> float:
    """
    Residual after replacing every f(H) H' by (integral_0^1 f) H'.

    All variables of the equation must share one profile.
    """
    names = list(equation.terms)
    if ansatz.shared_profile(names) is None:
        raise MixedProfileError(
            f"{equation.label or 'equation'}: variables {names} carry different profiles"
        )

    def integrand(lam):
        state = ansatz.state_at({k: lam for k in ansatz.variables})
        dens = equation.density(ansatz, state)
        return sum(ansatz.delta[k] * np.broadcast_to(dens[k], lam.shape) for k in names)

    return mean_value(integrand)


def regularized_jump_residual(equation, ansatz: ShockAnsatz) -> float:
    """
    Integral of the equation across a regularized ramp, each variable on its own profile.

    For a FieldEquation this is sum_k dw_k * integral (-c A_k + B_k)(w(t)) dH_k/dt dt.
    A ConservationEquation integrates to its endpoint jump for any profiles.
    """
    if isinstance(equation, ConservationEquation):
        return equation.residual(ansatz)

    profiles = {k: ansatz.profile_of(k) for k in ansatz.variables}

    def integrand(values, slopes):
        state = ansatz.state_at(values)
        dens = equation.density(ansatz, state)
        total = 0.0
        for k in equation.terms:
            total = total + ansatz.delta[k] * dens[k] * slopes[k]
        return total

    return ramp_integral(integrand, profiles)


def check_waves(equations, ansatz: ShockAnsatz) -> JumpResidual:
    """Regularized residual of every equation for one ansatz."""
    return JumpResidual({
        (eq.label or str(i)): regularized_jump_residual(eq, ansatz) for i, eq in enumerate(equations)
    })


# ============================================================
# STRONG EQUALITY: PROFILE RELATIONS
# ============================================================

ProfileCoefficient = Callable[[float, float, Dict[str, float]], float]


def strong_profile_relation(
    a: ProfileCoefficient,
    b: ProfileCoefficient,
    h_u: Profile,
    known: Optional[Mapping[str, Profile]] = None,
    name: str = "H_v",
    endpoint_tol: float = 1e-8,
) -> Profile:
    """
    Solve a(q, y) dy/dt + b(q, y) dq/dt = 0 with q = H_u for y = H_v.

    RK4 steps dy/dq = -b/a along the samples of H_u, so no interpolation
    enters. Already-known profiles are passed to the callbacks by name,
    interpolated linearly inside each step. The coefficient a must keep
    one sign on the ramp.
    """
    known = dict(known or {})
    for k, p in known.items():
        if p.M != h_u.M:
            raise ProfileError(f"known profile {k} has {p.M} cells, expected {h_u.M}")

    q_nodes = h_u.samples
    known_nodes = {k: p.samples for k, p in known.items()}
    y = np.empty_like(q_nodes)
    y[0] = 0.0
    sign = None

    def rhs(q, yv, frac, i):
        kv = {k: (1.0 - frac) * s[i] + frac * s[i + 1] for k, s in known_nodes.items()}
        av = a(q, yv, kv)
        nonlocal sign
        if av == 0.0 or (sign is not None and math.copysign(1.0, av) != sign):
            raise ResonantProfileError(f"{name}: leading coefficient vanishes at H_u={q:.6g}")
        if sign is None:
            sign = math.copysign(1.0, av)
        return -b(q, yv, kv) / av

    for i in range(h_u.M):
        q0, q1 = q_nodes[i], q_nodes[i + 1]
        dq = q1 - q0
        if dq == 0.0:
            y[i + 1] = y[i]
            continue
        k1 = rhs(q0, y[i], 0.0, i)
        k2 = rhs(q0 + 0.5 * dq, y[i] + 0.5 * dq * k1, 0.5, i)
        k3 = rhs(q0 + 0.5 * dq, y[i] + 0.5 * dq * k2, 0.5, i)
        k4 = rhs(q1, y[i] + dq * k3, 1.0, i)
        y[i + 1] = y[i] + dq * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0

    if abs(y[-1] - 1.0) > endpoint_tol:
        raise ProfileError(f"{name}: relation ends at {y[-1]:.12g} instead of 1; jump data inconsistent")
    y[-1] = 1.0
    if np.any(np.diff(y) < -1e-12):
        raise ProfileError(f"{name}: relation produced a non-monotone profile")
    return Profile(np.maximum.accumulate(np.clip(y, 0.0, 1.0)), name=name)


def k2_profile_chain(alpha: float, h_u: Profile) -> Tuple[Profile, Profile]:
    """H_v and H_sigma of the k^2-model from the two strong-equality equations."""
    h_v = strong_profile_relation(
        lambda q, y, kn: alpha + q,
        lambda q, y, kn: -(alpha + y),
        h_u, name="H_v",
    )
    h_sigma = strong_profile_relation(
        lambda q, y, kn: alpha + kn["H_v"],
        lambda q, y, kn: -(alpha + q),
        h_u, known={"H_v": h_v}, name="H_sigma",
    )
    return h_v, h_sigma


def mass_profile(rho_l: float, rho_r: float, u_l: float, u_r: float, c: float, h_u: Profile) -> Profile:
    """H_rho from rho_t + (rho u)_x = 0 held with strong equality."""
    d_rho, d_u = rho_r - rho_l, u_r - u_l
    if d_rho == 0.0:
        raise NoJumpError("mass profile undefined without a density jump")
    return strong_profile_relation(
        lambda q, y, kn: d_rho * (u_l - c + d_u * q),
        lambda q, y, kn: d_u * (rho_l + d_rho * y),
        h_u, name="H_rho",
    )


# ============================================================
# INTEGRAL JUMP CONDITION (NONCONSERVATIVE, STRONG EQUALITY)
# ============================================================

def integral_jump_sigma(u_l: float, u_r: float, c: float) -> float:
    """Closed form: d_sigma = ln((u_r - c) / (u_l - c))."""
    if min(u_l, u_r) <= c <= max(u_l, u_r):
        raise NoTravelingWaveSpeedError(f"c={c} inside the jump interval [{u_l}, {u_r}]")
    return math.log((u_r - c) / (u_l - c))


def integral_condition(u_l: float, u_r: float, delta_sigma: float, c: float) -> float:
    """(du / dsigma) * integral_0^1 dlam / (u_l - c + du lam) - 1, by adaptive quadrature."""
    du = u_r - u_l
    value, _ = integrate.quad(lambda lam: 1.0 / (u_l - c + du * lam), 0.0, 1.0,
                              epsabs=1e-14, epsrel=1e-13)
    return du / delta_sigma * value - 1.0


def integral_jump_speed(u_l: float, u_r: float, delta_sigma: float) -> float:
    """Speed c solving the integral condition, on the branch outside [u_l, u_r]."""
    du = u_r - u_l
    if du == 0.0:
        raise NoTravelingWaveSpeedError("no velocity jump: the condition does not fix c")
    if delta_sigma == 0.0 or not math.isfinite(delta_sigma):
        raise NoTravelingWaveSpeedError(f"no finite speed for d_sigma={delta_sigma}")

    ratio = math.exp(delta_sigma)
    c0 = (ratio * u_l - u_r) / (ratio - 1.0)
    if min(u_l, u_r) <= c0 <= max(u_l, u_r) or not math.isfinite(c0):
        raise NoTravelingWaveSpeedError(f"closed form speed {c0} is not admissible")

    # refine on the quadrature form inside the admissible half-line
    gap = 0.5 * min(abs(c0 - u_l), abs(c0 - u_r))
    lo, hi = c0 - gap, c0 + gap
    f_lo = integral_condition(u_l, u_r, delta_sigma, lo)
    f_hi = integral_condition(u_l, u_r, delta_sigma, hi)
    if f_lo == 0.0 or f_hi == 0.0 or np.sign(f_lo) == np.sign(f_hi):
        return c0
    return optimize.brentq(lambda c: integral_condition(u_l, u_r, delta_sigma, c), lo, hi,
                           xtol=1e-15, rtol=4 * np.finfo(float).eps)


# ============================================================
# k^2-MODEL JUMP RELATIONS
# ============================================================

K2_VARIABLES = ("v", "u", "sigma")


def k2_jump_residuals(ansatz: ShockAnsatz, k: float) -> JumpResidual:
    """Residuals of c - u_l = -v_l du/dv, du^2 = dsigma dv and the third (associated) formula."""
    dv, du, ds = (ansatz.delta[n] for n in K2_VARIABLES)
    zeros = [x == 0.0 for x in (dv, du, ds)]
    if all(zeros):
        return JumpResidual({"mass": 0.0, "momentum": 0.0, "stress": 0.0})
    if any(zeros):
        raise DegenerateJumpError(f"partial jump (dv, du, dsigma) = ({dv}, {du}, {ds})")

    v_l, u_l = ansatz.left["v"], ansatz.left["u"]
    c = ansatz.speed
    return JumpResidual({
        "mass": (c - u_l) + v_l * du / dv,
        "momentum": du * du - ds * dv,
        "stress": v_l * ds / du + 0.5 * du - k * k * du / ds,
    })


def k2_wave_slope(v_a: float, v_b: float, k: float, family: int) -> float:
    """du/dv across a k^2-model wave; family -1 is the left-facing wave (c < u)."""
    mean_v = 0.5 * (v_a + v_b)
    if not mean_v > 0.0:
        raise DegenerateJumpError(f"mean specific volume {mean_v} not positive")
    return -family * k / math.sqrt(mean_v)


def k2_wave_from_left(left: Mapping[str, float], delta_v: float, k: float, family: int,
                      profile: Optional[Profile] = None) -> ShockAnsatz:
    """Back-solve du, dsigma and c from (v_l, u_l, sigma_l), dv and the wave family (-1 or +1)."""
    v_l, u_l = left["v"], left["u"]
    m = k2_wave_slope(v_l, v_l + delta_v, k, family)
    du = m * delta_v
    ds = m * m * delta_v
    c = u_l - v_l * m
    profile = profile or Profile.linear(get_settings().profile_nodes)
    return ShockAnsatz(
        {n: float(left[n]) for n in K2_VARIABLES},
        {"v": delta_v, "u": du, "sigma": ds},
        c,
        {n: profile for n in K2_VARIABLES},
    )


def k2_equations(k: float):
    """The k^2-model system as FieldEquations: two strong-equality laws and the associated stress law."""
    return [
        FieldEquation({"v": (lambda s: 1.0, lambda s: s["u"]),
                       "u": (None, lambda s: -s["v"])}, "v"),
        FieldEquation({"u": (lambda s: 1.0, lambda s: s["u"]),
                       "sigma": (None, lambda s: -s["v"])}, "u"),
        advection_source("sigma", lambda s: s["u"], "u", lambda s: k * k, label="sigma"),
    ]
