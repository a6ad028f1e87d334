"""
Exact Riemann solver for the gamma-law Euler equations (test-only oracle).

Star pressure from the usual shock/rarefaction pressure functions, then the
self-similar solution sampled at x / t. Independent of every solver in app/.
"""

import math

import numpy as np
from scipy import optimize


def _pressure_function(p, rho, P, gamma):
    """f(p) and f'(p) for one side: shock branch for p > P, rarefaction otherwise."""
    cs = math.sqrt(gamma * P / rho)
    if p <= P:
        f = 2 * cs * ((p / P) ** ((gamma - 1) / (2 * gamma)) - 1.0) / (gamma - 1.0)
        df = (p / P) ** (-(gamma + 1) / (2 * gamma)) / (rho * cs)
    else:
        A = 2.0 / ((gamma + 1.0) * rho)
        B = (gamma - 1.0) / (gamma + 1.0) * P
        f = (p - P) * math.sqrt(A / (p + B))
        df = (1.0 - 0.5 * (p - P) / (p + B)) * math.sqrt(A / (p + B))
    return f, df


def star_state(rhoL, vL, PL, rhoR, vR, PR, gamma):
    """(p*, u*) between the two outer waves."""

    def fun(p):
        return _pressure_function(p, rhoL, PL, gamma)[0] + _pressure_function(p, rhoR, PR, gamma)[0] + vR - vL

    def dfun(p):
        return _pressure_function(p, rhoL, PL, gamma)[1] + _pressure_function(p, rhoR, PR, gamma)[1]

    p = optimize.newton(fun, 0.5 * (PL + PR), fprime=dfun, tol=1e-14, maxiter=100)
    u = 0.5 * (vL + vR) + 0.5 * (_pressure_function(p, rhoR, PR, gamma)[0]
                                 - _pressure_function(p, rhoL, PL, gamma)[0])
    return p, u


def sample(x, t, x0, rhoL, vL, PL, rhoR, vR, PR, gamma):
    """rho, v, P at positions x and time t for a discontinuity initially at x0."""
    p, u = star_state(rhoL, vL, PL, rhoR, vR, PR, gamma)
    xi = (np.asarray(x, dtype=float) - x0) / float(t)
    rho = np.empty(xi.shape)
    v = np.empty(xi.shape)
    P = np.empty(xi.shape)
    g1 = (gamma - 1.0) / (gamma + 1.0)
    csL = math.sqrt(gamma * PL / rhoL)
    csR = math.sqrt(gamma * PR / rhoR)

    left = xi < u
    if p > PL:
        rho_star = rhoL * (p / PL + g1) / (g1 * p / PL + 1.0)
        SL = vL - csL * math.sqrt(((gamma + 1) * p / PL + (gamma - 1)) / (2 * gamma))
        outer = left & (xi < SL)
        inner = left & (xi >= SL)
        fan = np.zeros_like(left)
    else:
        rho_star = rhoL * (p / PL) ** (1.0 / gamma)
        cs_star = csL * (p / PL) ** ((gamma - 1.0) / (2 * gamma))
        outer = left & (xi < vL - csL)
        fan = left & (xi >= vL - csL) & (xi < u - cs_star)
        inner = left & (xi >= u - cs_star)
        base = 2.0 / (gamma + 1) + g1 * (vL - xi[fan]) / csL
        rho[fan] = rhoL * base ** (2.0 / (gamma - 1.0))
        v[fan] = 2.0 / (gamma + 1) * (csL + 0.5 * (gamma - 1) * vL + xi[fan])
        P[fan] = PL * base ** (2.0 * gamma / (gamma - 1.0))
    rho[outer], v[outer], P[outer] = rhoL, vL, PL
    rho[inner], v[inner], P[inner] = rho_star, u, p

    right = ~left
    if p > PR:
        rho_star = rhoR * (p / PR + g1) / (g1 * p / PR + 1.0)
        SR = vR + csR * math.sqrt(((gamma + 1) * p / PR + (gamma - 1)) / (2 * gamma))
        outer = right & (xi >= SR)
        inner = right & (xi < SR)
    else:
        rho_star = rhoR * (p / PR) ** (1.0 / gamma)
        cs_star = csR * (p / PR) ** ((gamma - 1.0) / (2 * gamma))
        outer = right & (xi >= vR + csR)
        fan = right & (xi < vR + csR) & (xi >= u + cs_star)
        inner = right & (xi < u + cs_star)
        base = 2.0 / (gamma + 1) - g1 * (vR - xi[fan]) / csR
        rho[fan] = rhoR * base ** (2.0 / (gamma - 1.0))
        v[fan] = 2.0 / (gamma + 1) * (-csR + 0.5 * (gamma - 1) * vR + xi[fan])
        P[fan] = PR * base ** (2.0 * gamma / (gamma - 1.0))
    rho[outer], v[outer], P[outer] = rhoR, vR, PR
    rho[inner], v[inner], P[inner] = rho_star, u, p
    return rho, v, P
