"""
Generalized-Function Lab Service

PURPOSE:
Numerical representatives of Heaviside / Dirac families and the
association tests built on them. Every algebraic jump condition in the
toolkit is checked against these integrals.

HOW IT WORKS:
1. A Profile is piecewise linear on M equal ramp cells, so H' is constant per cell
2. Integrands that are polynomials of ramp values become polynomials of t per cell
3. Gauss-Legendre with enough points per cell integrates them exactly
4. Pairings with a test function add Gauss panels on the smooth parts of supp(phi)
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Sequence

import numpy as np

from app.core.exceptions import AssociationError
from app.models.profile import (
    Profile,
    RampPolynomial,
    RegularizedField,
    RegularizedStep,
    TestFunction,
)

logger = logging.getLogger(__name__)

# Gauss points used on non-polynomial integrands (test functions, coefficient callbacks)
PAIRING_POINTS = 8
SMOOTH_PANELS = 64

# Association verdict thresholds
MIN_DECAY_ORDER = 0.5
LAST_VALUE_FACTOR = 10.0


# ============================================================
# QUADRATURE HELPERS
# ============================================================

def _gauss_on_cells(edges: np.ndarray, n_points: int):
    """Gauss nodes (cells x points) and weights for every [edges[k], edges[k+1]]."""
    xi, wi = np.polynomial.legendre.leggauss(n_points)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = mid[:, None] + half[:, None] * xi[None, :]
    weights = half[:, None] * wi[None, :]
    return nodes, weights


def _ramp_edges(profiles: Sequence[Profile]) -> np.ndarray:
    """Union of the ramp nodes of every profile (cells on which all are linear)."""
    edges = profiles[0].nodes
    for p in profiles[1:]:
        if p.M != profiles[0].M:
            edges = np.union1d(edges, p.nodes)
    return edges


def _points_for_degree(degree: int) -> int:
    return max(1, math.ceil((degree + 2) / 2))


# ============================================================
# MOMENTS
# ============================================================

def moment_integral(f: RampPolynomial, a: Profile, b: Profile) -> float:
    """
    Integral of f(H_a, H_b) * H_b' over the ramp (independent of epsilon).

    With both profiles linear on every cell the integrand is a polynomial in
    t of degree deg(f) per cell, so ceil((deg+2)/2) Gauss points are exact.
    """
    edges = _ramp_edges([a, b])
    n = _points_for_degree(f.degree)
    t, w = _gauss_on_cells(edges, n)
    slope_b = np.diff(b(edges)) / np.diff(edges)
    values = f(a(t), b(t)) * slope_b[:, None]
    return float(np.sum(values * w))


def mean_value(f: Callable[[np.ndarray], np.ndarray], degree: int = 8) -> float:
    """Integral of f over [0, 1]: the coefficient replacing f(H)H' under association."""
    t, w = _gauss_on_cells(np.array([0.0, 1.0]), _points_for_degree(degree))
    return float(np.sum(f(t) * w))


def ramp_integral(
    integrand: Callable[[Dict[str, np.ndarray], Dict[str, np.ndarray]], np.ndarray],
    profiles: Mapping[str, Profile],
    n_points: int = PAIRING_POINTS,
) -> float:
    """
    Integral over the ramp variable of integrand(values, slopes).

    values[name] holds H_name at the quadrature points, slopes[name] its
    derivative dH_name/dt there. Each variable may carry its own profile.
    """
    names = list(profiles)
    edges = _ramp_edges([profiles[k] for k in names])
    t, w = _gauss_on_cells(edges, n_points)
    values = {k: profiles[k](t) for k in names}
    slopes = {}
    for k in names:
        cell_slope = np.diff(profiles[k](edges)) / np.diff(edges)
        slopes[k] = np.broadcast_to(cell_slope[:, None], t.shape)
    return float(np.sum(integrand(values, slopes) * w))


# ============================================================
# PAIRINGS WITH TEST FUNCTIONS
# ============================================================

def _pairing_edges(phi: TestFunction, epsilon: float, profiles: Sequence[Profile]) -> np.ndarray:
    a, b = phi.support
    ramp = epsilon * _ramp_edges(list(profiles))
    ramp = ramp[(ramp > a) & (ramp < b)]
    left = np.linspace(a, min(0.0, b), SMOOTH_PANELS + 1) if a < 0.0 else np.array([])
    right = np.linspace(max(epsilon, a), b, SMOOTH_PANELS + 1) if b > epsilon else np.array([])
    return np.unique(np.concatenate(([a, b], left, ramp, right)))


def _pair(fn: Callable[[np.ndarray], np.ndarray], phi: TestFunction, epsilon: float,
          profiles: Sequence[Profile]) -> float:
    edges = _pairing_edges(phi, epsilon, profiles)
    x, w = _gauss_on_cells(edges, PAIRING_POINTS)
    return float(np.sum(fn(x) * phi(x) * w))


def delta_pairing(step: RegularizedStep, phi: TestFunction) -> float:
    """Pairing of delta_eps = H_eps' with phi."""
    return _pair(step.delta, phi, step.epsilon, [step.profile])


@dataclass(frozen=True)
class AssociationReport:
    epsilons: np.ndarray
    values: np.ndarray
    order: float
    tends_to_zero: bool


def association_check(
    g1: RegularizedField,
    g2: RegularizedField,
    phi: TestFunction,
    eps_sequence: Sequence[float],
) -> AssociationReport:
    """
    Pair g1 - g2 with phi along a decreasing epsilon sequence and fit a decay order.

    Verdict: least-squares slope of log|value| against log(eps) >= 0.5, and the
    last magnitude <= 10 x first x (eps_last / eps_first)^0.5. An all-zero
    sequence tends to zero with infinite order.
    """
    eps = np.asarray(eps_sequence, dtype=float)
    if eps.ndim != 1 or eps.size < 2:
        raise AssociationError("need at least two epsilons")
    if np.any(eps <= 0.0) or np.any(np.diff(eps) >= 0.0):
        raise AssociationError(f"epsilons must be positive and strictly decreasing, got {eps.tolist()}")

    profiles = [g1.profile, g2.profile]
    values = np.array([
        _pair(lambda x, e=e: g1(x, e) - g2(x, e), phi, e, profiles) for e in eps
    ])
    mags = np.abs(values)

    if np.all(mags == 0.0):
        report = AssociationReport(eps, values, math.inf, True)
    else:
        floored = np.maximum(mags, np.finfo(float).tiny)
        order = float(np.polyfit(np.log(eps), np.log(floored), 1)[0])
        bound = LAST_VALUE_FACTOR * mags[0] * (eps[-1] / eps[0]) ** 0.5
        report = AssociationReport(eps, values, order, order >= MIN_DECAY_ORDER and mags[-1] <= bound)

    logger.debug("association %s vs %s: order=%s verdict=%s", g1.label, g2.label,
                 report.order, report.tends_to_zero)
    return report
