"""
System Registry - binds each Riemann solver to the grid variables it steps.

Grid variables per system:
- burgers:           u
- k2:                v, u, sigma
- pressureless:      rho, rho u, rho e   (delta shocks fill the point-mass ledger)
- euler_pressure:    rho, rho u, rho e   (density frozen)
- elasto_transport:  v, u, s, p
- elasto_force:      v, u, s, p
"""

import numpy as np

from app.models.fan import RiemannFan, empty_fan
from app.models.grid import HyperbolicSystem
from app.models.states import ElastoParams, ElastoState, EulerState, K2State
from app.services.elasto_service import (
    ELASTO_COMPONENTS,
    elasto_force_riemann,
    elasto_transport_riemann,
)
from app.services.euler_split_service import (
    EULER_COMPONENTS,
    pressure_step_riemann,
    pressureless_riemann,
)
from app.services.riemann_service import burgers_riemann, k2_riemann


def _negate(index: int):
    def reflect(w):
        out = np.array(w, dtype=float)
        out[index] = -out[index]
        return out

    return reflect


def burgers_system() -> HyperbolicSystem:
    return HyperbolicSystem(
        "burgers", ("u",),
        lambda wl, wr: burgers_riemann(float(wl[0]), float(wr[0])),
        _negate(0),
    )


def k2_system(k: float) -> HyperbolicSystem:
    return HyperbolicSystem(
        "k2", ("v", "u", "sigma"),
        lambda wl, wr: k2_riemann(K2State.from_array(wl), K2State.from_array(wr), k),
        _negate(1),
        metadata={"k": k},
    )


def pressureless_system() -> HyperbolicSystem:
    return HyperbolicSystem(
        "pressureless", EULER_COMPONENTS,
        lambda wl, wr: pressureless_riemann(EulerState.from_conservative(wl), EulerState.from_conservative(wr)),
        _negate(1),
        has_ledger=True,
    )


def pressure_system(gamma: float) -> HyperbolicSystem:
    def solve(wl, wr) -> RiemannFan:
        left, right = EulerState.from_conservative(wl), EulerState.from_conservative(wr)
        # nothing pushes across vacuum in the frozen-density step
        if left.is_vacuum or right.is_vacuum:
            return empty_fan(np.asarray(wl, dtype=float))
        return pressure_step_riemann(left.rho, (left.u, left.e), right.rho, (right.u, right.e), gamma)

    return HyperbolicSystem("euler_pressure", EULER_COMPONENTS, solve, _negate(1), metadata={"gamma": gamma})


def elasto_transport_system() -> HyperbolicSystem:
    return HyperbolicSystem(
        "elasto_transport", ELASTO_COMPONENTS,
        lambda wl, wr: elasto_transport_riemann(ElastoState.from_array(wl), ElastoState.from_array(wr)),
        _negate(1),
    )


def elasto_force_system(params: ElastoParams) -> HyperbolicSystem:
    return HyperbolicSystem(
        "elasto_force", ELASTO_COMPONENTS,
        lambda wl, wr: elasto_force_riemann(ElastoState.from_array(wl), ElastoState.from_array(wr), params),
        _negate(1),
        metadata={"gamma": params.gamma, "k2": params.k2, "s0": params.s0},
    )


def identity_system(components) -> HyperbolicSystem:
    """No dynamics: every interface fan is empty."""
    return HyperbolicSystem(
        "identity", tuple(components),
        lambda wl, wr: empty_fan(np.asarray(wl, dtype=float)),
        lambda w: np.array(w, dtype=float),
    )
