"""Cell-centered grids and the system records the Godunov engine steps."""

from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np

from app.models.fan import RiemannFan


@dataclass(frozen=True, eq=False)
class Grid1D:
    """
    Cell i covers [x0 + i h, x0 + (i+1) h]; `states` is (cells, components).

    `point_masses` holds the integrated amounts deposited by delta shocks
    during the last step, per cell and component.
    """

    h: float
    states: np.ndarray
    point_masses: np.ndarray = None
    time: float = 0.0
    x0: float = 0.0

    def __post_init__(self):
        if not self.h > 0.0:
            raise ValueError(f"cell width must be positive, got {self.h}")
        states = np.array(self.states, dtype=float)
        if states.ndim == 1:
            states = states[:, None]
        object.__setattr__(self, "states", states)
        ledger = np.zeros_like(states) if self.point_masses is None else np.array(self.point_masses, dtype=float)
        if ledger.shape != states.shape:
            raise ValueError(f"ledger shape {ledger.shape} does not match states {states.shape}")
        object.__setattr__(self, "point_masses", ledger)

    @property
    def n(self) -> int:
        return self.states.shape[0]

    @property
    def centers(self) -> np.ndarray:
        return self.x0 + self.h * (np.arange(self.n) + 0.5)

    def totals(self) -> np.ndarray:
        """h * sum of cell values plus every ledger entry, per component."""
        return self.h * self.states.sum(axis=0) + self.point_masses.sum(axis=0)


@dataclass(frozen=True)
class HyperbolicSystem:
    """What the engine needs from a system: names, an interface solver, a wall reflection."""

    name: str
    components: Tuple[str, ...]
    riemann: Callable[[np.ndarray, np.ndarray], RiemannFan]
    reflect: Callable[[np.ndarray], np.ndarray]
    has_ledger: bool = False
    # parameters recorded in run manifests
    metadata: dict = field(default_factory=dict)
