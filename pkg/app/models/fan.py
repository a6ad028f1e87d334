"""Riemann fans: constant states separated by discontinuities."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from app.models.profile import Profile


@dataclass(frozen=True, eq=False)
class Wave:
    speed: float
    left: np.ndarray
    right: np.ndarray
    kind: str = "shock"
    # variable -> profile; None means every variable shares the linear ramp
    profiles: Optional[Dict[str, Profile]] = None


@dataclass(frozen=True, eq=False)
class DeltaShock:
    """A traveling point mass accumulating `rates` (per conservative component) per unit time."""

    speed: float
    rates: np.ndarray


@dataclass(frozen=True, eq=False)
class RiemannFan:
    left: np.ndarray
    right: np.ndarray
    waves: List[Wave] = field(default_factory=list)
    delta: Optional[DeltaShock] = None

    def __post_init__(self):
        speeds = [w.speed for w in self.waves]
        if any(b < a for a, b in zip(speeds, speeds[1:])):
            raise ValueError(f"wave speeds must be nondecreasing, got {speeds}")

    @property
    def is_empty(self) -> bool:
        return not self.waves and self.delta is None

    @property
    def speeds(self) -> List[float]:
        return [w.speed for w in self.waves]

    @property
    def states(self) -> List[np.ndarray]:
        """Constant states from left to right (len(waves) + 1 entries)."""
        if not self.waves:
            return [self.left]
        return [self.waves[0].left] + [w.right for w in self.waves]

    def max_speed(self) -> float:
        speeds = [abs(s) for s in self.speeds]
        if self.delta is not None:
            speeds.append(abs(self.delta.speed))
        return max(speeds, default=0.0)

    def sample(self, xi: float) -> np.ndarray:
        """State at similarity coordinate xi = x / t."""
        for w in self.waves:
            if xi < w.speed:
                return w.left
        return self.waves[-1].right if self.waves else self.left


def empty_fan(state: np.ndarray) -> RiemannFan:
    return RiemannFan(state, state)
