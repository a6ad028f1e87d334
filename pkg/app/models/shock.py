"""Traveling-discontinuity ansatz w = w_l + dw * H_w(x - ct) and its residual record."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from app.core.config import get_settings
from app.models.profile import Profile


@dataclass(frozen=True)
class ShockAnsatz:
    left: Dict[str, float]
    delta: Dict[str, float]
    speed: float
    profiles: Dict[str, Profile] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.left) != set(self.delta):
            raise ValueError(f"left and delta name different variables: {sorted(self.left)} vs {sorted(self.delta)}")

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(self.left)

    @property
    def right(self) -> Dict[str, float]:
        return {k: self.left[k] + self.delta[k] for k in self.left}

    def profile_of(self, name: str) -> Profile:
        try:
            return self.profiles[name]
        except KeyError:
            raise KeyError(f"no profile assigned to variable '{name}'") from None

    def shared_profile(self, names: Iterable[str]):
        """The single profile carried by every named variable, or None if they differ."""
        names = list(names)
        first = self.profile_of(names[0])
        for n in names[1:]:
            if not first.same_as(self.profile_of(n)):
                return None
        return first

    def state_at(self, ramp_values: Dict[str, np.ndarray]) -> Dict[str, np.ndarray]:
        """Field values given each variable's ramp value H_w."""
        return {k: self.left[k] + self.delta[k] * ramp_values[k] for k in self.left}

    def with_profiles(self, profiles: Dict[str, Profile]) -> "ShockAnsatz":
        return ShockAnsatz(dict(self.left), dict(self.delta), self.speed, dict(profiles))

    @classmethod
    def between(cls, names, left, right, speed: float, profiles: Dict[str, Profile]) -> "ShockAnsatz":
        left_d = {n: float(a) for n, a in zip(names, left)}
        delta_d = {n: float(b) - float(a) for n, a, b in zip(names, left, right)}
        return cls(left_d, delta_d, speed, profiles)


@dataclass(frozen=True)
class JumpResidual:
    values: Dict[str, float]

    def max_abs(self) -> float:
        return max((abs(v) for v in self.values.values()), default=0.0)

    def passes(self, tol: Optional[float] = None) -> bool:
        """Every residual within tol, or within the configured residual_tol when tol is None."""
        if tol is None:
            tol = get_settings().residual_tol
        return self.max_abs() <= tol

    def as_tuple(self) -> Tuple[float, ...]:
        return tuple(self.values.values())
