"""Physical states of the systems the Riemann solvers know about."""

from dataclasses import dataclass

import numpy as np


def gamma_law(rho, e, u, gamma: float):
    """Pressure from the gamma law p = (gamma - 1) rho (e - u^2/2)."""
    if not gamma > 1.0:
        raise ValueError(f"gamma must exceed 1, got {gamma}")
    return (gamma - 1.0) * rho * (e - 0.5 * u * u)


@dataclass(frozen=True)
class EulerState:
    """Density, velocity and specific total energy. rho == 0 is vacuum."""

    rho: float
    u: float
    e: float

    def __post_init__(self):
        if self.rho < 0.0:
            raise ValueError(f"negative density {self.rho}")

    @property
    def is_vacuum(self) -> bool:
        return self.rho == 0.0

    def pressure(self, gamma: float) -> float:
        return float(gamma_law(self.rho, self.e, self.u, gamma))

    def conservative(self) -> np.ndarray:
        return np.array([self.rho, self.rho * self.u, self.rho * self.e])

    @classmethod
    def from_conservative(cls, w) -> "EulerState":
        rho, m, E = (float(x) for x in w)
        if rho <= 0.0:
            return cls.vacuum()
        return cls(rho, m / rho, E / rho)

    @classmethod
    def from_pressure(cls, rho: float, u: float, p: float, gamma: float) -> "EulerState":
        return cls(rho, u, p / ((gamma - 1.0) * rho) + 0.5 * u * u)

    @classmethod
    def vacuum(cls) -> "EulerState":
        return cls(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class K2State:
    v: float
    u: float
    sigma: float

    def __post_init__(self):
        if not self.v > 0.0:
            raise ValueError(f"specific volume must be positive, got {self.v}")

    def as_array(self) -> np.ndarray:
        return np.array([self.v, self.u, self.sigma])

    @classmethod
    def from_array(cls, w) -> "K2State":
        return cls(*(float(x) for x in w))


@dataclass(frozen=True)
class ElastoState:
    v: float
    u: float
    s: float
    p: float

    def __post_init__(self):
        if not self.v > 0.0:
            raise ValueError(f"specific volume must be positive, got {self.v}")

    @property
    def sigma(self) -> float:
        return self.s - self.p

    def as_array(self) -> np.ndarray:
        return np.array([self.v, self.u, self.s, self.p])

    @classmethod
    def from_array(cls, w) -> "ElastoState":
        return cls(*(float(x) for x in w))


@dataclass(frozen=True)
class ElastoParams:
    gamma: float
    k2: float
    s0: float

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if self.k2 < 0.0 or self.s0 <= 0.0:
            raise ValueError("k2 must be >= 0 and s0 > 0")

    def k2_of(self, s: float) -> float:
        """Elastic modulus switch: zero once |s| reaches the cap."""
        return 0.0 if abs(s) >= self.s0 * (1.0 - 1e-12) else self.k2
