"""Horizontal wind field on a node grid and the coefficients driving it."""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class WindField:
    """u, v are (ny, nx) arrays on nodes x[i] = x0 + i dx, y[j] = y0 + j dy."""

    dx: float
    dy: float
    u: np.ndarray
    v: np.ndarray
    time: float = 0.0
    x0: float = 0.0
    y0: float = 0.0

    def __post_init__(self):
        if not (self.dx > 0.0 and self.dy > 0.0):
            raise ValueError(f"spacings must be positive, got dx={self.dx}, dy={self.dy}")
        u = np.array(self.u, dtype=float)
        v = np.array(self.v, dtype=float)
        if u.shape != v.shape or u.ndim != 2:
            raise ValueError(f"u and v must be matching 2D arrays, got {u.shape} and {v.shape}")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise ValueError("wind field has non-finite values")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def ny(self) -> int:
        return self.u.shape[0]

    @property
    def nx(self) -> int:
        return self.u.shape[1]

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return self.y0 + self.dy * np.arange(self.ny)

    def speed(self) -> np.ndarray:
        return np.hypot(self.u, self.v)

    def with_values(self, u: np.ndarray, v: np.ndarray, dt: float) -> "WindField":
        return replace(self, u=u, v=v, time=self.time + dt)


@dataclass(frozen=True)
class HurricaneParams:
    omega: float
    mu: float
    kcoef: float
    trade: Tuple[float, float] = (0.0, 0.0)
    # (t_start, overrides) entries applied piecewise-constant from t_start on
    schedule: List[Tuple[float, Dict[str, float]]] = field(default_factory=list)

    def __post_init__(self):
        if self.mu < 0.0 or self.kcoef < 0.0:
            raise ValueError(f"mu and kcoef must be nonnegative, got mu={self.mu}, kcoef={self.kcoef}")

    def at(self, t: float) -> "HurricaneParams":
        """Coefficients in force at time t."""
        values = {"omega": self.omega, "mu": self.mu, "kcoef": self.kcoef,
                  "trade_u": self.trade[0], "trade_v": self.trade[1]}
        for start, overrides in sorted(self.schedule, key=lambda e: e[0]):
            if start <= t:
                values.update(overrides)
        return HurricaneParams(values["omega"], values["mu"], values["kcoef"],
                               (values["trade_u"], values["trade_v"]))


@dataclass(frozen=True)
class EyePosition:
    time: float
    x: float
    y: float
    speed: Optional[float] = None
