"""
Regularized Heaviside profiles and the objects built on them.

A Profile is one concrete shape for "the" Heaviside function: a monotone
ramp from 0 to 1 sampled at M+1 equispaced nodes of the ramp variable
t in [0, 1] and interpolated linearly in between. A RegularizedStep
stretches it over [0, epsilon]; its derivative is the Dirac representative.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from app.core.exceptions import ProfileError

DEFAULT_NODES = 1024


# ============================================================
# PROFILE
# ============================================================

@dataclass(frozen=True, eq=False)
class Profile:
    samples: np.ndarray
    name: str = "H"

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.ndim != 1 or s.size < 2:
            raise ProfileError(f"profile {self.name}: need at least 2 samples, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ProfileError(f"profile {self.name}: non-finite samples")
        if s[0] != 0.0 or s[-1] != 1.0:
            raise ProfileError(f"profile {self.name}: endpoints must be 0 and 1, got {s[0]!r} and {s[-1]!r}")
        if np.any(np.diff(s) < 0.0):
            raise ProfileError(f"profile {self.name}: samples must be nondecreasing")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def M(self) -> int:
        return self.samples.size - 1

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.M + 1)

    @property
    def slopes(self) -> np.ndarray:
        """dH/dt on each ramp cell (piecewise constant)."""
        return np.diff(self.samples) * self.M

    def __call__(self, t):
        return np.interp(t, self.nodes, self.samples, left=0.0, right=1.0)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        cell = np.clip(np.floor(t * self.M).astype(int), 0, self.M - 1)
        inside = (t > 0.0) & (t < 1.0)
        return np.where(inside, self.slopes[cell], 0.0)

    def same_as(self, other: "Profile") -> bool:
        return self is other or (self.M == other.M and np.array_equal(self.samples, other.samples))

    # --------------------------------------------------------
    # Constructors
    # --------------------------------------------------------

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], M: int = DEFAULT_NODES,
                      name: str = "H") -> "Profile":
        t = np.linspace(0.0, 1.0, M + 1)
        s = np.asarray(fn(t), dtype=float)
        # snap endpoints that are off by rounding only
        for idx, target in ((0, 0.0), (-1, 1.0)):
            if abs(s[idx] - target) <= 1e-12:
                s[idx] = target
        return cls(s, name=name)

    @classmethod
    def linear(cls, M: int = DEFAULT_NODES, name: str = "H") -> "Profile":
        return cls.from_function(lambda t: t, M, name)

    @classmethod
    def power(cls, p: float, M: int = DEFAULT_NODES, name: str = "H") -> "Profile":
        return cls.from_function(lambda t: t ** p, M, name)

    @classmethod
    def smoothstep(cls, M: int = DEFAULT_NODES, name: str = "H") -> "Profile":
        return cls.from_function(lambda t: t * t * (3.0 - 2.0 * t), M, name)

    @classmethod
    def kinked(cls, knot: float, value_at_knot: float, M: int = DEFAULT_NODES,
               name: str = "H") -> "Profile":
        """Two linear pieces meeting at (knot, value_at_knot); knot should sit on a node."""
        if not (0.0 < knot < 1.0) or not (0.0 <= value_at_knot <= 1.0):
            raise ProfileError(f"profile {name}: kink ({knot}, {value_at_knot}) outside the unit square")
        return cls.from_function(
            lambda t: np.interp(t, [0.0, knot, 1.0], [0.0, value_at_knot, 1.0]), M, name
        )

    @classmethod
    def random_monotone(cls, rng: np.random.Generator, M: int = DEFAULT_NODES,
                        name: str = "H") -> "Profile":
        increments = rng.random(M) + 1e-3
        s = np.concatenate(([0.0], np.cumsum(increments)))
        s = np.minimum(s / s[-1], 1.0)
        s[-1] = 1.0
        return cls(s, name=name)


# ============================================================
# REGULARIZED STEP (H_eps) AND ITS DERIVATIVE (delta_eps)
# ============================================================

@dataclass(frozen=True)
class RegularizedStep:
    profile: Profile
    epsilon: float

    def __post_init__(self):
        if not (self.epsilon > 0.0):
            raise ProfileError(f"ramp width must be positive, got {self.epsilon}")

    def __call__(self, x):
        return self.profile(np.asarray(x, dtype=float) / self.epsilon)

    def delta(self, x):
        return self.profile.derivative(np.asarray(x, dtype=float) / self.epsilon) / self.epsilon


# ============================================================
# TEST FUNCTIONS
# ============================================================

@dataclass(frozen=True)
class TestFunction:
    support: Tuple[float, float]
    evaluator: Callable[[np.ndarray], np.ndarray]

    __test__ = False  # not a pytest class

    def __post_init__(self):
        a, b = self.support
        if not a < b:
            raise ValueError(f"empty support {self.support}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        a, b = self.support
        inside = (x > a) & (x < b)
        values = np.zeros_like(x)
        if np.any(inside):
            values[inside] = self.evaluator(x[inside])
        return values

    @classmethod
    def bump(cls, center: float = 0.0, radius: float = 1.0) -> "TestFunction":
        """Standard C-infinity bump normalized to 1 at its center."""

        def evaluate(x):
            r2 = ((x - center) / radius) ** 2
            return np.exp(1.0 - 1.0 / (1.0 - r2))

        return cls((center - radius, center + radius), evaluate)


# ============================================================
# POLYNOMIALS IN TWO RAMP VALUES
# ============================================================

@dataclass(frozen=True, eq=False)
class RampPolynomial:
    """f(p, q) = sum c[i, j] p**i q**j."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.atleast_2d(np.array(self.coefficients, dtype=float))
        object.__setattr__(self, "coefficients", c)

    def __call__(self, p, q):
        return npoly.polyval2d(p, q, self.coefficients)

    @property
    def degree(self) -> int:
        i, j = np.nonzero(self.coefficients)
        return int((i + j).max()) if i.size else 0

    @classmethod
    def in_q(cls, coeffs) -> "RampPolynomial":
        """Polynomial of the second argument only, coefficients in increasing degree."""
        return cls(np.atleast_2d(np.asarray(coeffs, dtype=float)))

    @classmethod
    def in_p(cls, coeffs) -> "RampPolynomial":
        return cls(np.asarray(coeffs, dtype=float).reshape(-1, 1))


# ============================================================
# REGULARIZED FIELDS
# ============================================================

@dataclass(frozen=True)
class RegularizedField:
    """A field built pointwise from H_eps and delta_eps of one profile."""

    profile: Profile
    combine: Callable[[np.ndarray, np.ndarray], np.ndarray]
    label: Optional[str] = field(default=None)

    def __call__(self, x, epsilon: float):
        step = RegularizedStep(self.profile, epsilon)
        return self.combine(step(x), step.delta(x))

    @classmethod
    def heaviside_power(cls, profile: Profile, n: int) -> "RegularizedField":
        return cls(profile, lambda h, dh: h ** n, f"H^{n}")

    @classmethod
    def heaviside_power_delta(cls, profile: Profile, n: int) -> "RegularizedField":
        return cls(profile, lambda h, dh: h ** n * dh, f"H^{n}.delta")
