"""
Exception hierarchy.

Every failure a solver can signal derives from GFShockError so the CLI
and the HTTP layer can map them to exit codes / status codes in one place.
"""

from typing import List, Optional


class GFShockError(Exception):
    """Base class for all toolkit errors."""


# ============================================================
# GENERALIZED-FUNCTION LAB
# ============================================================

class ProfileError(GFShockError):
    """A ramp profile violates 0 -> 1 monotone endpoints."""


class AssociationError(GFShockError):
    """An association check was called with an unusable epsilon sequence."""


# ============================================================
# JUMP CONDITIONS
# ============================================================

class NoJumpError(GFShockError):
    """Rankine-Hugoniot speed requested across a zero state jump."""


class MixedProfileError(GFShockError):
    """Mean-value rule applied to variables carrying different profiles."""


class ResonantProfileError(GFShockError):
    """The leading coefficient of a profile equation vanishes inside the ramp."""


class NoTravelingWaveSpeedError(GFShockError):
    """The integral jump condition admits no finite speed."""


class DegenerateJumpError(GFShockError):
    """Some but not all components of a jump vector vanish."""


# ============================================================
# RIEMANN SOLVERS / TIME STEPPING
# ============================================================

class NoAdmissibleMiddleStateError(GFShockError):
    """Newton failed or the middle state left the admissible set."""


class CFLViolationError(GFShockError):
    """A Riemann fan is wider than half a cell over the requested step."""


class StabilityViolationError(GFShockError):
    """Semi-Lagrangian displacement exceeds one grid spacing."""


class SolverAbort(GFShockError):
    """A run stopped because a step raised a numerical error."""

    def __init__(self, message: str, step: int, time: float):
        super().__init__(f"{message} (step {step}, t={time:.6g})")
        self.step = step
        self.time = time


# ============================================================
# CONFIGURATION
# ============================================================

class ConfigError(GFShockError):
    """A scenario document failed validation; carries every violation."""

    def __init__(self, violations: List[str], source: Optional[str] = None):
        self.violations = list(violations)
        self.source = source
        head = f"invalid config {source}" if source else "invalid config"
        super().__init__(head + ": " + "; ".join(self.violations))
