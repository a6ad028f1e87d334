"""
Pydantic Schemas - Scenario documents, run manifests and API responses.

All schemas in one file for simplicity. Scenario sections mirror the
sections of the INI-style config document one to one.
"""

from enum import Enum
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator


# ============================================================
# ENUMS
# ============================================================

class SystemId(str, Enum):
    burgers = "burgers"
    k2 = "k2"
    pressureless = "pressureless"
    euler_split = "euler_split"
    elasto_split = "elasto_split"
    hurricane = "hurricane"


class BoundaryKind(str, Enum):
    outflow = "outflow"
    reflective = "reflective"


# ============================================================
# SCENARIO SECTIONS
# ============================================================

class ScenarioSection(BaseModel):
    system: SystemId
    end_time: float = Field(..., ge=0)
    cfl: float = Field(..., gt=0)
    dt_cap: Optional[float] = Field(None, gt=0)
    boundary: BoundaryKind = BoundaryKind.outflow

    @model_validator(mode="after")
    def check_cfl(self):
        if self.system == SystemId.hurricane:
            if self.cfl > 1.0:
                raise ValueError(
                    f"cfl={self.cfl} exceeds 1: a backtracked point must stay within one grid spacing"
                )
        elif self.cfl > 0.5:
            raise ValueError(
                f"cfl={self.cfl} exceeds 0.5: r * max|c| <= 1/2 is required so that "
                "the discontinuities of neighbouring interfaces cannot meet within a step"
            )
        return self


class LineGrid(BaseModel):
    n: int = Field(..., gt=0)
    h: float = Field(..., gt=0)
    x0: float = 0.0


class PlaneGrid(BaseModel):
    nx: int = Field(..., ge=2)
    ny: int = Field(..., ge=2)
    dx: float = Field(..., gt=0)
    dy: float = Field(..., gt=0)


class SegmentsInitial(BaseModel):
    """Piecewise-constant data: states[i] holds between interfaces[i-1] and interfaces[i]."""

    interfaces: List[float] = []
    states: List[Dict[str, float]]

    @model_validator(mode="after")
    def check_layout(self):
        if len(self.states) != len(self.interfaces) + 1:
            raise ValueError(
                f"{len(self.interfaces)} interfaces need {len(self.interfaces) + 1} states, got {len(self.states)}"
            )
        if any(b <= a for a, b in zip(self.interfaces, self.interfaces[1:])):
            raise ValueError("interfaces must be strictly increasing")
        return self


class RingInitial(BaseModel):
    """Calm eye, rotating ring, trade wind outside."""

    kind: Literal["ring"]
    xc: float
    yc: float
    r_eye: float = Field(..., ge=0)
    r_outer: float = Field(..., gt=0)
    vmax: float

    @model_validator(mode="after")
    def check_radii(self):
        if self.r_outer <= self.r_eye:
            raise ValueError(f"r_outer={self.r_outer} must exceed r_eye={self.r_eye}")
        return self


class ScheduleEntry(BaseModel):
    t_start: float = Field(..., ge=0)
    overrides: Dict[str, float]

    @field_validator("overrides")
    @classmethod
    def known_keys(cls, v: Dict[str, float]) -> Dict[str, float]:
        unknown = set(v) - {"omega", "mu", "kcoef", "trade_u", "trade_v"}
        if unknown:
            raise ValueError(f"unknown schedule keys: {', '.join(sorted(unknown))}")
        return v


class OutputSection(BaseModel):
    times: List[float] = []
    directory: Optional[str] = None
    prefix: Optional[str] = None

    @field_validator("times")
    @classmethod
    def nonnegative(cls, v: List[float]) -> List[float]:
        if any(t < 0 for t in v):
            raise ValueError("output times must be nonnegative")
        return sorted(v)


class ScenarioConfig(BaseModel):
    scenario: ScenarioSection
    grid: Union[LineGrid, PlaneGrid]
    params: Dict[str, float] = {}
    initial: Union[SegmentsInitial, RingInitial]
    schedule: List[ScheduleEntry] = []
    output: OutputSection = OutputSection()

    @property
    def system(self) -> SystemId:
        return self.scenario.system

    @property
    def prefix(self) -> str:
        return self.output.prefix or self.scenario.system.value


# ============================================================
# RUN MANIFEST
# ============================================================

class RunManifest(BaseModel):
    """Everything that fixed the numbers in a run's output files."""

    version: str
    system: SystemId
    scenario: dict
    stages: List[dict]
    settings: dict
    steps: int
    retries: int = 0
    wall_time_s: float
    snapshot_times: List[float]
    files: List[str]
    eye_track: Optional[str] = None


# ============================================================
# API RESPONSES
# ============================================================

class PresetInfo(BaseModel):
    name: str
    description: str
    config_text: str


class ValidationResponse(BaseModel):
    valid: bool
    config: ScenarioConfig


class RunResponse(BaseModel):
    output_dir: str
    manifest: RunManifest


class HealthResponse(BaseModel):
    status: str = "healthy"
    version: str
