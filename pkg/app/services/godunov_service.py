"""
Godunov Engine Service

PURPOSE:
Advance a Grid1D by solving a Riemann problem at every interface and
projecting the juxtaposed fans back onto cell averages.

HOW IT WORKS:
1. Fold last step's point-mass ledger into the cell averages
2. Build ghost cells (outflow copies the edge cell, reflective mirrors it)
3. Solve every interface fan; abort if any fan is wider than half a cell over dt
4. Cell average = sum of weight * state: states entering from the left fan,
   the cell's own state, states entering from the right fan
5. Delta shocks deposit rate * dt into the cell they end up in
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from app.core.config import get_settings
from app.core.exceptions import CFLViolationError, SolverAbort, GFShockError
from app.models.fan import RiemannFan
from app.models.grid import Grid1D, HyperbolicSystem

logger = logging.getLogger(__name__)

SPEED_FLOOR = 1e-12
OUTFLOW = "outflow"
REFLECTIVE = "reflective"
BOUNDARIES = (OUTFLOW, REFLECTIVE)


# ============================================================
# INTERFACES
# ============================================================

def _with_ghosts(states: np.ndarray, system: HyperbolicSystem, boundary: str) -> np.ndarray:
    if boundary == OUTFLOW:
        left, right = states[0], states[-1]
    elif boundary == REFLECTIVE:
        left, right = system.reflect(states[0]), system.reflect(states[-1])
    else:
        raise ValueError(f"unknown boundary '{boundary}', expected one of {BOUNDARIES}")
    return np.vstack([left, states, right])


def interface_fans(grid: Grid1D, system: HyperbolicSystem, boundary: str = OUTFLOW) -> List[RiemannFan]:
    """Fans at the n + 1 interfaces, the outer two against ghost cells."""
    padded = _with_ghosts(grid.states, system, boundary)
    return [system.riemann(padded[i], padded[i + 1]) for i in range(grid.n + 1)]


def _folded(grid: Grid1D) -> Grid1D:
    """Last step's point masses spread over their cells."""
    if not grid.point_masses.any():
        return grid
    return Grid1D(grid.h, grid.states + grid.point_masses / grid.h, None, grid.time, grid.x0)


def cfl_dt(grid: Grid1D, system: HyperbolicSystem, r: float, dt_cap: float,
           boundary: str = OUTFLOW, fans: Optional[List[RiemannFan]] = None) -> float:
    """
    dt = r h / max |speed| over all interface fans, capped at dt_cap.

    Here r bounds r * max|c|, so no wave travels more than r cells.
    """
    if not 0.0 < r <= 0.5:
        raise ValueError(f"CFL number must lie in (0, 0.5], got {r}")
    fans = fans if fans is not None else interface_fans(_folded(grid), system, boundary)
    speed = max((f.max_speed() for f in fans), default=0.0)
    if speed <= SPEED_FLOOR:
        return dt_cap
    return min(dt_cap, r * grid.h / speed)


# ============================================================
# PROJECTION STEP
# ============================================================

def _left_fan_terms(fan: RiemannFan, r: float):
    """(weight, state) for the parts of a fan that enter the cell on its right."""
    terms = []
    speeds = fan.speeds
    for k, wave in enumerate(fan.waves):
        upper = speeds[k]
        if upper <= 0.0:
            continue
        lower = speeds[k - 1] if k > 0 else -math.inf
        terms.append((r * (upper - max(lower, 0.0)), wave.left))
    return terms


def _right_fan_terms(fan: RiemannFan, r: float):
    """(weight, state) for the parts of a fan that enter the cell on its left."""
    terms = []
    speeds = fan.speeds
    n = len(speeds)
    for k, wave in enumerate(fan.waves):
        lower = speeds[k]
        if lower >= 0.0:
            break
        upper = speeds[k + 1] if k + 1 < n else math.inf
        terms.append((r * (min(upper, 0.0) - lower), wave.right))
    return terms


def cell_average(own: np.ndarray, left_fan: RiemannFan, right_fan: RiemannFan, r: float) -> np.ndarray:
    """Exact average over one cell of the two neighbouring fans after dt = r h."""
    left_terms = _left_fan_terms(left_fan, r)
    right_terms = _right_fan_terms(right_fan, r)
    w_own = 1.0
    for w, _ in left_terms:
        w_own = w_own - w
    for w, _ in right_terms:
        w_own = w_own - w
    terms = left_terms + [(w_own, own)] + right_terms
    total = terms[0][0] * terms[0][1]
    for w, state in terms[1:]:
        total = total + w * state
    return total


def _check_width(fans: Sequence[RiemannFan], h: float, dt: float) -> None:
    limit = 0.5 * h * (1.0 + 1e-12)
    for i, fan in enumerate(fans):
        width = fan.max_speed() * dt
        if width > limit:
            raise CFLViolationError(
                f"fan at interface {i} spans {width:.6g} > h/2 = {0.5 * h:.6g} (speed {fan.max_speed():.6g})"
            )


def godunov_step(grid: Grid1D, system: HyperbolicSystem, dt: float, boundary: str = OUTFLOW) -> Grid1D:
    if dt < 0.0:
        raise ValueError(f"negative time step {dt}")
    folded = _folded(grid)
    states = folded.states
    fans = interface_fans(folded, system, boundary)
    _check_width(fans, grid.h, dt)

    r = dt / grid.h
    new_states = np.empty_like(states)
    for j in range(grid.n):
        left_fan, right_fan = fans[j], fans[j + 1]
        if left_fan.is_empty and right_fan.is_empty:
            new_states[j] = states[j]
        else:
            new_states[j] = cell_average(states[j], left_fan, right_fan, r)

    ledger = np.zeros_like(states)
    if system.has_ledger:
        for i, fan in enumerate(fans):
            if fan.delta is None:
                continue
            if boundary == REFLECTIVE and i in (0, grid.n):
                # standing delta at a wall: half of what it collects comes from the mirror cell
                ledger[0 if i == 0 else grid.n - 1] += 0.5 * fan.delta.rates * dt
                continue
            target = i if fan.delta.speed >= 0.0 else i - 1
            if 0 <= target < grid.n:
                ledger[target] += fan.delta.rates * dt

    logger.debug("%s step t=%.6g dt=%.3e", system.name, grid.time, dt)
    return Grid1D(grid.h, new_states, ledger, grid.time + dt, grid.x0)


def split_step(grid: Grid1D, system_a: HyperbolicSystem, system_b: HyperbolicSystem, dt: float,
               boundary: str = OUTFLOW) -> Grid1D:
    """A-step then B-step, both over the same dt."""
    half = godunov_step(grid, system_a, dt, boundary)
    rewound = Grid1D(half.h, half.states, half.point_masses, grid.time, half.x0)
    return godunov_step(rewound, system_b, dt, boundary)


def burgers_reference_step(u: np.ndarray, r: float, boundary: str = OUTFLOW) -> np.ndarray:
    """The four sign cases of the scalar Burgers projection, written out directly."""
    u = np.asarray(u, dtype=float)
    if boundary == OUTFLOW:
        padded = np.concatenate(([u[0]], u, [u[-1]]))
    else:
        padded = np.concatenate(([-u[0]], u, [-u[-1]]))
    out = np.empty_like(u)
    for j in range(u.size):
        um, u0, up = padded[j], padded[j + 1], padded[j + 2]
        ci = (um + u0) / 2
        cp = (u0 + up) / 2
        if ci >= 0 and cp >= 0:
            out[j] = r * ci * um + (1 - r * ci) * u0
        elif ci < 0 and cp < 0:
            out[j] = (1 + r * cp) * u0 - r * cp * up
        elif ci < 0 <= cp:
            out[j] = u0
        else:
            out[j] = r * ci * um + (1 - r * ci + r * cp) * u0 - r * cp * up
    return out


# ============================================================
# DIMENSIONAL SPLITTING
# ============================================================

def dimensional_split_step(states: np.ndarray, system_x: HyperbolicSystem, system_y: HyperbolicSystem,
                           dx: float, dy: float, dt: float, boundary: str = OUTFLOW) -> np.ndarray:
    """1D Godunov steps along every row (x), then along every column (y); states is (ny, nx, comps)."""
    states = np.asarray(states, dtype=float)
    if states.ndim == 2:
        states = states[:, :, None]
    after_x = np.empty_like(states)
    for row in range(states.shape[0]):
        after_x[row] = godunov_step(Grid1D(dx, states[row]), system_x, dt, boundary).states
    after_y = np.empty_like(states)
    for col in range(states.shape[1]):
        after_y[:, col] = godunov_step(Grid1D(dy, after_x[:, col]), system_y, dt, boundary).states
    return after_y


# ============================================================
# DRIVER
# ============================================================

@dataclass
class RunPlan:
    systems: Sequence[HyperbolicSystem]
    cfl: float
    end_time: float
    dt_cap: float = math.inf
    output_times: Sequence[float] = field(default_factory=list)
    boundary: str = OUTFLOW
    on_snapshot: Optional[Callable[[Grid1D], None]] = None


@dataclass
class RunResult:
    snapshots: List[Grid1D]
    steps: int
    retries: int


def _advance(grid: Grid1D, plan: RunPlan, dt: float) -> Grid1D:
    if len(plan.systems) == 1:
        return godunov_step(grid, plan.systems[0], dt, plan.boundary)
    return split_step(grid, plan.systems[0], plan.systems[1], dt, plan.boundary)


def run(grid: Grid1D, plan: RunPlan) -> RunResult:
    """
    Step until end_time, landing exactly on every output time.

    Every stage's fans on the current grid bound dt; a CFL violation on the
    intermediate grid retries the step with dt halved, up to the configured limit.
    """
    settings = get_settings()
    targets = sorted({t for t in plan.output_times if 0.0 <= t <= plan.end_time} | {plan.end_time})
    snapshots: List[Grid1D] = []
    steps = retries = 0

    def emit(g: Grid1D):
        snapshots.append(g)
        if plan.on_snapshot is not None:
            plan.on_snapshot(g)

    if 0.0 in targets or plan.end_time <= 0.0:
        emit(grid)
    targets = [t for t in targets if t > grid.time]

    for target in targets:
        while grid.time < target:
            try:
                dt = min(cfl_dt(grid, s, plan.cfl, plan.dt_cap, plan.boundary) for s in plan.systems)
            except GFShockError as e:
                raise SolverAbort(str(e), steps, grid.time) from e
            dt = min(dt, target - grid.time)
            for attempt in range(settings.cfl_retry_limit + 1):
                try:
                    new_grid = _advance(grid, plan, dt)
                    break
                except CFLViolationError as e:
                    if attempt == settings.cfl_retry_limit:
                        raise SolverAbort(str(e), steps, grid.time) from e
                    logger.warning("CFL violation at t=%.6g, retrying with dt=%.3e", grid.time, dt / 2)
                    dt /= 2
                    retries += 1
                except GFShockError as e:
                    raise SolverAbort(str(e), steps, grid.time) from e
            # land exactly on the target
            if target - new_grid.time <= 1e-12 * max(1.0, target):
                new_grid = Grid1D(new_grid.h, new_grid.states, new_grid.point_masses, target, new_grid.x0)
            grid = new_grid
            steps += 1
        emit(grid)

    logger.info("run finished: %d steps, %d retries, t=%.6g", steps, retries, grid.time)
    return RunResult(snapshots, steps, retries)
