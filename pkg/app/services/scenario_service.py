"""
Scenario Service

PURPOSE:
Turn a sectioned key=value scenario document into a validated ScenarioConfig,
build the initial grid (or wind field) and systems it names, and run it to
snapshot files plus a manifest.

DOCUMENT LAYOUT:
    [scenario]  system, end_time, cfl, dt_cap, boundary
    [grid]      n, h, x0            (line systems)
                nx, ny, dx, dy      (hurricane)
    [params]    system parameters (k; gamma; gamma, k2, s0; omega, mu, kcoef, trade_u, trade_v)
    [initial]   interfaces = x1, x2, ...  and  state0 = name=value, ...  per segment
                kind = ring, xc, yc, r_eye, r_outer, vmax   (hurricane)
    [schedule]  any_key = t=<start>, name=value, ...   (hurricane coefficient changes)
    [output]    times, directory, prefix

Every violation found is reported at once through ConfigError.
"""

import configparser
import logging
import os
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from app import __version__
from app.core.config import get_settings
from app.core.exceptions import ConfigError
from app.models.grid import Grid1D, HyperbolicSystem
from app.models.states import ElastoParams, ElastoState, EulerState, K2State
from app.models.wind import HurricaneParams
from app.schemas.schemas import LineGrid, PlaneGrid, RingInitial, RunManifest, ScenarioConfig, SystemId
from app.services import output_service
from app.services.godunov_service import RunPlan, run
from app.services.hurricane_service import ring_vortex, run_hurricane
from app.services.systems_service import (
    burgers_system,
    elasto_force_system,
    elasto_transport_system,
    k2_system,
    pressure_system,
    pressureless_system,
)

logger = logging.getLogger(__name__)

SECTIONS = ("scenario", "grid", "params", "initial", "schedule", "output")
REQUIRED_SECTIONS = ("scenario", "grid", "initial")

REQUIRED_PARAMS: Dict[SystemId, Tuple[str, ...]] = {
    SystemId.burgers: (),
    SystemId.k2: ("k",),
    SystemId.pressureless: (),
    SystemId.euler_split: ("gamma",),
    SystemId.elasto_split: ("gamma", "k2", "s0"),
    SystemId.hurricane: ("omega", "mu", "kcoef"),
}
OPTIONAL_PARAMS: Dict[SystemId, Tuple[str, ...]] = {
    SystemId.hurricane: ("trade_u", "trade_v"),
}

# accepted variable sets of one initial segment
STATE_VARIABLES: Dict[SystemId, Tuple[Tuple[str, ...], ...]] = {
    SystemId.burgers: (("u",),),
    SystemId.k2: (("v", "u", "sigma"),),
    SystemId.pressureless: (("rho", "u", "e"),),
    SystemId.euler_split: (("rho", "u", "p"), ("rho", "u", "e")),
    SystemId.elasto_split: (("v", "u", "s", "p"),),
}


# ============================================================
# PARSING
# ============================================================

def _split_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _pairs(text: str, where: str, violations: List[str]) -> Dict[str, str]:
    """'a=1, b=2' -> {'a': '1', 'b': '2'}"""
    out = {}
    for item in _split_list(text):
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            violations.append(f"{where}: expected name=value, got '{item}'")
            continue
        out[name.strip().lower()] = value.strip()
    return out


def _initial_section(section, violations: List[str]) -> dict:
    if "kind" in section:
        return dict(section)
    states = {}
    raw = {"interfaces": _split_list(section.get("interfaces", ""))}
    for key, value in section.items():
        if key == "interfaces":
            continue
        if key.startswith("state") and key[5:].isdigit():
            states[int(key[5:])] = _pairs(value, f"initial.{key}", violations)
        else:
            violations.append(f"initial.{key}: unknown key")
    if sorted(states) != list(range(len(states))):
        violations.append(f"initial: states must be numbered state0..state{len(states) - 1} without gaps")
    raw["states"] = [states[i] for i in sorted(states)]
    return raw


def _schedule_section(section, violations: List[str]) -> List[dict]:
    entries = []
    for key, value in section.items():
        pairs = _pairs(value, f"schedule.{key}", violations)
        if "t" not in pairs:
            violations.append(f"schedule.{key}: missing start time t=")
            continue
        entries.append({"t_start": pairs.pop("t"), "overrides": pairs})
    return entries


def _format_error(error: dict) -> str:
    loc = ".".join(str(part) for part in error["loc"])
    return f"{loc}: {error['msg']}" if loc else error["msg"]


def _system_violations(config: ScenarioConfig) -> List[str]:
    """Checks that depend on which system the document names."""
    system = config.system
    violations = []
    planar = system == SystemId.hurricane
    if planar != isinstance(config.grid, PlaneGrid):
        wanted = "nx, ny, dx, dy" if planar else "n, h, x0"
        violations.append(f"grid: system {system.value} needs {wanted}")
    if planar != isinstance(config.initial, RingInitial):
        wanted = "kind = ring" if planar else "interfaces and state0, state1, ..."
        violations.append(f"initial: system {system.value} needs {wanted}")
    if config.schedule and not planar:
        violations.append("schedule: only the hurricane system takes a schedule")
    if violations or planar:
        return violations

    params = config.params
    for i, state in enumerate(config.initial.states):
        if tuple(sorted(state)) not in {tuple(sorted(v)) for v in STATE_VARIABLES[system]}:
            options = " or ".join(", ".join(v) for v in STATE_VARIABLES[system])
            violations.append(f"initial.state{i}: system {system.value} needs {options}, got {', '.join(state)}")
            continue
        try:
            _state_vector(system, state, params)
        except ValueError as e:
            violations.append(f"initial.state{i}: {e}")
    return violations


def _param_violations(system: SystemId, params: dict) -> List[str]:
    violations = []
    required = REQUIRED_PARAMS[system]
    allowed = set(required) | set(OPTIONAL_PARAMS.get(system, ()))
    for key in required:
        if key not in params:
            violations.append(f"params.{key}: required for system {system.value}")
    for key in params:
        if key not in allowed:
            violations.append(f"params.{key}: unknown parameter for system {system.value}")
    return violations


def _numeric_param_violations(system: SystemId, params: Dict[str, float]) -> List[str]:
    checks = {
        "k": (lambda x: x > 0, "must be positive"),
        "gamma": (lambda x: x > 1, "must exceed 1"),
        "k2": (lambda x: x >= 0, "must be nonnegative"),
        "s0": (lambda x: x > 0, "must be positive"),
        "mu": (lambda x: x >= 0, "must be nonnegative"),
        "kcoef": (lambda x: x >= 0, "must be nonnegative"),
    }
    return [
        f"params.{key}: {message}, got {params[key]}"
        for key, (ok, message) in checks.items()
        if key in params and key in REQUIRED_PARAMS[system] and not ok(params[key])
    ]


def parse_config(text: str, source: Optional[str] = None) -> ScenarioConfig:
    """Validated ScenarioConfig, or ConfigError listing every violation."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=source or "<config>")
    except configparser.Error as e:
        raise ConfigError([f"malformed document: {e}"], source) from e

    violations: List[str] = []
    for name in parser.sections():
        if name not in SECTIONS:
            violations.append(f"[{name}]: unknown section")
    for name in REQUIRED_SECTIONS:
        if not parser.has_section(name):
            violations.append(f"[{name}]: section is missing")

    raw: dict = {}
    if parser.has_section("scenario"):
        raw["scenario"] = dict(parser["scenario"])
    if parser.has_section("grid"):
        raw["grid"] = dict(parser["grid"])
    if parser.has_section("params"):
        raw["params"] = dict(parser["params"])
    if parser.has_section("initial"):
        raw["initial"] = _initial_section(parser["initial"], violations)
    if parser.has_section("schedule"):
        raw["schedule"] = _schedule_section(parser["schedule"], violations)
    if parser.has_section("output"):
        out = dict(parser["output"])
        if "times" in out:
            out["times"] = _split_list(out["times"])
        raw["output"] = out

    # parameter names are checked on the raw text so they are reported next to type errors
    system_name = raw.get("scenario", {}).get("system")
    if system_name in SystemId._value2member_map_:
        violations += _param_violations(SystemId(system_name), raw.get("params", {}))

    config = None
    try:
        config = ScenarioConfig.model_validate(raw)
    except ValidationError as e:
        violations += [_format_error(err) for err in e.errors()]

    if config is not None and not violations:
        violations += _numeric_param_violations(config.system, config.params)
        if not violations:
            violations += _system_violations(config)

    if violations:
        raise ConfigError(violations, source)
    logger.debug("config %s validated: system=%s", source or "<config>", config.system.value)
    return config


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError([f"cannot read config: {e}"], path) from e
    return parse_config(text, source=path)


# ============================================================
# PRESETS
# ============================================================

@dataclass(frozen=True)
class Preset:
    description: str
    text: str


PRESETS: Dict[str, Preset] = {
    "burgers_shock": Preset(
        "Burgers shock u=1 | u=0 travelling at speed 1/2.",
        """\
[scenario]
system = burgers
end_time = 0.5
cfl = 0.4

[grid]
n = 400
h = 0.005
x0 = 0.0

[initial]
interfaces = 0.25
state0 = u=1
state1 = u=0

[output]
times = 0.25, 0.5
prefix = burgers
""",
    ),
    "sod_split": Preset(
        "Sod tube advanced by the pressureless/pressure splitting, gamma=1.4.",
        """\
[scenario]
system = euler_split
end_time = 0.2
cfl = 0.4

[grid]
n = 400
h = 0.0025
x0 = 0.0

[params]
gamma = 1.4

[initial]
interfaces = 0.5
state0 = rho=1.0, u=0.0, p=1.0
state1 = rho=0.125, u=0.0, p=0.1

[output]
times = 0.1, 0.2
prefix = sod
""",
    ),
    "k2_shock": Preset(
        "k^2-model collision with k=1: two waves and a contact.",
        """\
[scenario]
system = k2
end_time = 0.4
cfl = 0.4

[grid]
n = 200
h = 0.01
x0 = -1.0

[params]
k = 1.0

[initial]
interfaces = 0.0
state0 = v=1.0, u=0.2, sigma=0.0
state1 = v=1.2, u=-0.2, sigma=0.0

[output]
times = 0.2, 0.4
prefix = k2
""",
    ),
    "elasto_precursor": Preset(
        "Symmetric plate impact at moderate speed: elastic precursors ahead of plastic waves.",
        """\
[scenario]
system = elasto_split
end_time = 0.1
cfl = 0.4

[grid]
n = 200
h = 0.01
x0 = -1.0

[params]
gamma = 2.0
k2 = 14.0
s0 = 0.5

[initial]
interfaces = 0.0
state0 = v=1.0, u=0.5, s=0.0, p=1.0
state1 = v=1.0, u=-0.5, s=0.0, p=1.0

[output]
times = 0.05, 0.1
prefix = elasto
""",
    ),
    "elasto_merged": Preset(
        "Symmetric plate impact at high speed: one merged elastoplastic wave per side.",
        """\
[scenario]
system = elasto_split
end_time = 0.1
cfl = 0.4

[grid]
n = 200
h = 0.01
x0 = -1.0

[params]
gamma = 2.0
k2 = 14.0
s0 = 0.5

[initial]
interfaces = 0.0
state0 = v=1.0, u=4.5, s=0.0, p=1.0
state1 = v=1.0, u=-4.5, s=0.0, p=1.0

[output]
times = 0.05, 0.1
prefix = elasto
""",
    ),
    "hurricane_ring": Preset(
        "Rotating ring around a calm eye drifting in a trade wind; friction raised at t=2.5.",
        """\
[scenario]
system = hurricane
end_time = 5.0
cfl = 0.8

[grid]
nx = 81
ny = 81
dx = 0.125
dy = 0.125

[params]
omega = 1.0
mu = 0.1
kcoef = 0.1
trade_u = 0.2
trade_v = 0.0

[initial]
kind = ring
xc = 5.0
yc = 5.0
r_eye = 0.75
r_outer = 2.5
vmax = 1.0

[schedule]
stronger_friction = t=2.5, mu=0.15

[output]
times = 1.0, 2.0, 3.0, 4.0, 5.0
prefix = hurricane
""",
    ),
}


def preset_config(name: str) -> ScenarioConfig:
    preset = PRESETS.get(name)
    if preset is None:
        raise ConfigError([f"unknown preset '{name}', expected one of {', '.join(PRESETS)}"], name)
    logger.info("expanding preset %s", name)
    return parse_config(preset.text, source=f"preset:{name}")


# ============================================================
# INITIAL DATA AND SYSTEMS
# ============================================================

def _state_vector(system: SystemId, state: Dict[str, float], params: Dict[str, float]) -> np.ndarray:
    """Grid vector of one initial segment; ValueError on inadmissible values."""
    if system == SystemId.burgers:
        return np.array([state["u"]])
    if system == SystemId.k2:
        return K2State(state["v"], state["u"], state["sigma"]).as_array()
    if system in (SystemId.pressureless, SystemId.euler_split):
        if state["rho"] == 0.0:
            return EulerState.vacuum().conservative()
        if "p" in state:
            if state["p"] < 0.0:
                raise ValueError(f"negative pressure {state['p']}")
            return EulerState.from_pressure(state["rho"], state["u"], state["p"], params["gamma"]).conservative()
        return EulerState(state["rho"], state["u"], state["e"]).conservative()
    if system == SystemId.elasto_split:
        s0 = params["s0"]
        if abs(state["s"]) > s0:
            raise ValueError(f"|s|={abs(state['s'])} exceeds the yield cap s0={s0}")
        if not state["p"] > 0.0:
            raise ValueError(f"pressure must be positive, got {state['p']}")
        return ElastoState(state["v"], state["u"], state["s"], state["p"]).as_array()
    raise ValueError(f"system {system.value} has no line initial data")


def build_systems(config: ScenarioConfig) -> List[HyperbolicSystem]:
    """Stages of one step, in the order they are applied."""
    system, params = config.system, config.params
    if system == SystemId.burgers:
        return [burgers_system()]
    if system == SystemId.k2:
        return [k2_system(params["k"])]
    if system == SystemId.pressureless:
        return [pressureless_system()]
    if system == SystemId.euler_split:
        return [pressureless_system(), pressure_system(params["gamma"])]
    if system == SystemId.elasto_split:
        elasto = ElastoParams(params["gamma"], params["k2"], params["s0"])
        return [elasto_transport_system(), elasto_force_system(elasto)]
    raise ValueError(f"system {system.value} is not stepped on a line grid")


def initial_grid(config: ScenarioConfig) -> Grid1D:
    grid: LineGrid = config.grid
    centers = grid.x0 + grid.h * (np.arange(grid.n) + 0.5)
    segment = np.searchsorted(np.asarray(config.initial.interfaces, dtype=float), centers, side="right")
    vectors = [_state_vector(config.system, s, config.params) for s in config.initial.states]
    return Grid1D(grid.h, np.array([vectors[k] for k in segment]), x0=grid.x0)


def hurricane_params(config: ScenarioConfig) -> HurricaneParams:
    p = config.params
    return HurricaneParams(
        p["omega"], p["mu"], p["kcoef"],
        (p.get("trade_u", 0.0), p.get("trade_v", 0.0)),
        [(entry.t_start, dict(entry.overrides)) for entry in config.schedule],
    )


def initial_field(config: ScenarioConfig):
    grid: PlaneGrid = config.grid
    ring: RingInitial = config.initial
    trade = hurricane_params(config).trade
    return ring_vortex(grid.nx, grid.ny, grid.dx, grid.dy, ring.xc, ring.yc,
                       ring.r_eye, ring.r_outer, ring.vmax, trade)


# ============================================================
# RUNNING
# ============================================================

def _settings_snapshot() -> dict:
    return get_settings().model_dump(
        include={"profile_nodes", "residual_tol", "newton_max_iter", "newton_tol", "cfl_retry_limit"}
    )


def run_scenario(config: ScenarioConfig, out_dir: Optional[str] = None) -> RunManifest:
    """
    Run a validated config and write its files.

    The output directory is GFSHOCK_OUT if set, else out_dir, else the
    config's [output] directory, else the default. Solver failures surface
    as SolverAbort (or another GFShockError).
    """
    settings = get_settings()
    directory = settings.output_dir(out_dir or config.output.directory)
    os.makedirs(directory, exist_ok=True)
    prefix = config.prefix
    scenario = config.scenario
    logger.info("run start: system=%s end_time=%g cfl=%g -> %s",
                scenario.system.value, scenario.end_time, scenario.cfl, directory)

    files: List[str] = []
    started = time.perf_counter()
    eye_file = None
    if config.system == SystemId.hurricane:
        params = hurricane_params(config)
        snapshots, track, steps = run_hurricane(
            initial_field(config), params, scenario.end_time, scenario.cfl, config.output.times,
            on_snapshot=lambda f: files.append(output_service.write_field_snapshot(directory, prefix, f)),
        )
        retries = 0
        eye_file = output_service.write_eye_track(directory, prefix, track)
        stages = [{"name": "hurricane", "omega": params.omega, "mu": params.mu, "kcoef": params.kcoef,
                   "trade": list(params.trade), "schedule": [[t, o] for t, o in params.schedule]}]
        snapshot_times = [f.time for f in snapshots]
        columns = ("u", "v")
    else:
        systems = build_systems(config)
        components = systems[0].components
        has_ledger = any(s.has_ledger for s in systems)
        plan = RunPlan(
            systems=systems,
            cfl=scenario.cfl,
            end_time=scenario.end_time,
            dt_cap=scenario.dt_cap if scenario.dt_cap is not None else float("inf"),
            output_times=config.output.times,
            boundary=scenario.boundary.value,
            on_snapshot=lambda g: files.append(
                output_service.write_grid_snapshot(directory, prefix, g, components, has_ledger)
            ),
        )
        result = run(initial_grid(config), plan)
        steps, retries = result.steps, result.retries
        stages = [{"name": s.name, "components": list(s.components), **s.metadata} for s in systems]
        snapshot_times = [g.time for g in result.snapshots]
        columns = components
    wall = time.perf_counter() - started

    plot = output_service.write_plot_script(directory, files, columns, planar=config.system == SystemId.hurricane)
    manifest = RunManifest(
        version=__version__,
        system=config.system,
        scenario=config.model_dump(mode="json"),
        stages=stages,
        settings=_settings_snapshot(),
        steps=steps,
        retries=retries,
        wall_time_s=wall,
        snapshot_times=snapshot_times,
        files=files + [plot] + ([eye_file] if eye_file else []),
        eye_track=eye_file,
    )
    output_service.write_manifest(directory, manifest)
    logger.info("run finished: %d steps in %.3fs, %d snapshots", steps, wall, len(files))
    return manifest
