"""
Output Service - files a run leaves behind.

- `<prefix>_t<time>.csv`     one snapshot per output time, full double precision
- `<prefix>_eye_track.csv`   eye positions of a hurricane run
- `manifest.json`            parameters, step count and wall time of the run
- `plot.gp`                  gnuplot script over the snapshots (best effort)
"""

import csv
import logging
import os
from typing import List, Sequence

from app.models.grid import Grid1D
from app.models.wind import EyePosition, WindField
from app.schemas.schemas import RunManifest

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
PLOT_NAME = "plot.gp"


def _fmt(value: float) -> str:
    return "%.17g" % value


def snapshot_name(prefix: str, time: float) -> str:
    return f"{prefix}_t{time:.6f}.csv"


def write_grid_snapshot(directory: str, prefix: str, grid: Grid1D, components: Sequence[str],
                        has_ledger: bool = False) -> str:
    """One row per cell: center, then every component (and its point-mass ledger if any)."""
    name = snapshot_name(prefix, grid.time)
    header = ["x", *components]
    if has_ledger:
        header += [f"ledger_{c}" for c in components]
    with open(os.path.join(directory, name), "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for i, x in enumerate(grid.centers):
            row = [x, *grid.states[i]]
            if has_ledger:
                row += list(grid.point_masses[i])
            writer.writerow([_fmt(v) for v in row])
    logger.info("snapshot written: %s", name)
    return name


def write_field_snapshot(directory: str, prefix: str, field: WindField) -> str:
    name = snapshot_name(prefix, field.time)
    with open(os.path.join(directory, name), "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["x", "y", "u", "v"])
        for j, y in enumerate(field.y):
            for i, x in enumerate(field.x):
                writer.writerow([_fmt(x), _fmt(y), _fmt(field.u[j, i]), _fmt(field.v[j, i])])
    logger.info("snapshot written: %s", name)
    return name


def write_eye_track(directory: str, prefix: str, track: List[EyePosition]) -> str:
    name = f"{prefix}_eye_track.csv"
    with open(os.path.join(directory, name), "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["t", "x_min_speed", "y_min_speed"])
        for eye in track:
            writer.writerow([_fmt(eye.time), _fmt(eye.x), _fmt(eye.y)])
    return name


def write_manifest(directory: str, manifest: RunManifest) -> str:
    with open(os.path.join(directory, MANIFEST_NAME), "w") as f:
        f.write(manifest.model_dump_json(indent=2))
        f.write("\n")
    return MANIFEST_NAME


def write_plot_script(directory: str, files: Sequence[str], columns: Sequence[str], planar: bool = False) -> str:
    """
    gnuplot commands for the snapshot files.

    Line runs get one plot per column against x; planar runs a vector plot per file.
    """
    lines = ['set datafile separator ","', "set key autotitle columnhead", "set terminal pngcairo size 900,600"]
    if planar:
        for name in files:
            stem = os.path.splitext(name)[0]
            lines.append(f'set output "{stem}.png"')
            lines.append("set size ratio -1")
            lines.append(f'plot "{name}" using 1:2:($3*0.2):($4*0.2) with vectors notitle')
    else:
        for k, column in enumerate(columns, start=2):
            lines.append(f'set output "{column}.png"')
            lines.append(f'set title "{column}"')
            plots = ", ".join(f'"{name}" using 1:{k} with lines title "{name}"' for name in files)
            lines.append(f"plot {plots}")
    with open(os.path.join(directory, PLOT_NAME), "w") as f:
        f.write("\n".join(lines) + "\n")
    return PLOT_NAME
