"""
Command line front end.

    python -m app run <config-path> [--out DIR]
    python -m app preset <name> [--out DIR]
    python -m app validate <config-path>
    python -m app --version

Exit codes: 0 success, 2 config error, 3 solver abort.
GFSHOCK_OUT overrides every output directory.
"""

import argparse
import logging
import sys
from typing import List, Optional

from app import __version__
from app.core.config import get_settings
from app.core.exceptions import ConfigError, GFShockError
from app.core.logging_config import configure_logging
from app.services.scenario_service import PRESETS, load_config, preset_config, run_scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfshock",
        description="Godunov and semi-Lagrangian runs of nonconservative shock scenarios",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="Run a scenario config file")
    run_p.add_argument("config", help="Path to the scenario config")
    run_p.add_argument("--out", help="Output directory (GFSHOCK_OUT takes precedence)")

    preset_p = sub.add_parser("preset", help="Run a named preset")
    preset_p.add_argument("name", choices=sorted(PRESETS), help="Preset name")
    preset_p.add_argument("--out", help="Output directory (GFSHOCK_OUT takes precedence)")

    validate_p = sub.add_parser("validate", help="Validate a scenario config without running it")
    validate_p.add_argument("config", help="Path to the scenario config")
    return parser


def _report_config_error(e: ConfigError) -> None:
    print(f"❌ {e.source or 'config'}: {len(e.violations)} problem(s)", file=sys.stderr)
    for violation in e.violations:
        print(f"   - {violation}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(get_settings())

    try:
        if args.command == "validate":
            config = load_config(args.config)
            print(f"✅ {args.config}: valid {config.system.value} scenario")
            return EXIT_OK
        config = load_config(args.config) if args.command == "run" else preset_config(args.name)
        manifest = run_scenario(config, args.out)
    except ConfigError as e:
        _report_config_error(e)
        return EXIT_CONFIG
    except GFShockError as e:
        logger.error("solver abort: %s", e)
        print(f"❌ solver abort: {e}", file=sys.stderr)
        return EXIT_SOLVER

    print(f"✅ {manifest.steps} steps, {len(manifest.snapshot_times)} snapshots written")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
