import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from analysis import lobe_report_upw, resolution_compare
from config import get_settings, load_config
from errors import ArrayModelError, ConfigError
from export import emit_csv, emit_xlsx, report_regions
from models import FigureName, PatternKind, PolarPoint, SweepSpec, SweepVariable
from presets.figures import FIG4_ARRAY, figure_preset
from workers import SweepJob, run_jobs_sync, run_sweep

# Configure logging
logging.basicConfig(
    level=get_settings().log_level.upper(),
    format='%(asctime)s [%(name)s] %(levelname)s: %(message)s'
)
logger = logging.getLogger(__name__)

USAGE_EXIT = 1


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


# ============================================================
# ARGUMENT PARSING
# ============================================================

def _parse_focus(text: str) -> PolarPoint:
    try:
        r, theta_deg = (float(part) for part in text.split(","))
        return PolarPoint.from_degrees(r, theta_deg)
    except (ValueError, ValidationError) as e:
        raise ConfigError(f"--focus expects R,THETA_DEG with R > 0 and |THETA| <= 90, got {text!r}") from e


def _parse_range(text: str, default_steps: int) -> tuple[float, float, int]:
    parts = text.split(":")
    try:
        if len(parts) == 2:
            return float(parts[0]), float(parts[1]), default_steps
        if len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        pass
    raise ConfigError(f"--range expects START:STOP[:STEPS], got {text!r}")


def _parse_models(text: str) -> list[PatternKind]:
    kinds = []
    for name in filter(None, (part.strip().upper() for part in text.split(","))):
        try:
            kinds.append(PatternKind(name))
        except ValueError:
            raise ConfigError(
                f"unknown model {name!r}; choose from {', '.join(k.value for k in PatternKind)}"
            ) from None
    return kinds


def _load_array(path: Optional[str]):
    if path is None:
        logger.info("No --config given, using the N=32, M=4, Γ=13 reference array")
        return FIG4_ARRAY
    return load_config(path)


def _emit(sweeps, out: Path, fmt: str) -> Path:
    if fmt == "xlsx":
        return emit_xlsx(sweeps, out)
    return emit_csv(sweeps, out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mxla", description="Beam-focusing patterns of modular extremely-large ULAs")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="sweep one variable and write the gain of each model")
    sweep.add_argument("--config", help="array config file (key = value)")
    sweep.add_argument("--model", default="USW", help="NAME[,NAME...] of pattern kinds")
    sweep.add_argument("--focus", default="200,0", help="intended focus R,THETA_DEG")
    sweep.add_argument("--var", choices=[v.value for v in SweepVariable], default=SweepVariable.SPATIAL_FREQ_DIFF.value)
    sweep.add_argument("--range", dest="sweep_range", default="-0.5:0.5",
                       help="START:STOP[:STEPS]; degrees for --var angle (write --range=-a:b for negative starts)")
    sweep.add_argument("--observe", type=float,
                       help="fixed observation distance (dtheta, angle) or angle in degrees (distance)")
    sweep.add_argument("--out", help="output file (default: $MXLA_OUTPUT_DIR/sweep.<format>)")
    sweep.add_argument("--format", choices=["csv", "xlsx"], default="csv")

    figure = sub.add_parser("figure", help="regenerate a published figure's curves")
    figure.add_argument("name", help=f"{', '.join(f.value for f in FigureName)} or all")
    figure.add_argument("--out", help="output directory (default: $MXLA_OUTPUT_DIR)")
    figure.add_argument("--steps", type=int, help="samples per curve")
    figure.add_argument("--format", choices=["csv", "xlsx"], default="csv")

    regions = sub.add_parser("regions", help="propagation-region boundaries and regimes")
    regions.add_argument("--config", help="array config file (key = value)")
    regions.add_argument("--r", dest="distances", type=float, nargs="*", default=[], help="distances in m")

    lobes = sub.add_parser("lobes", help="main lobe, grating lobes and resolution")
    lobes.add_argument("--config", help="array config file (key = value)")
    lobes.add_argument("--k-max", type=int, default=3)
    return parser


# ============================================================
# COMMANDS
# ============================================================

def cmd_sweep(args) -> int:
    settings = get_settings()
    config = _load_array(args.config)
    kinds = _parse_models(args.model)
    focus = _parse_focus(args.focus)
    variable = SweepVariable(args.var)
    start, stop, steps = _parse_range(args.sweep_range, settings.default_steps)

    observation = {}
    if variable is SweepVariable.ANGLE:
        start, stop = math.radians(start), math.radians(stop)
    if args.observe is not None:
        if variable is SweepVariable.DISTANCE:
            observation["fixed_observation_angle"] = math.radians(args.observe)
        else:
            observation["fixed_observation_distance"] = args.observe

    try:
        spec = SweepSpec(variable=variable, start=start, stop=stop, steps=steps, fixed_focus=focus, **observation)
    except ValidationError as e:
        raise ConfigError(f"invalid sweep: {e}") from e

    sweeps = run_sweep(config, spec, kinds)
    out = Path(args.out) if args.out else settings.output_dir / f"sweep.{args.format}"
    _emit(sweeps, out, args.format)
    return 0


def cmd_figure(args) -> int:
    settings = get_settings()
    names = list(FigureName) if args.name.lower() == "all" else [args.name]
    out_dir = Path(args.out) if args.out else settings.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    for name in names:
        preset = figure_preset(name, steps=args.steps)
        jobs = [
            SweepJob(config, kind, f"{label}:{kind.value}")
            for label, config in preset.configs.items()
            for kind in preset.kinds
        ]
        sweeps = run_jobs_sync(preset.sweep, jobs)
        _emit(sweeps, out_dir / f"{preset.name.value.lower()}.{args.format}", args.format)
    return 0


def cmd_regions(args) -> int:
    config = _load_array(args.config)
    print(report_regions(config, args.distances), end="")
    return 0


def cmd_lobes(args) -> int:
    config = _load_array(args.config)
    report = lobe_report_upw(config, args.k_max)
    modular, collocated = resolution_compare(config)
    print(f"main lobe (null-to-null)      {report.main_lobe_null_to_null:.6g}")
    print(f"sparse-factor resolution      {report.angular_resolution_sparse:.6g}")
    print(f"collocated-factor resolution  {report.angular_resolution_collocated_factor:.6g}")
    print(f"grating lobe period           {report.grating_lobe_period:.6g}")
    print(f"resolution modular/collocated {modular:.6g} / {collocated:.6g}")
    print("lobes (Δθ, level)")
    for location, level in report.grating_lobes:
        print(f"  {location:+.6f}  {level:.6f}")
    return 0


COMMANDS = {
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "regions": cmd_regions,
    "lobes": cmd_lobes,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        return COMMANDS[args.command](args)
    except ArrayModelError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
