"""
Command-line entry point.
Parses arguments, merges the optional run config and dispatches to the
pipeline service. Exit codes: 0 success, 2 rejected by a certificate or
check, 1 error.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from cone_tutte import __version__
from cone_tutte.config import settings, validate_settings
from cone_tutte.core.exceptions import ArtifactError, BaseAppException, ConfigurationException
from cone_tutte.core.logging import get_logger, setup_logging
from cone_tutte.repositories import artifacts
from cone_tutte.repositories.base import atomic_write_bytes, dumps
from cone_tutte.schemas.config import RunConfig
from cone_tutte.services.pipeline import DISK_MODES, PipelineService, StepOutcome, require_paths

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2

# argparse destination -> RunConfig key
INPUT_ARGS = {
    "mesh": "mesh",
    "polygon": "polygon",
    "drawing": "drawing",
    "source": "source",
    "target": "target",
    "cones": "cones",
    "extension": "extension",
    "boundary_map": "boundary_map",
}
OUTPUT_ARGS = {"out": "out", "svg": "svg", "csv": "csv", "report": "report"}
TOLERANCE_SETTINGS = {
    "tol_abs_factor": "TOL_ABS_FACTOR",
    "tol_rel": "TOL_REL",
    "residual_check_tol": "RESIDUAL_CHECK_TOL",
    "alpha_min": "ALPHA_MIN",
}


class CliParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with 1, keeping 2 for rejections."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> CliParser:
    parser = CliParser(prog="cone-tutte", description="Harmonic embeddings with exact certificates")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log", help="Log level (overrides CONE_TUTTE_LOG)")
    parser.add_argument("--log-format", choices=["console", "json"])
    parser.add_argument("--config", help="Run configuration JSON")
    parser.add_argument("--seed", type=int, help="Seed for every random choice")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    embed = sub.add_parser("embed", help="Solve the discrete Dirichlet problem")
    embed.add_argument("--mesh")
    embed.add_argument("--polygon")
    embed.add_argument("--weights", help="uniform, random_positive[:lo:hi] or a weights file")
    embed.add_argument("--start", type=int, default=0, help="Polygon vertex for the first boundary vertex")
    embed.add_argument("--out")
    embed.add_argument("--report", help="Write the embedding certificate here")

    certify = sub.add_parser("certify", help="Certify a drawing or a source -> target map")
    certify.add_argument("--target", "--drawing", dest="target")
    certify.add_argument("--source")
    certify.add_argument("--mesh")
    certify.add_argument("--method", choices=["both", "orientation", "pairwise"], default="both")
    certify.add_argument("--out")
    certify.add_argument("--report", help="Write the boundary determinant report here")

    cones = sub.add_parser("cones", help="Cone condition at boundary vertices")
    cones.add_argument("--drawing")
    cones.add_argument("--mesh")
    cones.add_argument("--weights")
    cones.add_argument("--out")

    extend = sub.add_parser("extend", help="Convex extension of a harmonic drawing")
    extend.add_argument("--drawing")
    extend.add_argument("--mesh")
    extend.add_argument("--weights")
    extend.add_argument("--out")
    extend.add_argument("--report", help="Write the certificate of the extended drawing here")

    recover = sub.add_parser("recover-weights", help="Weights reproducing a target embedding")
    recover.add_argument("--source")
    recover.add_argument("--target")
    recover.add_argument("--mesh")
    recover.add_argument("--out")
    recover.add_argument("--report", help="Write the cone report of the target here")

    disk = sub.add_parser("disk", help="Continuous Poisson-kernel experiments")
    disk.add_argument("mode", choices=DISK_MODES)
    disk.add_argument("--polygon")
    disk.add_argument("--boundary-map", dest="boundary_map")
    disk.add_argument("--family", choices=["linear", "sine", "tanh_sine"], default="sine")
    disk.add_argument("--samples", type=int, default=256)
    disk.add_argument("--angles", type=int)
    disk.add_argument("--radii", type=int)
    disk.add_argument("--targets", type=int, default=10, help="Random convex targets for rkc")
    disk.add_argument("--out")
    disk.add_argument("--csv", help="Grid samples (grid mode)")

    render = sub.add_parser("render", help="Draw a mesh, cone forces and pockets as SVG")
    render.add_argument("--drawing")
    render.add_argument("--mesh")
    render.add_argument("--cones")
    render.add_argument("--extension")
    render.add_argument("--svg")
    render.add_argument("--arrow-scale", dest="arrow_scale", type=float)
    render.add_argument("--pass-color", dest="pass_color")
    render.add_argument("--fail-color", dest="fail_color")
    return parser


def merge_config(args: argparse.Namespace, config: RunConfig) -> None:
    """Fill unset arguments from the run config; flags win."""
    if config.subcommand is not None and config.subcommand != args.command:
        raise ConfigurationException(
            f"Config is for {config.subcommand!r}, command line runs {args.command!r}"
        )
    for dest, key in {**INPUT_ARGS, **OUTPUT_ARGS}.items():
        value = config.inputs.get(key) if key in INPUT_ARGS else config.outputs.get(key)
        if value is not None and hasattr(args, dest) and getattr(args, dest) is None:
            setattr(args, dest, value)
    if config.weights is not None and hasattr(args, "weights") and args.weights is None:
        args.weights = config.weights
    if args.seed is None:
        args.seed = config.seed
    for field, value in config.render.model_dump(exclude_none=True).items():
        if hasattr(args, field) and getattr(args, field) is None:
            setattr(args, field, value)


def apply_tolerances(config: Optional[RunConfig]) -> Dict[str, Any]:
    """Override settings for this run and return the previous values."""
    previous: Dict[str, Any] = {}
    if config is None:
        return previous
    for key, value in config.tolerances.model_dump(exclude_none=True).items():
        name = TOLERANCE_SETTINGS[key]
        previous[name] = getattr(settings, name)
        setattr(settings, name, value)
    return previous


REQUIRED = {
    "embed": ("mesh", "polygon"),
    "certify": ("target",),
    "cones": ("drawing",),
    "extend": ("drawing",),
    "recover-weights": ("source", "target"),
    "render": (),
}


def check_paths(args: argparse.Namespace) -> None:
    """Validate every input and output path before work starts."""
    for name in REQUIRED.get(args.command, ()):
        if getattr(args, name, None) is None:
            raise ConfigurationException(f"{args.command} needs --{name.replace('_', '-')}")
    if args.command == "render" and args.drawing is None and args.extension is None:
        raise ConfigurationException("render needs --drawing or --extension")
    if args.command == "render" and args.svg is None:
        raise ConfigurationException("render needs --svg")
    require_paths(getattr(args, dest, None) for dest in INPUT_ARGS)
    for dest in OUTPUT_ARGS:
        path = getattr(args, dest, None)
        if path is not None and not Path(path).resolve().parent.is_dir():
            raise ArtifactError(path, "output directory does not exist")


def dispatch(args: argparse.Namespace, service: PipelineService) -> StepOutcome:
    command = args.command
    if command == "embed":
        return service.embed(args.mesh, args.polygon, args.weights, args.start)
    if command == "certify":
        return service.certify(args.target, args.source, args.mesh, args.method)
    if command == "cones":
        return service.cones(args.drawing, args.weights, args.mesh)
    if command == "extend":
        return service.extend(args.drawing, args.weights, args.mesh)
    if command == "recover-weights":
        return service.recover(args.source, args.target, args.mesh)
    if command == "disk":
        return service.disk(
            args.mode,
            polygon=args.polygon,
            boundary_map=args.boundary_map,
            family=args.family,
            samples=args.samples,
            angles=args.angles,
            radii=args.radii,
            convex_targets=args.targets,
        )
    return service.render(
        args.drawing,
        cones=args.cones,
        extension=args.extension,
        mesh=args.mesh,
        arrow_scale=args.arrow_scale,
        pass_color=args.pass_color,
        fail_color=args.fail_color,
    )


def emit(args: argparse.Namespace, outcome: StepOutcome) -> None:
    """Write the step's artifacts; the main document goes to stdout without --out."""
    if outcome.svg is not None:
        atomic_write_bytes(args.svg, outcome.svg)
    if outcome.csv_sample is not None and getattr(args, "csv", None):
        artifacts.write_grid_csv(args.csv, outcome.csv_sample)
    if outcome.document is not None:
        if getattr(args, "out", None):
            atomic_write_bytes(args.out, dumps(outcome.document))
        else:
            sys.stdout.write(dumps(outcome.document).decode("utf-8"))
    report = getattr(args, "report", None)
    if report and len(outcome.extra) == 1:
        atomic_write_bytes(report, dumps(next(iter(outcome.extra.values()))))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    setup_logging(level=args.log, log_format=args.log_format)

    previous: Dict[str, Any] = {}
    try:
        config = artifacts.run_configs.read(args.config) if args.config else None
        if config is not None:
            merge_config(args, config)
        previous = apply_tolerances(config)
        validate_settings(settings)
        check_paths(args)
        outcome = dispatch(args, PipelineService(seed=args.seed))
        emit(args, outcome)
    except BaseAppException as exc:
        logger.error("command_failed", command=args.command, **exc.to_dict())
        sys.stderr.write(f"error[{exc.error_code}]: {exc.detail}\n")
        return exc.exit_code
    except ValueError as exc:
        logger.error("command_failed", command=args.command, message=str(exc))
        sys.stderr.write(f"error[INVALID_ARGUMENT]: {exc}\n")
        return EXIT_ERROR
    finally:
        for name, value in previous.items():
            setattr(settings, name, value)

    logger.info("command_done", command=args.command, accepted=outcome.accepted)
    return EXIT_OK if outcome.accepted else EXIT_REJECTED


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
