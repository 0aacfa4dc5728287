"""
Command-line front end.

    python cli.py classify pyramid.json
    python cli.py degree pyramid.json
    python cli.py camera-sample pyramid.json -n 400 -o pyramid.csv
    python cli.py reconstruct --self-test --seed 5
    python cli.py pentapod-check pod.json

stdout carries JSON only (sorted keys); logs go to stderr. Exit codes:
0 success, 2 unreadable input, 3 precondition violated, 4 internal
inconsistency, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

import config
from features.camera import EvalMode
from features.geometry import INFINITY, Direction, P1Param
from models.errors import MoebiusError, PreconditionViolated
from models.schemas import SCHEMAS, M5PointModel, json_schema, load_config, load_pentapod, read_json
from workflows import commands

log = logging.getLogger("cli")

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2


class ParseError(Exception):
    """Input that cannot be read or does not match its schema."""


# ── Argument parsing ─────────────────────────────────────────────────

def _common(p: argparse.ArgumentParser, seed: bool = True, samples: bool = False) -> None:
    if seed:
        p.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="seed for grids and trials")
    if samples:
        p.add_argument("--samples", "-n", type=int, default=config.IMAGE_SAMPLES, dest="samples",
                       help="samples per camera image")


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    shared.add_argument("-o", "--output", type=Path, default=None,
                        help="write the JSON result here instead of stdout (CSV path for camera-sample)")
    shared.add_argument("--log-run", action="store_true", help="save the run record under RUNS_DIR")

    parser = argparse.ArgumentParser(prog="moebius", description="Möbius photogrammetry toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[shared], help="classify a point configuration")
    p.add_argument("config", type=Path)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("camera-eval", parents=[shared], help="camera value for one direction or parameter")
    p.add_argument("config", type=Path)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--direction", nargs=3, type=float, metavar=("X", "Y", "Z"))
    where.add_argument("--param", nargs=2, metavar=("S", "T"),
                       help="homogeneous parameter, each a Python complex literal such as 1+2j")
    p.add_argument("--mode", choices=[m.value for m in EvalMode], default=EvalMode.FLOAT.value)

    p = sub.add_parser("camera-sample", parents=[shared], help="export the camera image as CSV (needs -o)")
    p.add_argument("config", type=Path)
    _common(p, samples=True)

    p = sub.add_parser("degree", parents=[shared], help="degree of the camera image curve")
    p.add_argument("config", type=Path)
    p.add_argument("--trials", type=int, default=config.HYPERPLANE_TRIALS)
    _common(p)

    p = sub.add_parser("image-compare", parents=[shared], help="distance between two camera images")
    p.add_argument("config", type=Path)
    p.add_argument("other", type=Path, nargs="?")
    p.add_argument("--sample-file", type=Path, help="CSV exported by camera-sample (one-sided check)")
    _common(p, samples=True)

    p = sub.add_parser("reconstruct", parents=[shared], help="reconstruct a configuration from its camera")
    p.add_argument("config", type=Path, nargs="?")
    p.add_argument("--self-test", action="store_true",
                   help="fit the reconstruction against the input (a random spatial config without input)")
    p.add_argument("--ground-truth", type=Path, default=None)
    p.add_argument("--sample-file", type=Path, default=None, help=argparse.SUPPRESS)
    p.add_argument("--grid", type=int, default=config.FIBER_GRID_N, help="fiber search grid size")
    _common(p)

    p = sub.add_parser("nverify", parents=[shared], help="equivalence of two n-point configurations")
    p.add_argument("config", type=Path)
    p.add_argument("other", type=Path)
    _common(p, samples=True)

    p = sub.add_parser("pentapod-check", parents=[shared], help="necessary conditions for mobility >= 2")
    p.add_argument("pentapod", type=Path)
    p.add_argument("--tol", type=float, default=None)
    _common(p, samples=True)

    p = sub.add_parser("cross-ratio", parents=[shared], help="cross ratio of four values or of a subtuple of an M5 point")
    p.add_argument("values", nargs="*", help="four complex literals, 'inf' for infinity")
    p.add_argument("--m5", type=Path, default=None, help="M5Point JSON")
    p.add_argument("--indices", nargs=4, type=int, default=None, metavar="K")

    p = sub.add_parser("schema", parents=[shared], help="print a JSON schema")
    p.add_argument("name", choices=sorted(SCHEMAS))
    return parser


def validate_args(args: argparse.Namespace) -> None:
    """Range checks that argparse cannot express."""
    if getattr(args, "tol", None) is not None and not args.tol > 0:
        raise ParseError("--tol must be > 0")
    if getattr(args, "samples", 1) < 1:
        raise ParseError("--samples must be >= 1")
    if getattr(args, "trials", 1) < 1:
        raise ParseError("--trials must be >= 1")
    if getattr(args, "grid", config.FIBER_GRID_N) < 1:
        raise ParseError("--grid must be >= 1")
    if args.command == "camera-sample" and args.output is None:
        raise ParseError("camera-sample needs -o/--output for the CSV file")
    if args.command == "reconstruct" and args.config is None and not args.self_test and args.sample_file is None:
        raise ParseError("reconstruct needs a configuration or --self-test")
    if args.command == "image-compare" and (args.other is None) == (args.sample_file is None):
        raise ParseError("image-compare takes a second configuration or --sample-file, not both")
    if args.command == "cross-ratio":
        if args.m5 is None and len(args.values) != 4:
            raise ParseError("cross-ratio takes four values or --m5 with --indices")
        if args.m5 is not None and args.indices is None:
            raise ParseError("--m5 needs --indices")


def _complex(text: str) -> complex | float:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return INFINITY
    try:
        return complex(text.replace(" ", ""))
    except ValueError as e:
        raise ParseError(f"not a complex number: {text!r}") from e


# ── Dispatch ─────────────────────────────────────────────────────────

def dispatch(args: argparse.Namespace) -> dict:
    """Parse inputs, run the command and return its payload."""
    run = args.command
    log_run = args.log_run

    if run == "schema":
        return json_schema(args.name)

    if run == "classify":
        return commands.execute(run, commands.run_classify, log_run, cfg=load_config(args.config), tol=args.tol)

    if run == "camera-eval":
        cfg = load_config(args.config)
        if args.param is not None:
            s, t = (_complex(x) for x in args.param)
            return commands.execute(run, commands.run_camera_eval, log_run, cfg=cfg,
                                    param=P1Param(s, t), mode=args.mode)
        return commands.execute(run, commands.run_camera_eval, log_run, cfg=cfg,
                                direction=Direction.from_array(args.direction, normalize=True), mode=args.mode)

    if run == "camera-sample":
        return commands.execute(run, commands.run_camera_sample, log_run, cfg=load_config(args.config),
                                n=args.samples, output=args.output, seed=args.seed)

    if run == "degree":
        return commands.execute(run, commands.run_degree, log_run, cfg=load_config(args.config),
                                seed=args.seed, trials=args.trials)

    if run == "image-compare":
        a = load_config(args.config)
        if args.sample_file is not None:
            return commands.execute(run, commands.run_image_compare, log_run, a=a,
                                    samples_path=args.sample_file, n=args.samples, seed=args.seed)
        return commands.execute(run, commands.run_image_compare, log_run, a=a, b=load_config(args.other),
                                n=args.samples, seed=args.seed)

    if run == "reconstruct":
        if args.sample_file is not None:
            raise PreconditionViolated(
                "a sample file has no evaluable camera; use image-compare --sample-file instead",
            )
        cfg = load_config(args.config) if args.config is not None else commands.random_spatial_config(args.seed)
        truth = load_config(args.ground_truth) if args.ground_truth is not None else None
        if args.self_test and truth is None:
            truth = cfg
        return commands.execute(run, commands.run_reconstruct, log_run, cfg=cfg, ground_truth=truth,
                                grid_n=args.grid, seed=args.seed)

    if run == "nverify":
        return commands.execute(run, commands.run_nverify, log_run, a=load_config(args.config),
                                b=load_config(args.other), n=args.samples, seed=args.seed)

    if run == "pentapod-check":
        return commands.execute(run, commands.run_pentapod_check, log_run, pp=load_pentapod(args.pentapod),
                                tol=args.tol, n=args.samples, seed=args.seed)

    if run == "cross-ratio":
        if args.m5 is not None:
            point = M5PointModel.model_validate(read_json(args.m5)).to_point()
            return commands.execute(run, commands.run_cross_ratio, log_run, point=point,
                                    indices=tuple(args.indices))
        return commands.execute(run, commands.run_cross_ratio, log_run,
                                values=[_complex(v) for v in args.values])

    raise ParseError(f"unknown command {run!r}")


def emit(payload: dict, output: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if output is None:
        sys.stdout.write(text + "\n")
    else:
        output.write_text(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s [%(name)s] %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )

    try:
        validate_args(args)
        payload = dispatch(args)
    except (ParseError, ValidationError, json.JSONDecodeError, FileNotFoundError) as e:
        log.error("cannot read input: %s", e)
        emit({"error": type(e).__name__, "message": str(e)}, None)
        return EXIT_PARSE
    except MoebiusError as e:
        log.error("%s: %s", type(e).__name__, e.message)
        emit(e.to_dict(), None)
        return e.exit_code
    except Exception as e:
        log.error("unexpected failure: %s", e, exc_info=True)
        emit({"error": "Internal", "type": type(e).__name__, "message": str(e)}, None)
        return EXIT_UNEXPECTED

    # camera-sample writes its CSV to --output; the summary still goes to stdout
    emit(payload, None if args.command == "camera-sample" else args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
