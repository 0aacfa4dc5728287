"""
Command runners: one tracked run per CLI subcommand.

Each runner takes parsed inputs, records its work as steps and returns the
JSON payload the CLI prints. `execute` wraps a runner with the run record
that `--log-run` saves under RUNS_DIR.
"""

from __future__ import annotations

import json
import logging
import time
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

import numpy as np

import config
from features.camera import (
    EvalMode,
    camera_eval,
    camera_eval_param,
    camera_sample,
    compute_degree,
    image_distance_report,
    image_from_csv,
    image_to_csv,
    sampled_image_distance,
)
from features.geometry import Direction, P1Param, PointConfig, classify, cross_ratio, fit_similarity
from features.geometry.cross_ratio import is_infinite
from features.moduli import M5Point, subtuple_cross_ratio
from features.pentapod import Pentapod, necessary_condition_report
from features.reconstruction import camera_oracle, reconstruct5, verify_equivalence_n
from features.steps import StepTracker
from models.errors import MoebiusError

log = logging.getLogger(__name__)

Runner = Callable[..., dict]


def complex_json(z: complex | float) -> list[float] | str:
    if is_infinite(z):
        return "inf"
    z = complex(z)
    return [z.real, z.imag]


# ── Runners ──────────────────────────────────────────────────────────

def run_classify(tracker: StepTracker, cfg: PointConfig, tol: float | None = None) -> dict:
    step = tracker.begin("Classify", "geometry", input_summary=f"{cfg.n} points")
    result = classify(cfg, tol)
    tracker.complete(step, output_summary=result.tag.value)
    return result.to_dict()


def run_camera_eval(tracker: StepTracker, cfg: PointConfig, direction: Direction | None = None,
                    param: P1Param | None = None, mode: str = EvalMode.FLOAT.value) -> dict:
    step = tracker.begin("Evaluate Camera", "camera", input_summary=mode)
    if param is not None:
        value = camera_eval_param(cfg, param, mode)
    else:
        assert direction is not None
        value = camera_eval(cfg, direction)
    tracker.complete(step)
    return {"mode": mode, **value.to_dict()}


def run_camera_sample(tracker: StepTracker, cfg: PointConfig, n: int, output: Path,
                      seed: int = config.DEFAULT_SEED) -> dict:
    step = tracker.begin("Sample Image", "camera", input_summary=f"{n} directions")
    curve = camera_sample(cfg, n, seed)
    tracker.complete(step, output_summary=f"{len(curve.samples)} samples, {curve.skipped} skipped")

    step = tracker.begin("Write CSV", "export", input_summary=str(output))
    image_to_csv(curve, output)
    tracker.complete(step)
    return {
        "path": str(output),
        "samples": len(curve.samples),
        "skipped": curve.skipped,
        "config_tag": curve.config_class.tag.value,
        "claimed_degree": curve.claimed_degree,
    }


def run_degree(tracker: StepTracker, cfg: PointConfig, seed: int = config.DEFAULT_SEED,
               trials: int = config.HYPERPLANE_TRIALS) -> dict:
    step = tracker.begin("Compute Degree", "degree", input_summary=f"{trials} hyperplane trials")
    try:
        report = compute_degree(cfg, seed=seed, trials=trials)
    except MoebiusError as e:
        tracker.fail(step, e.message)
        raise
    tracker.complete(step, output_summary=f"image degree {report.image_degree}")
    return report.to_dict()


def run_image_compare(tracker: StepTracker, a: PointConfig, b: PointConfig | None = None,
                      samples_path: Path | None = None, n: int = config.IMAGE_SAMPLES,
                      seed: int = config.DEFAULT_SEED) -> dict:
    if samples_path is not None:
        step = tracker.begin("Compare Sample File", "camera", input_summary=str(samples_path))
        _, values = image_from_csv(samples_path)
        result = sampled_image_distance(values, a, n=n, seed=seed)
        tracker.complete(step, output_summary=f"distance {result.distance:.2e}")
        return {"distance": result.distance, "converged": result.converged,
                "samples": result.samples, "one_sided": True}
    assert b is not None
    step = tracker.begin("Compare Images", "camera", input_summary=f"{n} samples per image")
    result = image_distance_report(a, b, n=n, seed=seed)
    tracker.complete(step, output_summary=f"distance {result.distance:.2e}")
    return {"distance": result.distance, "converged": result.converged,
            "samples": result.samples, "one_sided": False}


def random_spatial_config(seed: int) -> PointConfig:
    """Five Gaussian points; generic with probability one."""
    rng = np.random.default_rng(seed)
    return PointConfig.from_array(rng.normal(size=(5, 3)), label=f"random-{seed}")


def run_reconstruct(tracker: StepTracker, cfg: PointConfig, ground_truth: PointConfig | None = None,
                    grid_n: int = config.FIBER_GRID_N, seed: int = config.DEFAULT_SEED) -> dict:
    result = reconstruct5(camera_oracle(cfg), grid_n=grid_n, seed=seed, tracker=tracker)
    payload = result.to_dict()
    if ground_truth is not None and result.config is not None:
        step = tracker.begin("Fit Ground Truth", "verification")
        transform, residual = fit_similarity(result.config, ground_truth)
        tracker.complete(step, output_summary=f"similarity residual {residual:.2e}")
        payload["ground_truth_fit"] = {"residual": residual, "transform": transform.to_dict()}
    return payload


def run_nverify(tracker: StepTracker, a: PointConfig, b: PointConfig, n: int = config.IMAGE_SAMPLES,
                seed: int = config.DEFAULT_SEED) -> dict:
    step = tracker.begin("Verify Equivalence", "reconstruction", input_summary=f"n={a.n}")
    report = verify_equivalence_n(a, b, n_samples=n, seed=seed)
    tracker.complete(step, output_summary="equivalent" if report.equivalent else "not equivalent")
    return report.to_dict()


def run_pentapod_check(tracker: StepTracker, pp: Pentapod, tol: float | None = None,
                       n: int = config.IMAGE_SAMPLES, seed: int = config.DEFAULT_SEED) -> dict:
    return necessary_condition_report(pp, tol=tol, n_samples=n, seed=seed, tracker=tracker).to_dict()


def run_cross_ratio(tracker: StepTracker, values: list[complex | float] | None = None,
                    point: M5Point | None = None, indices: tuple[int, ...] | None = None) -> dict:
    if point is not None:
        assert indices is not None
        step = tracker.begin("Subtuple Cross Ratio", "moduli", input_summary=f"indices {indices}")
        value = subtuple_cross_ratio(point, indices)
    else:
        assert values is not None
        step = tracker.begin("Cross Ratio", "geometry", input_summary=f"{len(values)} values")
        value = cross_ratio(values)
    tracker.complete(step)
    return {"cross_ratio": complex_json(value)}


# ── Run records ──────────────────────────────────────────────────────

def new_run_id(command: str) -> str:
    return f"{command}-{datetime.now(timezone.utc).strftime('%Y%m%d-%H%M%S')}-{uuid.uuid4().hex[:6]}"


def execute(command: str, runner: Runner, log_run: bool = False, **kwargs) -> dict:
    """Run one command under a fresh tracker; re-raises after recording a failure."""
    run_id = new_run_id(command)
    tracker = StepTracker(run_id)
    started = time.monotonic()
    run_record: dict = {
        "run_id": run_id,
        "command": command,
        "started_at": datetime.now(timezone.utc).isoformat(),
        "status": "running",
    }
    try:
        payload = runner(tracker, **kwargs)
        run_record["status"] = "completed"
        run_record["result"] = payload
        return payload
    except MoebiusError as e:
        run_record["status"] = "failed"
        run_record["error"] = e.to_dict()
        raise
    finally:
        run_record["completed_at"] = datetime.now(timezone.utc).isoformat()
        run_record["duration_sec"] = round(time.monotonic() - started, 2)
        run_record["steps"] = tracker.to_list()
        run_record["step_summary"] = tracker.summary()
        if log_run:
            save_run_log(run_id, run_record)


def save_run_log(run_id: str, run_record: dict, runs_dir: Path | None = None) -> str:
    """Save a run record to RUNS_DIR/<run_id>.json."""
    runs_dir = runs_dir or config.RUNS_DIR
    runs_dir.mkdir(parents=True, exist_ok=True)
    file_path = runs_dir / f"{run_id}.json"
    with open(file_path, "w") as f:
        json.dump(run_record, f, indent=2, default=str)
    log.info("Run log saved: %s", file_path)
    return str(file_path)
