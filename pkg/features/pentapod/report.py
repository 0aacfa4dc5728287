"""
Full necessary-condition report for a pod.

Runs conditions (a)–(d) without short-circuiting, then compares the camera
images of platform and base. Equal images are what a mobility ≥ 2 pod
forces; when no four anchors are collinear they already imply (a) or (b),
since the camera image determines the configuration up to similarity
(affinity when planar).
"""

from __future__ import annotations

import logging
from itertools import combinations

import config
from features.camera.compare import image_distance_report
from features.geometry.classify import collinearity_residual
from features.geometry.models import PointConfig
from features.pentapod.conditions import (
    check_condition_a,
    check_condition_b,
    check_condition_c,
    check_condition_d,
)
from features.pentapod.models import CameraCheck, ConditionReport, Pentapod
from features.reconstruction.nverify import verify_equivalence_n
from features.steps.tracker import StepTracker
from models.errors import PreconditionError

log = logging.getLogger(__name__)


def _camera_obstacle(cfg: PointConfig) -> str | None:
    """Why cfg has no usable camera, or None."""
    if collinearity_residual(cfg.array, cfg.diameter) < config.GEOMETRY_TOL:
        return f"{cfg.label or 'configuration'} is collinear"
    arr = cfg.array
    for i, j in combinations(range(cfg.n), 2):
        if float(((arr[i] - arr[j]) ** 2).sum()) ** 0.5 <= config.UNIT_TOL * cfg.diameter:
            return f"{cfg.label or 'configuration'} has coincident anchors {i} and {j}"
    return None


def camera_check(pp: Pentapod, n_samples: int = config.IMAGE_SAMPLES, seed: int = config.DEFAULT_SEED,
                 tol: float = config.CAMERA_EQUAL_TOL) -> CameraCheck:
    """Do platform and base have the same camera image?

    Five legs compare the two image curves directly; more legs compare every
    5-subtuple sharing one anchor quadruple.
    """
    for cfg in (pp.platform, pp.base):
        reason = _camera_obstacle(cfg)
        if reason is not None:
            return CameraCheck(holds=False, skipped=reason)
    try:
        if pp.n == 5:
            result = image_distance_report(pp.platform, pp.base, n=n_samples, seed=seed)
            distance, converged = result.distance, result.converged
        else:
            report = verify_equivalence_n(pp.platform, pp.base, n_samples=n_samples, seed=seed, tol=tol)
            distance = max(s.distance for s in report.subtuples)
            converged = all(s.converged for s in report.subtuples)
    except PreconditionError as e:
        return CameraCheck(holds=False, skipped=e.message)
    return CameraCheck(holds=distance <= tol, distance=distance, converged=converged)


def necessary_condition_report(pp: Pentapod, tol: float | None = None,
                               n_samples: int = config.IMAGE_SAMPLES, seed: int = config.DEFAULT_SEED,
                               tracker: StepTracker | None = None) -> ConditionReport:
    """Check every condition and the camera images; see ConditionReport.verdict."""
    tol = config.CONDITION_TOL if tol is None else tol
    tracker = tracker or StepTracker(run_id="pentapod-check")
    results = {}
    for key, name, check in (
        ("a", "Similarity", check_condition_a),
        ("b", "Planar Affinity", check_condition_b),
        ("c", "Collinear And Coincident", check_condition_c),
        ("d", "Parallel Lines", check_condition_d),
    ):
        step = tracker.begin(f"Condition ({key}): {name}", "condition", input_summary=f"tol {tol:g}")
        results[key] = check(pp, tol)
        tracker.complete(step, output_summary="holds" if results[key].holds else "fails",
                         metadata={"residual": results[key].residual})

    step = tracker.begin("Camera Images", "camera", input_summary=f"{n_samples} samples")
    camera = camera_check(pp, n_samples=n_samples, seed=seed)
    if camera.skipped:
        tracker.skip(step, camera.skipped)
    else:
        tracker.complete(step, output_summary=f"distance {camera.distance:.2e}")

    report = ConditionReport(
        n=pp.n, cond_a=results["a"], cond_b=results["b"], cond_c=results["c"], cond_d=results["d"],
        camera_images_equal=camera, tol=tol, steps=tracker.to_list(timing=False),
    )
    if camera.holds and not (report.cond_a.holds or report.cond_b.holds):
        log.warning("camera images agree (%.2e) but neither (a) nor (b) holds at tol %g",
                    camera.distance, tol)
    log.info("pentapod: conditions %s, verdict %s", report.holding or "none", report.verdict)
    return report
