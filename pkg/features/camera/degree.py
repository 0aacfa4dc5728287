"""
Degree of the camera image curve.

The exact route divides the six degree-10 forms by their GCD over QQ(i) and
reads the map degree from coplanarity. The cross-check pulls random
hyperplanes of P⁵ back through the cancelled forms, solves for the roots on
P¹ and counts how many distinct image points they hit.
"""

from __future__ import annotations

import logging
from collections import Counter

import numpy as np
from numpy.polynomial import polynomial as P

import config
from features.camera.evaluate import camera_eval_many
from features.camera.forms import FORM_DEGREE, CameraForms, build_forms
from features.camera.models import CONSTANT, Degree, DegreeMethod, DegreeReport
from features.geometry.classify import classify, is_coplanar, plane_normal
from features.geometry.models import ConfigClass, ConfigTag, PointConfig
from models.errors import DegreeInconsistency, ToleranceAmbiguity
from utils.projective import normalize_max, projective_distances
from utils.sphere_grid import seeded_fibonacci_sphere

log = logging.getLogger(__name__)

PREDICTED_DEGREES: dict[ConfigTag, Degree] = {
    ConfigTag.SPATIAL_GENERIC: 10,
    ConfigTag.SPATIAL_FOUR_COPLANAR: 10,
    ConfigTag.SPATIAL_THREE_COLLINEAR: 8,
    ConfigTag.PLANAR_GENERIC: 5,
    ConfigTag.PLANAR_THREE_COLLINEAR: 4,
    ConfigTag.PLANAR_THREE_PLUS_THREE: 3,
    ConfigTag.PLANAR_FOUR_COLLINEAR: 2,
    ConfigTag.ALL_COLLINEAR: CONSTANT,
}

DECK_SAMPLES = 32
DECK_TOL = 1e-8


def predicted_degree(cls: ConfigClass) -> Degree:
    return PREDICTED_DEGREES[cls.tag]


# ── Deck transformation ──────────────────────────────────────────────

def deck_directions(directions: np.ndarray, normal: np.ndarray) -> np.ndarray:
    """Half-turn about the plane normal: ε ↦ 2(ε·n)n − ε."""
    normal = np.asarray(normal, dtype=float)
    return 2.0 * (directions @ normal)[:, None] * normal[None, :] - directions


def deck_defect(cfg: PointConfig, normal: np.ndarray, samples: int = DECK_SAMPLES,
                seed: int = config.DEFAULT_SEED) -> float:
    """Largest projective distance between camera values at deck-paired directions."""
    grid = seeded_fibonacci_sphere(samples, seed)
    w, bad = camera_eval_many(cfg, grid)
    w2, bad2 = camera_eval_many(cfg, deck_directions(grid, normal))
    keep = ~(bad | bad2)
    if not keep.any():
        return 0.0
    return max(float(projective_distances(a, b[None, :])[0]) for a, b in zip(w[keep], w2[keep]))


# ── Hyperplane root count ────────────────────────────────────────────

def _pulled_back(coefficients: np.ndarray, a: np.ndarray, change: np.ndarray) -> np.ndarray:
    """Coefficients in x of Σ a_k F_k(αx + β, γx + δ), lowest degree first."""
    alpha, beta, gamma, delta = change
    d = coefficients.shape[1] - 1
    h = a @ coefficients
    s_poly = np.array([beta, alpha])
    t_poly = np.array([delta, gamma])
    total = np.zeros(d + 1, dtype=complex)
    for j, c in enumerate(h):
        term = P.polymul(P.polypow(s_poly, j), P.polypow(t_poly, d - j)) * c
        total[:len(term)] += term
    return total


def _cluster_count(values: np.ndarray, tol: float) -> int:
    reps: list[np.ndarray] = []
    for v in values:
        if not reps or float(np.min(projective_distances(v, np.array(reps)))) > tol:
            reps.append(v)
    return len(reps)


def root_count_trial(forms: CameraForms, rng: np.random.Generator) -> dict:
    """One random hyperplane: number of roots and of distinct image points."""
    coefficients = forms.cancelled_coefficients()
    d = coefficients.shape[1] - 1
    a = rng.normal(size=6) + 1j * rng.normal(size=6)
    change = rng.normal(size=4) + 1j * rng.normal(size=4)
    poly = _pulled_back(coefficients, a, change)
    roots = P.polyroots(poly) if d > 0 else np.array([], dtype=complex)
    alpha, beta, gamma, delta = change
    s = alpha * roots + beta
    t = gamma * roots + delta
    powers = np.arange(d + 1)
    basis = s[:, None] ** powers[None, :] * t[:, None] ** (d - powers)[None, :]
    images = normalize_max(basis @ coefficients.T)
    image_count = _cluster_count(images, config.ROOT_CLUSTER_TOL) if len(roots) else 0
    return {"roots": int(len(roots)), "image_points": image_count}


def root_count_degree(forms: CameraForms, trials: int = config.HYPERPLANE_TRIALS,
                      seed: int = config.DEFAULT_SEED) -> tuple[Degree, int, list[dict]]:
    """Modal (image_degree, map_degree) over `trials` random hyperplanes."""
    if forms.cancelled_degree == 0:
        return CONSTANT, 0, []
    rng = np.random.default_rng(seed)
    results = [root_count_trial(forms, rng) for _ in range(trials)]
    counts = Counter((r["roots"], r["image_points"]) for r in results)
    (roots, image_points), _ = counts.most_common(1)[0]
    if len(counts) > 1:
        log.debug("root count trials disagree: %s", dict(counts))
    map_degree = roots // image_points if image_points else 0
    return image_points, map_degree, results


# ── Entry point ──────────────────────────────────────────────────────

def compute_degree(cfg: PointConfig, seed: int = config.DEFAULT_SEED,
                   trials: int = config.HYPERPLANE_TRIALS) -> DegreeReport:
    """Exact degree of the image curve, cross-checked by root counting.

    Raises DegreeInconsistency if the two methods disagree or the deck
    identity fails on a coplanar configuration.
    """
    forms = build_forms(cfg)
    gcd_degree = forms.gcd_degree

    try:
        tag: str | None = classify(cfg).tag.value
    except ToleranceAmbiguity:
        tag = None

    if forms.cancelled_degree == 0:
        map_degree, image_degree = 0, CONSTANT
    else:
        coplanar = is_coplanar(cfg)
        map_degree = 2 if coplanar else 1
        if coplanar:
            defect = deck_defect(cfg, plane_normal(cfg.array), seed=seed)
            if defect > DECK_TOL:
                raise DegreeInconsistency(
                    "coplanar configuration but camera is not deck invariant",
                    deck_defect=defect,
                )
        if forms.cancelled_degree % map_degree:
            raise DegreeInconsistency(
                "cancelled degree is not divisible by the map degree",
                cancelled_degree=forms.cancelled_degree, map_degree=map_degree,
            )
        image_degree = forms.cancelled_degree // map_degree

    rc_image, rc_map, trial_log = root_count_degree(forms, trials=trials, seed=seed)
    report = DegreeReport(
        degree_of_forms=FORM_DEGREE,
        gcd_degree=gcd_degree,
        map_degree=map_degree,
        image_degree=image_degree,
        method=DegreeMethod.EXACT_GCD,
        root_count_image_degree=rc_image,
        root_count_map_degree=rc_map,
        root_count_trials=trial_log,
        config_tag=tag,
    )
    if rc_image != image_degree or rc_map != map_degree:
        log.error("degree methods disagree for %s: exact %s/%s, root count %s/%s",
                  cfg.label or "config", image_degree, map_degree, rc_image, rc_map)
        raise DegreeInconsistency(
            "ExactGCD and HyperplaneRootCount disagree",
            exact={"image_degree": image_degree, "map_degree": map_degree},
            root_count={"image_degree": rc_image, "map_degree": rc_map},
        )
    log.info("degree of %s: image %s, map %d, gcd %d",
             cfg.label or "config", image_degree, map_degree, gcd_degree)
    return report
