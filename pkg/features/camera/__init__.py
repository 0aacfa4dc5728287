"""
Camera feature — the Möbius camera of a 5-point configuration: evaluation,
sampling, exact degree of the image curve and image comparison.

Public API:
    from features.camera import camera_eval, camera_sample, compute_degree, image_distance
"""

from features.camera.compare import image_distance, image_distance_report, sampled_image_distance
from features.camera.degree import compute_degree, deck_directions, predicted_degree
from features.camera.evaluate import (
    CSV_HEADER,
    camera_eval,
    camera_eval_many,
    camera_eval_param,
    camera_sample,
    camera_vector,
    degenerate_directions,
    image_from_csv,
    image_to_csv,
)
from features.camera.forms import CameraForms, build_forms
from features.camera.models import (
    CONSTANT,
    CameraSample,
    DegreeMethod,
    DegreeReport,
    EvalMode,
    ExactM5Point,
    ImageCurve,
    ImageDistance,
)

__all__ = [
    "CONSTANT", "CSV_HEADER", "CameraForms", "CameraSample", "DegreeMethod", "DegreeReport",
    "EvalMode", "ExactM5Point", "ImageCurve", "ImageDistance", "build_forms", "camera_eval",
    "camera_eval_many", "camera_eval_param", "camera_sample", "camera_vector", "compute_degree",
    "deck_directions", "degenerate_directions", "image_distance", "image_distance_report",
    "image_from_csv", "image_to_csv", "predicted_degree", "sampled_image_distance",
]
