"""
Configuration — loads settings from environment / .env file.
"""

from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Paths
PROJECT_ROOT = Path(__file__).parent
SCHEMAS_DIR = PROJECT_ROOT / "schemas"
RUNS_DIR = Path(os.getenv("MOEBIUS_RUNS_DIR", str(PROJECT_ROOT / "runs")))

# Worker pool (grid search, Hausdorff descents, subtuple checks)
MOEBIUS_THREADS = max(1, int(os.getenv("MOEBIUS_THREADS", str(min(os.cpu_count() or 1, 8)))))

# Geometry thresholds, relative to the configuration diameter
GEOMETRY_TOL = float(os.getenv("MOEBIUS_GEOMETRY_TOL", "1e-9"))
AMBIGUITY_FACTOR = float(os.getenv("MOEBIUS_AMBIGUITY_FACTOR", "1e3"))
UNIT_TOL = 1e-12
CONIC_TOL = 1e-10

# Moduli space
NOT_IN_U_TOL = 1e-13
CALIBRATION_SAMPLES = 50
CALIBRATION_TOL = 1e-9

# Fiber search / reconstruction
FIBER_GRID_N = int(os.getenv("MOEBIUS_FIBER_GRID", "5000"))
FIBER_CANDIDATES = 20
FIBER_THRESHOLD = 1e-8
FIBER_ANGLE_TOL = 1e-4
PARALLEL_ANGLE_TOL = 1e-8
SIGN_RESIDUAL_TOL = 1e-6
RECONSTRUCTION_TOL = 1e-6
ORACLE_CHECK_SAMPLES = 64

# Camera images
IMAGE_SAMPLES = int(os.getenv("MOEBIUS_IMAGE_SAMPLES", "200"))
IMAGE_SEEDS_PER_SAMPLE = 3
HYPERPLANE_TRIALS = 5
ROOT_CLUSTER_TOL = 1e-6

# Pentapod conditions
CONDITION_TOL = float(os.getenv("MOEBIUS_CONDITION_TOL", "1e-9"))
CAMERA_EQUAL_TOL = 1e-6

DEFAULT_SEED = 0
