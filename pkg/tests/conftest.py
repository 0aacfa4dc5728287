"""Shared fixtures: the repo root on sys.path and one configuration per class."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from features.geometry.models import PointConfig  # noqa: E402

# One exact configuration per class, with its expected image degree.
CLASS_FIXTURES: dict[str, tuple[list[list[int]], int | str]] = {
    "SpatialGeneric": ([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3]], 10),
    "SpatialFourCoplanar": ([[0, 0, 0], [2, 0, 0], [2, 2, 0], [0, 2, 0], [1, 1, 1]], 10),
    "SpatialThreeCollinear": ([[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]], 8),
    "PlanarGeneric": ([[0, 0, 0], [3, 0, 0], [0, 2, 0], [2, 3, 0], [4, 1, 0]], 5),
    "PlanarThreeCollinear": ([[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [1, 2, 0]], 4),
    "PlanarThreePlusThree": ([[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 2, 0]], 3),
    "PlanarFourCollinear": ([[0, 0, 0], [1, 0, 0], [2, 0, 0], [4, 0, 0], [0, 1, 0]], 2),
    "AllCollinear": ([[0, 0, 0], [1, 1, 1], [2, 2, 2], [3, 3, 3], [4, 4, 4]], "Constant"),
}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size acceptance loops (deselect with -m \"not slow\")")


def class_config(tag: str) -> PointConfig:
    return PointConfig.from_rationals(CLASS_FIXTURES[tag][0], label=tag)


def random_spatial(seed: int, n: int = 5) -> PointConfig:
    rng = np.random.default_rng(seed)
    return PointConfig.from_array(rng.normal(size=(n, 3)), label=f"random-{seed}")


def random_planar(seed: int, n: int = 5) -> PointConfig:
    rng = np.random.default_rng(seed)
    arr = np.zeros((n, 3))
    arr[:, :2] = rng.normal(size=(n, 2))
    return PointConfig.from_array(arr, label=f"planar-{seed}")


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def similar(cfg: PointConfig, rng: np.random.Generator, scale: float = 2.0) -> tuple[PointConfig, np.ndarray]:
    """(s·R·cfg + t, R)."""
    r = random_rotation(rng)
    moved = scale * cfg.array @ r.T + rng.normal(size=3)
    return PointConfig.from_array(moved, label=f"similar-{cfg.label}"), r


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def pyramid() -> PointConfig:
    return class_config("SpatialFourCoplanar")


@pytest.fixture
def spatial_generic() -> PointConfig:
    return random_spatial(7)


@pytest.fixture
def planar_generic() -> PointConfig:
    return random_planar(11)
