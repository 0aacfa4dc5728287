"""
Helpers for homogeneous complex vectors.
"""

from __future__ import annotations

import numpy as np


def normalize_max(w: np.ndarray) -> np.ndarray:
    """Scale by the largest component magnitude (a positive real).

    Works on a single vector or row-wise on a 2-D array. Zero rows are
    returned unchanged.
    """
    w = np.asarray(w, dtype=complex)
    scale = np.max(np.abs(w), axis=-1, keepdims=True)
    scale = np.where(scale > 0.0, scale, 1.0)
    return w / scale


def projective_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Sine of the Hermitian angle between two nonzero complex vectors."""
    return float(projective_distances(u, np.asarray(v, dtype=complex)[None, :])[0])


def projective_distances(u: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """Row-wise `projective_distance(u, vs[k])`.

    Evaluated as ‖x ∧ y‖ of the unit vectors, accurate down to zero
    (1 − |⟨x, y⟩|² cancels below ~1e-8). Zero vectors are at distance 1.
    """
    u = np.asarray(u, dtype=complex)
    vs = np.atleast_2d(np.asarray(vs, dtype=complex))
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(vs, axis=1)
    if nu == 0.0:
        return np.ones(len(vs))
    x = u / nu
    y = vs / np.where(nv > 0.0, nv, 1.0)[:, None]
    wedge = x[None, :, None] * y[:, None, :] - x[None, None, :] * y[:, :, None]
    out = np.sqrt(0.5 * np.sum(np.abs(wedge) ** 2, axis=(1, 2)))
    return np.where(nv > 0.0, np.minimum(out, 1.0), 1.0)


def phase_aligned_residual(target: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Real residual vector whose norm is the projective distance of w to target.

    `w` is rotated onto the phase of `target` so the result varies smoothly
    with w even when the representative's phase jumps.
    """
    t = target / np.linalg.norm(target)
    x = w / np.linalg.norm(w)
    overlap = np.vdot(t, x)
    if abs(overlap) > 0.0:
        x = x * (np.conj(overlap) / abs(overlap))
    r = x - t * abs(overlap)
    return np.concatenate([r.real, r.imag])
