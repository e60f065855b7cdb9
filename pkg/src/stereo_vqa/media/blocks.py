from __future__ import annotations

from typing import Union

import numpy as np

from stereo_vqa.domain.errors import PreconditionError
from stereo_vqa.domain.models import Plane

PlaneLike = Union[Plane, np.ndarray]


def as_array(plane: PlaneLike) -> np.ndarray:
    if isinstance(plane, Plane):
        return plane.samples
    array = np.asarray(plane, dtype=np.float64)
    if array.ndim != 2:
        raise PreconditionError(f"Expected a 2D sample grid, got shape {array.shape}.")
    return array


def block_at(plane: PlaneLike, x0: int, y0: int, w: int, h: int) -> np.ndarray:
    """Read a w x h block at (x0, y0); coordinates outside the plane replicate the nearest edge pixel."""
    if w < 1 or h < 1:
        raise PreconditionError(f"Block size must be at least 1x1, got {w}x{h}.")
    samples = as_array(plane)
    rows = np.clip(np.arange(y0, y0 + h), 0, samples.shape[0] - 1)
    cols = np.clip(np.arange(x0, x0 + w), 0, samples.shape[1] - 1)
    return samples[np.ix_(rows, cols)]


def block_grid(plane: PlaneLike, size: int) -> np.ndarray:
    """Tile the plane into non-overlapping size x size blocks, shape (rows, cols, size, size).

    Trailing pixels that do not fill a whole block are dropped.
    """
    samples = as_array(plane)
    rows, cols = samples.shape[0] // size, samples.shape[1] // size
    trimmed = samples[: rows * size, : cols * size]
    return trimmed.reshape(rows, size, cols, size).swapaxes(1, 2)


def gather_blocks(plane: PlaneLike, x0: np.ndarray, y0: np.ndarray, size: int) -> np.ndarray:
    """Vectorised block_at: one size x size block per (x0, y0) pair, clamp-to-edge."""
    samples = as_array(plane)
    offsets = np.arange(size)
    rows = np.clip(np.asarray(y0)[..., None] + offsets, 0, samples.shape[0] - 1)
    cols = np.clip(np.asarray(x0)[..., None] + offsets, 0, samples.shape[1] - 1)
    return samples[rows[..., :, None], cols[..., None, :]]
