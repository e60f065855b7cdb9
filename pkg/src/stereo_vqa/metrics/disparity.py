from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from stereo_vqa.domain.errors import DimensionMismatchError, PreconditionError
from stereo_vqa.domain.models import Plane
from stereo_vqa.media.blocks import PlaneLike, as_array, block_at, gather_blocks

logger = logging.getLogger(__name__)

BLOCK = 4
DEFAULT_WINDOW = 28


@dataclass(frozen=True, eq=False)
class NormalizedDisparity:
    plane: Plane
    source_max: float

    @property
    def block_rows(self) -> int:
        return self.plane.height // BLOCK

    @property
    def block_cols(self) -> int:
        return self.plane.width // BLOCK

    @property
    def block_count(self) -> int:
        return self.block_rows * self.block_cols


@dataclass(frozen=True, eq=False)
class VarianceField:
    sigma2: np.ndarray
    max_sigma2: float


def normalize_disparity(disparity: PlaneLike) -> NormalizedDisparity:
    samples = as_array(disparity)
    peak = float(samples.max())
    if peak <= 0:
        return NormalizedDisparity(plane=Plane(np.zeros_like(samples)), source_max=0.0)
    return NormalizedDisparity(plane=Plane(samples / peak), source_max=peak)


def _window_offset(window: int) -> int:
    if window < BLOCK:
        raise PreconditionError(f"Variance window must be at least {BLOCK}, got {window}.")
    return (window - BLOCK) // 2


def block_disparity_variance(nd: NormalizedDisparity, block_index: int, window: int = DEFAULT_WINDOW) -> float:
    """Unbiased variance of the window x window region centred on 4x4 block `block_index` (row-major)."""
    offset = _window_offset(window)
    if not 0 <= block_index < nd.block_count:
        raise PreconditionError(f"Block index {block_index} outside [0, {nd.block_count}).")
    row, col = divmod(block_index, nd.block_cols)
    region = block_at(nd.plane, col * BLOCK - offset, row * BLOCK - offset, window, window)
    return float(np.var(region, ddof=1))


def variance_field(nd: NormalizedDisparity, window: int = DEFAULT_WINDOW) -> VarianceField:
    offset = _window_offset(window)
    rows, cols = nd.block_rows, nd.block_cols
    sigma2 = np.zeros((rows, cols), dtype=np.float64)
    if rows == 0 or cols == 0:
        return VarianceField(sigma2=sigma2, max_sigma2=0.0)

    padded = np.pad(nd.plane.samples, window, mode="edge")
    starts = window - offset + np.arange(cols) * BLOCK
    for row in range(rows):
        top = window - offset + row * BLOCK
        strip = padded[top : top + window]
        windows = sliding_window_view(strip, (window, window))[0, starts]
        sigma2[row] = np.var(windows, axis=(-2, -1), ddof=1)
    return VarianceField(sigma2=sigma2, max_sigma2=float(sigma2.max()))


def variance_term(nd: NormalizedDisparity, window: int = DEFAULT_WINDOW) -> float:
    """Mean block variance relative to the largest one; 0 when every window is flat."""
    field = variance_field(nd, window)
    if field.sigma2.size == 0 or field.max_sigma2 <= 0:
        return 0.0
    return min(1.0, float(field.sigma2.sum() / (field.sigma2.size * field.max_sigma2)))


def estimate_disparity(left_y: PlaneLike, right_y: PlaneLike, max_disp: int, block: int = 8) -> Plane:
    """Integer SAD block matching; the right block is searched at x - d for d in [0, max_disp]."""
    left = as_array(left_y)
    right = as_array(right_y)
    if left.shape != right.shape:
        raise DimensionMismatchError(f"Disparity estimation needs equal shapes, got {left.shape} and {right.shape}.")
    if not 1 <= max_disp <= 128:
        raise PreconditionError(f"max_disp must lie in [1, 128], got {max_disp}.")

    height, width = left.shape
    rows = -(-height // block)
    cols = -(-width // block)
    ys, xs = np.meshgrid(np.arange(rows) * block, np.arange(cols) * block, indexing="ij")
    left_blocks = gather_blocks(left, xs, ys, block)

    best_cost = np.full(xs.shape, np.inf)
    best_shift = np.zeros(xs.shape, dtype=np.int64)
    for shift in range(max_disp + 1):
        cost = np.abs(left_blocks - gather_blocks(right, xs - shift, ys, block)).sum(axis=(-2, -1))
        improved = cost < best_cost
        best_cost[improved] = cost[improved]
        best_shift[improved] = shift

    dense = np.repeat(np.repeat(best_shift, block, axis=0), block, axis=1)[:height, :width]
    logger.debug("Estimated disparity %dx%d, range [%d, %d]", width, height, dense.min(), dense.max())
    return Plane(dense.astype(np.float64))
