"""Cyclopean-view model: disparity-guided block matching, view-axis DCT fusion and CSF masking."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import fft

from stereo_vqa.config.models import DisplayGeometry, SsimConstants
from stereo_vqa.domain.errors import DimensionMismatchError, DisparityMissingError, PreconditionError
from stereo_vqa.domain.models import BlockMatch, StereoFrame
from stereo_vqa.media.blocks import PlaneLike, as_array, block_grid, gather_blocks
from stereo_vqa.metrics.ssim import ssim_blocks

BLOCK = 4
DEFAULT_SEARCH_RADIUS = 12

JPEG_LUMA_QUANTIZATION = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.float64,
)


@dataclass(frozen=True, eq=False)
class CsfMask:
    coefficients: np.ndarray
    quantization: np.ndarray

    def __post_init__(self) -> None:
        for name in ("coefficients", "quantization"):
            array = np.array(getattr(self, name), dtype=np.float64, copy=True)
            if array.shape != (BLOCK, BLOCK):
                raise PreconditionError(f"CSF {name} must be 4x4, got {array.shape}.")
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        if np.any(self.coefficients <= 0):
            raise PreconditionError("CSF coefficients must be positive.")


def build_csf_mask() -> CsfMask:
    # 2x2 averaging of the 8x8 table, reciprocals rescaled to mean one.
    quantization = JPEG_LUMA_QUANTIZATION.reshape(BLOCK, 2, BLOCK, 2).mean(axis=(1, 3))
    sensitivity = 1.0 / quantization
    return CsfMask(coefficients=sensitivity / sensitivity.mean(), quantization=quantization)


def fovea_block_size_exact(geometry: DisplayGeometry) -> float:
    alpha = math.radians(geometry.half_angle_deg)
    return 2.0 * geometry.viewing_distance_mm * geometry.vertical_resolution_px * math.tan(alpha) / geometry.display_height_mm


def fovea_block_size(geometry: DisplayGeometry) -> int:
    """Side in pixels of the square screen area projected onto the fovea."""
    return int(round(fovea_block_size_exact(geometry)))


def dct4(blocks: np.ndarray) -> np.ndarray:
    return fft.dctn(np.asarray(blocks, dtype=np.float64), type=2, norm="ortho", axes=(-2, -1))


def idct4(coefficients: np.ndarray) -> np.ndarray:
    return fft.idctn(np.asarray(coefficients, dtype=np.float64), type=2, norm="ortho", axes=(-2, -1))


def fuse_blocks_full(left_block: np.ndarray, right_block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Depth-2 orthonormal DCT along the view axis: (sum slice, difference slice)."""
    left_coefficients = dct4(left_block)
    right_coefficients = dct4(right_block)
    if left_coefficients.shape != right_coefficients.shape:
        raise DimensionMismatchError(f"Cannot fuse blocks of shapes {left_coefficients.shape} and {right_coefficients.shape}.")
    root_two = math.sqrt(2.0)
    return (
        (left_coefficients + right_coefficients) / root_two,
        (left_coefficients - right_coefficients) / root_two,
    )


def fuse_blocks(left_block: np.ndarray, right_block: np.ndarray) -> np.ndarray:
    return fuse_blocks_full(left_block, right_block)[0]


def apply_csf(raw: np.ndarray, mask: CsfMask) -> np.ndarray:
    return np.asarray(raw, dtype=np.float64) * mask.coefficients


def _search_offsets(radius: int) -> np.ndarray:
    # 0, -1, +1, -2, +2, ...: argmin keeps the first minimum, which fixes the tie-break.
    offsets = [0]
    for step in range(1, radius + 1):
        offsets.extend((-step, step))
    return np.array(offsets)


def _match_origins(
    left_y: np.ndarray,
    right_y: np.ndarray,
    disparity: np.ndarray,
    xs: np.ndarray,
    ys: np.ndarray,
    search_radius: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """Right-view x origins and disparities for left blocks at (xs, ys)."""
    left_blocks = gather_blocks(left_y, xs, ys, BLOCK)
    block_disparity = np.median(gather_blocks(disparity, xs, ys, BLOCK).reshape(*xs.shape, BLOCK * BLOCK), axis=-1)
    candidate = xs - np.rint(block_disparity).astype(np.int64)
    max_x = right_y.shape[1] - BLOCK

    offsets = _search_offsets(search_radius)
    positions = np.empty((len(offsets),) + xs.shape, dtype=np.int64)
    costs = np.empty((len(offsets),) + xs.shape, dtype=np.float64)
    for index, offset in enumerate(offsets):
        position = np.clip(candidate + offset, 0, max_x)
        positions[index] = position
        costs[index] = np.abs(left_blocks - gather_blocks(right_y, position, ys, BLOCK)).sum(axis=(-2, -1))
    best = np.argmin(costs, axis=0)
    right_x = np.take_along_axis(positions, best[None, ...], axis=0)[0]
    return right_x, xs - right_x


def _require_blocks(shape: Tuple[int, int]) -> None:
    if shape[0] < BLOCK or shape[1] < BLOCK:
        raise PreconditionError(f"Luma must be at least {BLOCK}x{BLOCK} for block matching, got {shape[1]}x{shape[0]}.")


def match_block(
    left_y: PlaneLike,
    right_y: PlaneLike,
    disparity: PlaneLike,
    left_origin: Tuple[int, int],
    search_radius: int = DEFAULT_SEARCH_RADIUS,
) -> BlockMatch:
    left = as_array(left_y)
    right = as_array(right_y)
    disp = as_array(disparity)
    if not left.shape == right.shape == disp.shape:
        raise DimensionMismatchError(f"Matching needs equal shapes, got {left.shape}, {right.shape}, {disp.shape}.")
    _require_blocks(left.shape)
    x0, y0 = left_origin
    if x0 % BLOCK or y0 % BLOCK:
        raise PreconditionError(f"Left origin {left_origin} is not on the {BLOCK}x{BLOCK} grid.")
    right_x, used = _match_origins(left, right, disp, np.array([x0]), np.array([y0]), search_radius)
    return BlockMatch(left_origin=(x0, y0), right_origin=(int(right_x[0]), y0), disparity_used=int(used[0]))


def block_origins(shape: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    rows, cols = shape[0] // BLOCK, shape[1] // BLOCK
    ys, xs = np.meshgrid(np.arange(rows) * BLOCK, np.arange(cols) * BLOCK, indexing="ij")
    return xs, ys


def cyclopean_blocks(frame: StereoFrame, mask: CsfMask, search_radius: int = DEFAULT_SEARCH_RADIUS) -> np.ndarray:
    """Spatial-domain cyclopean blocks IDCT(XC_i) on the left-view grid, shape (rows, cols, 4, 4)."""
    if frame.disparity is None:
        raise DisparityMissingError("Cyclopean matching needs a disparity map for every stereo frame.")
    left = frame.left.y.samples
    right = frame.right.y.samples
    _require_blocks(left.shape)
    xs, ys = block_origins(left.shape)
    right_x, _ = _match_origins(left, right, frame.disparity.samples, xs, ys, search_radius)
    left_blocks = block_grid(left, BLOCK)
    right_blocks = gather_blocks(right, right_x, ys, BLOCK)
    return idct4(apply_csf(fuse_blocks(left_blocks, right_blocks), mask))


def cyclopean_quality(
    reference: StereoFrame,
    distorted: StereoFrame,
    mask: CsfMask,
    constants: Optional[SsimConstants] = None,
    search_radius: int = DEFAULT_SEARCH_RADIUS,
) -> float:
    """Mean SSIM between co-located reference and distorted cyclopean blocks."""
    if reference.shape != distorted.shape:
        raise DimensionMismatchError(f"Reference is {reference.shape}, distorted is {distorted.shape}.")
    reference_blocks = cyclopean_blocks(reference, mask, search_radius)
    distorted_blocks = cyclopean_blocks(distorted, mask, search_radius)
    return float(ssim_blocks(reference_blocks, distorted_blocks, constants).mean())
