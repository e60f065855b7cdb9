from __future__ import annotations

from typing import Optional

import numpy as np

from stereo_vqa.config.models import SsimConstants
from stereo_vqa.domain.errors import DimensionMismatchError
from stereo_vqa.media.blocks import PlaneLike, as_array

_DEFAULT_CONSTANTS = SsimConstants()


def ssim_blocks(a: np.ndarray, b: np.ndarray, constants: Optional[SsimConstants] = None) -> np.ndarray:
    """Single-window SSIM for stacks of blocks, shape (..., h, w) -> (...).

    Each block is one rectangular window; variance and covariance use n - 1.
    """
    constants = constants or _DEFAULT_CONSTANTS
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"SSIM blocks differ in shape: {a.shape} vs {b.shape}.")
    if a.ndim < 2:
        raise DimensionMismatchError(f"SSIM blocks must be at least 2D, got shape {a.shape}.")

    count = a.shape[-1] * a.shape[-2]
    mu_a = a.mean(axis=(-2, -1), keepdims=True)
    mu_b = b.mean(axis=(-2, -1), keepdims=True)
    dev_a = a - mu_a
    dev_b = b - mu_b
    denominator = max(count - 1, 1)
    var_a = (dev_a * dev_a).sum(axis=(-2, -1)) / denominator
    var_b = (dev_b * dev_b).sum(axis=(-2, -1)) / denominator
    cov = (dev_a * dev_b).sum(axis=(-2, -1)) / denominator
    mu_a = mu_a[..., 0, 0]
    mu_b = mu_b[..., 0, 0]

    c1, c2 = constants.c1, constants.c2
    luminance = (2.0 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1)
    structure = (2.0 * cov + c2) / (var_a + var_b + c2)
    return luminance * structure


def ssim_block(a: PlaneLike, b: PlaneLike, constants: Optional[SsimConstants] = None) -> float:
    block_a = as_array(a)
    block_b = as_array(b)
    if block_a.shape != (4, 4) or block_b.shape != (4, 4):
        raise DimensionMismatchError(f"ssim_block expects two 4x4 blocks, got {block_a.shape} and {block_b.shape}.")
    return float(ssim_blocks(block_a, block_b, constants))
