from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from scipy import ndimage

from stereo_vqa.config.models import VifParams
from stereo_vqa.domain.errors import DimensionMismatchError
from stereo_vqa.media.blocks import PlaneLike, as_array

logger = logging.getLogger(__name__)

_DEFAULT_PARAMS = VifParams()


def effective_scale_count(shape: tuple, requested: int) -> int:
    """Largest scale count <= requested with 2**scales not exceeding the smaller side (minimum 1)."""
    smallest = min(shape)
    fitting = int(math.floor(math.log2(smallest))) if smallest >= 1 else 0
    return max(1, min(requested, fitting))


def _window_filter(image: np.ndarray, params: VifParams) -> np.ndarray:
    radius = params.window // 2
    return ndimage.gaussian_filter(
        image,
        sigma=params.window_sigma,
        truncate=radius / params.window_sigma,
        mode="nearest",
    )


def _scale_information(reference: np.ndarray, distorted: np.ndarray, params: VifParams) -> tuple:
    eps = params.epsilon
    mu_r = _window_filter(reference, params)
    mu_d = _window_filter(distorted, params)
    var_r = _window_filter(reference * reference, params) - mu_r * mu_r
    var_d = _window_filter(distorted * distorted, params) - mu_d * mu_d
    cov = _window_filter(reference * distorted, params) - mu_r * mu_d
    var_r = np.maximum(var_r, 0.0)
    var_d = np.maximum(var_d, 0.0)

    flat_reference = var_r < eps
    gain = np.divide(cov, var_r, out=np.zeros_like(cov), where=~flat_reference)
    noise = var_d - gain * cov
    noise[flat_reference] = var_d[flat_reference]
    var_r[flat_reference] = 0.0

    flat_distorted = var_d < eps
    gain[flat_distorted] = 0.0
    noise[flat_distorted] = 0.0

    negative = gain < 0
    noise[negative] = var_d[negative]
    gain[negative] = 0.0
    noise = np.maximum(noise, eps)

    numerator = np.log1p(gain * gain * var_r / (noise + params.noise_variance)).sum()
    denominator = np.log1p(var_r / params.noise_variance).sum()
    return float(numerator), float(denominator)


def _downsample(image: np.ndarray, params: VifParams) -> np.ndarray:
    return _window_filter(image, params)[::2, ::2]


def vif(reference: PlaneLike, distorted: PlaneLike, params: Optional[VifParams] = None) -> float:
    """Pixel-domain multi-scale visual information fidelity.

    Unclamped: contrast enhancement can push the ratio above 1. A reference with
    no information at any scale scores 1 against an equally flat distortion, else 0.
    """
    params = params or _DEFAULT_PARAMS
    ref = np.asarray(as_array(reference), dtype=np.float64)
    dist = np.asarray(as_array(distorted), dtype=np.float64)
    if ref.shape != dist.shape:
        raise DimensionMismatchError(f"VIF planes differ in shape: {ref.shape} vs {dist.shape}.")

    scales = effective_scale_count(ref.shape, params.scale_count)
    if scales < params.scale_count:
        logger.debug("VIF on %s plane reduced to %d scales", ref.shape, scales)

    numerator = 0.0
    denominator = 0.0
    for scale in range(scales):
        if scale > 0:
            ref = _downsample(ref, params)
            dist = _downsample(dist, params)
        scale_num, scale_den = _scale_information(ref, dist, params)
        numerator += scale_num
        denominator += scale_den

    if denominator <= params.epsilon:
        return 1.0 if np.ptp(as_array(distorted)) == 0 else 0.0
    return numerator / denominator


def clamp_unit(value: float) -> float:
    return min(1.0, max(0.0, value))
