from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Optional, Sequence

import numpy as np

from stereo_vqa.config.models import HV3DConfig
from stereo_vqa.domain.errors import ConfigurationError, DimensionMismatchError, DisparityMissingError, PreconditionError
from stereo_vqa.domain.models import FrameComponents, FrameScore, ScoringObserver, SequenceScore, StereoFrame
from stereo_vqa.metrics.cyclopean import CsfMask, build_csf_mask, cyclopean_quality
from stereo_vqa.metrics.disparity import normalize_disparity, variance_term
from stereo_vqa.metrics.vif import clamp_unit, vif

logger = logging.getLogger(__name__)


def hv3d_max(config: HV3DConfig, variance_share: float) -> float:
    """Score of a perfect copy: every VIF and SSIM factor at unity."""
    if not 0.0 <= variance_share <= 1.0:
        raise PreconditionError(f"Variance term must lie in [0, 1], got {variance_share}.")
    return 2 * config.w1 + 4 * config.w4 + config.w2 + config.w3 * variance_share


def hv3d_normalize(raw: float, maximum: float) -> float:
    if maximum <= 0:
        raise ConfigurationError("HV3D maximum is zero; at least one weight must contribute.")
    return raw / maximum


def weighted_contributions(components: FrameComponents, config: HV3DConfig) -> Dict[str, float]:
    depth_factor = components.vif_disparity ** config.beta
    return {
        "luma": config.w1 * (components.vif_y_right + components.vif_y_left),
        "chroma": config.w4 * (
            (components.vif_u_right + components.vif_v_right) + (components.vif_u_left + components.vif_v_left)
        ),
        "cyclopean": config.w2 * depth_factor * components.cyclopean,
        "variance": config.w3 * depth_factor * components.variance_term,
    }


def frame_components(
    reference: StereoFrame,
    distorted: StereoFrame,
    config: HV3DConfig,
    mask: Optional[CsfMask] = None,
) -> FrameComponents:
    if reference.shape != distorted.shape:
        raise DimensionMismatchError(f"Reference frame is {reference.shape}, distorted frame is {distorted.shape}.")
    if reference.disparity is None or distorted.disparity is None:
        raise DisparityMissingError("Both stereo frames need a disparity map; supply one or use 'auto'.")

    def view_vif(ref_plane, dist_plane) -> float:
        return clamp_unit(vif(ref_plane, dist_plane, config.vif))

    vif_y_left = view_vif(reference.left.y, distorted.left.y)
    vif_y_right = view_vif(reference.right.y, distorted.right.y)
    return FrameComponents(
        vif_y_left=vif_y_left,
        vif_y_right=vif_y_right,
        vif_u_left=view_vif(reference.left.u, distorted.left.u),
        vif_v_left=view_vif(reference.left.v, distorted.left.v),
        vif_u_right=view_vif(reference.right.u, distorted.right.u),
        vif_v_right=view_vif(reference.right.v, distorted.right.v),
        vif_disparity=view_vif(reference.disparity, distorted.disparity),
        cyclopean=cyclopean_quality(
            reference,
            distorted,
            mask or build_csf_mask(),
            config.ssim,
            config.matching.search_radius,
        ),
        variance_term=variance_term(normalize_disparity(reference.disparity), config.variance_window),
        baseline_2d=(vif_y_left + vif_y_right) / 2.0,
    )


def hv3d_frame(
    reference: StereoFrame,
    distorted: StereoFrame,
    config: HV3DConfig,
    mask: Optional[CsfMask] = None,
    index: int = 0,
) -> FrameScore:
    components = frame_components(reference, distorted, config, mask)
    contributions = weighted_contributions(components, config)
    raw = contributions["luma"] + contributions["chroma"] + contributions["cyclopean"] + contributions["variance"]
    maximum = hv3d_max(config, components.variance_term)
    return FrameScore(
        raw=raw,
        max=maximum,
        normalized=hv3d_normalize(raw, maximum),
        components=components,
        contributions=contributions,
        index=index,
    )


def hv3d_sequence(
    reference: Sequence[StereoFrame],
    distorted: Sequence[StereoFrame],
    config: HV3DConfig,
    observer: Optional[ScoringObserver] = None,
    workers: int = 1,
) -> SequenceScore:
    """Score frame pairs independently, then mean-pool the normalised scores in frame order."""
    if len(reference) != len(distorted):
        raise DimensionMismatchError(f"Frame count mismatch: {len(reference)} reference vs {len(distorted)} distorted.")
    if not reference:
        raise PreconditionError("Sequences must contain at least one frame.")

    mask = build_csf_mask()

    def score(index: int) -> FrameScore:
        return hv3d_frame(reference[index], distorted[index], config, mask, index)

    indices = range(len(reference))
    if workers > 1 and len(reference) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            frames = list(executor.map(score, indices))
    else:
        frames = [score(index) for index in indices]

    if observer:
        for frame_score in frames:
            observer.on_frame(frame_score)
    mean_normalized = float(np.mean([frame_score.normalized for frame_score in frames]))
    logger.debug("Scored %d frames, mean normalised HV3D %.6f", len(frames), mean_normalized)
    return SequenceScore(per_frame=frames, mean_normalized=mean_normalized)
