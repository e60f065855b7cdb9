from __future__ import annotations

import logging
from typing import List, Optional

from stereo_vqa.config.models import AppConfig
from stereo_vqa.domain.errors import DimensionMismatchError
from stereo_vqa.domain.models import Frame, Plane, ScoringObserver, SequenceScore, SequenceSpec, StereoFrame
from stereo_vqa.media.pgm import load_disparity_sequence
from stereo_vqa.media.yuv import load_yuv_sequence
from stereo_vqa.metrics.disparity import estimate_disparity
from stereo_vqa.scoring.hv3d import hv3d_sequence

logger = logging.getLogger(__name__)


def pair_views(left: List[Frame], right: List[Frame], disparity: List[Plane]) -> List[StereoFrame]:
    if not len(left) == len(right) == len(disparity):
        raise DimensionMismatchError(
            f"View/disparity frame counts differ: {len(left)} left, {len(right)} right, {len(disparity)} disparity."
        )
    return [StereoFrame(left=l, right=r, disparity=d) for l, r, d in zip(left, right, disparity)]


def disparity_for_views(left: List[Frame], right: List[Frame], max_disp: int, block: int) -> List[Plane]:
    return [estimate_disparity(l.y, r.y, max_disp, block) for l, r in zip(left, right)]


def load_stereo_sequence(spec: SequenceSpec, config: AppConfig) -> List[StereoFrame]:
    left = load_yuv_sequence(spec, "left")
    right = load_yuv_sequence(spec, "right")
    matching = config.hv3d.matching
    if spec.disparity_mode == "estimate":
        logger.info("Estimating disparity for %s (%d frames)", spec.left_path.name, spec.frame_count)
        disparity = disparity_for_views(left, right, matching.max_disp, matching.estimate_block)
    else:
        disparity = load_disparity_sequence(spec.disparity_source, spec.frame_count)
    return pair_views(left, right, disparity)


def score_specs(
    reference: SequenceSpec,
    distorted: SequenceSpec,
    config: AppConfig,
    observer: Optional[ScoringObserver] = None,
    label: str = "",
) -> SequenceScore:
    if (reference.width, reference.height) != (distorted.width, distorted.height):
        raise DimensionMismatchError(
            f"Reference is {reference.width}x{reference.height}, distorted is {distorted.width}x{distorted.height}."
        )
    if reference.frame_count != distorted.frame_count:
        raise DimensionMismatchError(
            f"Frame count mismatch: {reference.frame_count} reference vs {distorted.frame_count} distorted."
        )
    if observer:
        observer.on_sequence_start(label or reference.left_path.name, reference.frame_count)
    return hv3d_sequence(
        load_stereo_sequence(reference, config),
        load_stereo_sequence(distorted, config),
        config.hv3d,
        observer=observer,
        workers=config.runtime.worker_count,
    )
