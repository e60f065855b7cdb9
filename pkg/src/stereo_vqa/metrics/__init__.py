from stereo_vqa.metrics.cyclopean import (
    CsfMask,
    apply_csf,
    build_csf_mask,
    cyclopean_quality,
    dct4,
    fovea_block_size,
    fuse_blocks,
    idct4,
    match_block,
)
from stereo_vqa.metrics.disparity import (
    NormalizedDisparity,
    VarianceField,
    block_disparity_variance,
    estimate_disparity,
    normalize_disparity,
    variance_field,
    variance_term,
)
from stereo_vqa.metrics.ssim import ssim_block, ssim_blocks
from stereo_vqa.metrics.vif import clamp_unit, vif

__all__ = [
    "CsfMask",
    "NormalizedDisparity",
    "VarianceField",
    "apply_csf",
    "block_disparity_variance",
    "build_csf_mask",
    "clamp_unit",
    "cyclopean_quality",
    "dct4",
    "estimate_disparity",
    "fovea_block_size",
    "fuse_blocks",
    "idct4",
    "match_block",
    "normalize_disparity",
    "ssim_block",
    "ssim_blocks",
    "variance_field",
    "variance_term",
    "vif",
]
