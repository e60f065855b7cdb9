from stereo_vqa.distort.operations import (
    apply_distortion,
    awgn,
    distort_sequence,
    format_spec,
    gaussian_blur,
    gaussian_kernel,
    mean_shift,
    parse_spec,
)

__all__ = [
    "apply_distortion",
    "awgn",
    "distort_sequence",
    "format_spec",
    "gaussian_blur",
    "gaussian_kernel",
    "mean_shift",
    "parse_spec",
]
