from __future__ import annotations

import math
from typing import List, Union

import numpy as np
from scipy import ndimage

from stereo_vqa.domain.errors import DistortionSpecError, PreconditionError
from stereo_vqa.domain.models import DistortionSpec, Frame, Plane

SeedLike = Union[int, np.random.SeedSequence]

_KIND_ALIASES = {
    "awgn": "awgn",
    "noise": "awgn",
    "blur": "gaussian_blur",
    "gaussian_blur": "gaussian_blur",
    "shift": "mean_shift",
    "mean_shift": "mean_shift",
}
_SHORT_NAMES = {"awgn": "awgn", "gaussian_blur": "blur", "mean_shift": "shift"}


def _clamp_plane(values: np.ndarray) -> Plane:
    return Plane(np.clip(values, 0.0, 255.0))


def awgn(frame: Frame, sigma: float, seed: SeedLike) -> Frame:
    """Add i.i.d. zero-mean Gaussian noise to Y, U and V (drawn in that order) and clamp to [0, 255]."""
    if sigma < 0:
        raise PreconditionError(f"Noise sigma must be non-negative, got {sigma}.")
    if sigma == 0:
        return frame
    rng = np.random.default_rng(seed)
    noisy = [_clamp_plane(plane.samples + rng.normal(0.0, sigma, plane.samples.shape)) for plane in frame.planes()]
    return Frame(*noisy)


def gaussian_kernel(sigma: float) -> np.ndarray:
    radius = int(math.ceil(3.0 * sigma))
    taps = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(taps * taps) / (2.0 * sigma * sigma))
    return kernel / kernel.sum()


def blur_plane(plane: Plane, sigma: float) -> Plane:
    if sigma <= 0:
        return plane
    kernel = gaussian_kernel(sigma)
    rows = ndimage.convolve1d(plane.samples, kernel, axis=0, mode="nearest")
    return Plane(ndimage.convolve1d(rows, kernel, axis=1, mode="nearest"))


def gaussian_blur(frame: Frame, sigma: float) -> Frame:
    """Separable Gaussian low-pass; chroma uses sigma / 2 so the blur covers the same picture area."""
    if sigma < 0:
        raise PreconditionError(f"Blur sigma must be non-negative, got {sigma}.")
    if sigma == 0:
        return frame
    return Frame(
        y=blur_plane(frame.y, sigma),
        u=blur_plane(frame.u, sigma / 2.0),
        v=blur_plane(frame.v, sigma / 2.0),
    )


def mean_shift(frame: Frame, delta: float) -> Frame:
    if abs(delta) > 128:
        raise PreconditionError(f"Mean shift must satisfy |delta| <= 128, got {delta}.")
    if delta == 0:
        return frame
    return Frame(y=_clamp_plane(frame.y.samples + delta), u=frame.u, v=frame.v)


def apply_distortion(frame: Frame, spec: DistortionSpec, seed: SeedLike = 0) -> Frame:
    if spec.kind == "awgn":
        return awgn(frame, spec.magnitude, seed)
    if spec.kind == "gaussian_blur":
        return gaussian_blur(frame, spec.magnitude)
    return mean_shift(frame, spec.magnitude)


def distort_sequence(frames: List[Frame], spec: DistortionSpec) -> List[Frame]:
    """Apply one distortion to every frame; noise seeds are spawned per frame from spec.seed."""
    seeds = np.random.SeedSequence(spec.seed).spawn(len(frames))
    return [apply_distortion(frame, spec, seed) for frame, seed in zip(frames, seeds)]


def parse_spec(text: str) -> DistortionSpec:
    """Parse `kind:magnitude[:seed]`, e.g. awgn:10:42, blur:1.5, shift:-12."""
    parts = [part.strip() for part in text.strip().split(":")]
    if len(parts) not in (2, 3) or not all(parts):
        raise DistortionSpecError(f"Distortion spec '{text}' must look like kind:magnitude[:seed].")
    kind = _KIND_ALIASES.get(parts[0].lower())
    if kind is None:
        raise DistortionSpecError(f"Unknown distortion kind '{parts[0]}' in '{text}'.")
    try:
        magnitude = float(parts[1])
    except ValueError as exc:
        raise DistortionSpecError(f"Distortion magnitude '{parts[1]}' is not a number.") from exc
    if not math.isfinite(magnitude):
        raise DistortionSpecError(f"Distortion magnitude '{parts[1]}' must be finite.")
    seed = 0
    if len(parts) == 3:
        if kind != "awgn":
            raise DistortionSpecError(f"Only awgn takes a seed, got '{text}'.")
        try:
            seed = int(parts[2])
        except ValueError as exc:
            raise DistortionSpecError(f"Seed '{parts[2]}' is not an integer.") from exc
        if seed < 0:
            raise DistortionSpecError(f"Seed must be non-negative, got {seed}.")
    return DistortionSpec(kind=kind, magnitude=magnitude, seed=seed)


def format_spec(spec: DistortionSpec) -> str:
    text = f"{_SHORT_NAMES[spec.kind]}:{spec.magnitude:g}"
    return f"{text}:{spec.seed}" if spec.kind == "awgn" else text
