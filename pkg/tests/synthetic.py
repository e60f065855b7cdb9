"""Synthetic stereo fixtures shared by the test modules."""

from __future__ import annotations
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy import ndimage

from stereo_vqa.domain.models import Frame, Plane, StereoFrame
from stereo_vqa.media.pgm import write_pgm
from stereo_vqa.media.yuv import write_yuv_sequence


def textured(rng: np.random.Generator, height: int, width: int, low: float = 30.0, high: float = 220.0) -> np.ndarray:
    """Smooth random texture, integer valued in [low, high]."""
    field = ndimage.gaussian_filter(rng.normal(size=(height, width)), 1.5, mode="wrap")
    field = (field - field.min()) / (field.max() - field.min())
    return np.rint(low + (high - low) * field)


def stereo_frame(
    rng: np.random.Generator,
    size: int = 64,
    shift: int = 3,
    disparity: Optional[np.ndarray] = None,
) -> StereoFrame:
    """Right view shows the left content moved `shift` pixels to the left."""
    wide = textured(rng, size, size + shift)
    chroma = textured(rng, size // 2, size // 2 + shift, 60.0, 190.0)
    chroma_shift = shift // 2
    left = Frame(
        y=Plane(wide[:, :size]),
        u=Plane(chroma[:, : size // 2]),
        v=Plane(255.0 - chroma[:, : size // 2]),
    )
    right = Frame(
        y=Plane(wide[:, shift : shift + size]),
        u=Plane(chroma[:, chroma_shift : chroma_shift + size // 2]),
        v=Plane(255.0 - chroma[:, chroma_shift : chroma_shift + size // 2]),
    )
    if disparity is None:
        disparity = np.full((size, size), float(shift))
    return StereoFrame(left=left, right=right, disparity=Plane(disparity))


def ramp_disparity(size: int = 64, low: float = 2.0, high: float = 12.0) -> np.ndarray:
    columns = np.linspace(low, high, size)
    return np.rint(np.tile(columns, (size, 1)) + (np.arange(size)[:, None] % 8 == 0) * 3.0)


def map_views(frame: StereoFrame, operation: Callable[[Frame, int], Frame], seed: int = 0) -> StereoFrame:
    """Distort both views (left with seed, right with seed + 1); the disparity map is kept."""
    return StereoFrame(
        left=operation(frame.left, seed),
        right=operation(frame.right, seed + 1),
        disparity=frame.disparity,
    )


def write_stereo_files(directory: Path, frames: List[StereoFrame], prefix: str) -> Dict[str, Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "left": directory / f"{prefix}_left.yuv",
        "right": directory / f"{prefix}_right.yuv",
        "disp": directory / f"{prefix}_disp",
    }
    write_yuv_sequence([frame.left for frame in frames], paths["left"])
    write_yuv_sequence([frame.right for frame in frames], paths["right"])
    for index, frame in enumerate(frames):
        write_pgm(frame.disparity, paths["disp"] / f"{index:04d}.pgm")
    return paths


