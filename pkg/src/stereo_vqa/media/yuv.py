from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, List

import numpy as np

from stereo_vqa.domain.errors import MediaFormatError, PreconditionError, TruncatedFileError
from stereo_vqa.domain.models import Frame, Plane, SequenceSpec

logger = logging.getLogger(__name__)


def frame_size_bytes(width: int, height: int) -> int:
    if width < 2 or height < 2 or width % 2 or height % 2:
        raise PreconditionError(f"4:2:0 content needs even dimensions, got {width}x{height}.")
    return width * height * 3 // 2


def read_yuv_frames(path: Path, width: int, height: int, frame_count: int) -> List[Frame]:
    """Read frame_count I420 frames (Y, then U, then V per frame, no headers)."""
    frame_bytes = frame_size_bytes(width, height)
    if frame_count < 1:
        raise PreconditionError(f"frame_count must be at least 1, got {frame_count}.")
    if not path.exists():
        raise FileNotFoundError(f"YUV file not found at: {path}")

    actual = path.stat().st_size
    expected = frame_bytes * frame_count
    if actual < expected or actual % frame_bytes:
        raise TruncatedFileError(str(path), expected, actual)
    if actual > expected:
        logger.warning("%s holds %d frames, reading the first %d", path, actual // frame_bytes, frame_count)

    raw = np.memmap(path, dtype=np.uint8, mode="r", shape=(frame_count, frame_bytes))
    luma = width * height
    chroma = luma // 4
    frames: List[Frame] = []
    for index in range(frame_count):
        payload = raw[index]
        frames.append(
            Frame(
                y=Plane(payload[:luma].reshape(height, width).astype(np.float64)),
                u=Plane(payload[luma : luma + chroma].reshape(height // 2, width // 2).astype(np.float64)),
                v=Plane(payload[luma + chroma :].reshape(height // 2, width // 2).astype(np.float64)),
            )
        )
    del raw
    return frames


def load_yuv_sequence(spec: SequenceSpec, eye: str) -> List[Frame]:
    return read_yuv_frames(spec.path_for(eye), spec.width, spec.height, spec.frame_count)


def encode_frame(frame: Frame) -> bytes:
    return b"".join(plane.to_bytes() for plane in frame.planes())


def write_yuv_sequence(frames: Iterable[Frame], path: Path) -> int:
    path.parent.mkdir(parents=True, exist_ok=True)
    written = 0
    with path.open("wb") as file_handle:
        for frame in frames:
            file_handle.write(encode_frame(frame))
            written += 1
    if written == 0:
        raise MediaFormatError(f"Refusing to write an empty sequence to {path}.")
    return written
