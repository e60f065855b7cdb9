from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Tuple, Union

from stereo_vqa.domain.errors import DisparityMissingError, MediaFormatError
from stereo_vqa.domain.models import Plane

logger = logging.getLogger(__name__)

_WHITESPACE = b" \t\r\n\v\f"


def _read_token(data: bytes, position: int) -> Tuple[bytes, int]:
    while position < len(data):
        char = data[position : position + 1]
        if char == b"#":
            newline = data.find(b"\n", position)
            position = len(data) if newline < 0 else newline + 1
        elif char in _WHITESPACE:
            position += 1
        else:
            break
    start = position
    while position < len(data) and data[position : position + 1] not in _WHITESPACE + b"#":
        position += 1
    if start == position:
        raise MediaFormatError("PGM header ended before all fields were read.")
    return data[start:position], position


def decode_pgm(data: bytes, source: str = "<bytes>") -> Plane:
    magic, position = _read_token(data, 0)
    if magic != b"P5":
        raise MediaFormatError(f"{source}: unsupported PGM variant '{magic.decode(errors='replace')}', expected binary P5.")
    fields = []
    for name in ("width", "height", "maxval"):
        token, position = _read_token(data, position)
        try:
            fields.append(int(token))
        except ValueError as exc:
            raise MediaFormatError(f"{source}: PGM {name} is not an integer: {token!r}.") from exc
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MediaFormatError(f"{source}: PGM dimensions must be positive, got {width}x{height}.")
    if not 0 < maxval <= 255:
        raise MediaFormatError(f"{source}: PGM maxval {maxval} is not supported, 8-bit only (<= 255).")

    # Exactly one whitespace byte separates the header from the raster.
    payload = data[position + 1 :]
    expected = width * height
    if len(payload) != expected:
        raise MediaFormatError(f"{source}: PGM payload holds {len(payload)} bytes, header declares {expected}.")
    return Plane.from_bytes(payload, width, height)


def load_disparity_pgm(path: Path) -> Plane:
    if not path.exists():
        raise DisparityMissingError(f"Disparity map not found at: {path}")
    return decode_pgm(path.read_bytes(), str(path))


def encode_pgm(plane: Plane) -> bytes:
    header = f"P5\n{plane.width} {plane.height}\n255\n".encode("ascii")
    return header + plane.to_bytes()


def write_pgm(plane: Plane, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_pgm(plane))


def disparity_path(source: Union[str, Path], index: int) -> Path:
    """Resolve the per-frame map.

    Accepts a format pattern (``d_{index:04d}.pgm`` or ``d_{:04d}.pgm``), a single ``.pgm``
    file (frame 0 only) or a directory of ``<index:04d>.pgm`` files.
    """
    text = str(source)
    if "{" in text:
        try:
            return Path(text.format(index, index=index))
        except (KeyError, ValueError, IndexError) as exc:
            raise DisparityMissingError(f"Bad disparity pattern {text!r}: {exc!r}") from exc
    path = Path(text)
    if path.suffix.lower() == ".pgm" and not path.is_dir():
        if index != 0:
            raise DisparityMissingError(f"Single disparity map {path} covers one frame, frame {index} was requested.")
        return path
    return path / f"{index:04d}.pgm"


def load_disparity_sequence(source: Union[str, Path], frame_count: int) -> List[Plane]:
    planes = [load_disparity_pgm(disparity_path(source, index)) for index in range(frame_count)]
    logger.debug("Loaded %d disparity maps from %s", len(planes), source)
    return planes
