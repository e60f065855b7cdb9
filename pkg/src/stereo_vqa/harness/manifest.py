from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, List, Optional

from stereo_vqa.domain.errors import HV3DError, ManifestError
from stereo_vqa.domain.models import AUTO_DISPARITY, Manifest, ManifestEntry, SequenceSpec

MANIFEST_COLUMNS = (
    "id",
    "ref_left",
    "ref_right",
    "ref_disp",
    "dist_left",
    "dist_right",
    "dist_disp",
    "width",
    "height",
    "frames",
    "mos",
)


def _resolve(base: Path, value: str) -> Path:
    candidate = Path(value)
    return candidate if candidate.is_absolute() else base / candidate


def _disparity(base: Path, value: str) -> str:
    if value.lower() == AUTO_DISPARITY:
        return AUTO_DISPARITY
    return str(_resolve(base, value))


def _int(row: Dict[str, str], key: str, line: int) -> int:
    try:
        return int(row[key])
    except ValueError as exc:
        raise ManifestError(f"Manifest line {line}: '{key}' must be an integer, got '{row[key]}'.") from exc


def _mos(row: Dict[str, str], line: int) -> Optional[float]:
    text = row["mos"]
    if not text:
        return None
    try:
        return float(text)
    except ValueError as exc:
        raise ManifestError(f"Manifest line {line}: 'mos' must be numeric or empty, got '{text}'.") from exc


def parse_manifest_rows(rows: List[Dict[str, str]], base: Path) -> Manifest:
    entries: List[ManifestEntry] = []
    for line, raw in enumerate(rows, start=2):
        row = {key: (value or "").strip() for key, value in raw.items() if key is not None}
        if not row.get("id"):
            raise ManifestError(f"Manifest line {line}: empty id.")
        width = _int(row, "width", line)
        height = _int(row, "height", line)
        frames = _int(row, "frames", line)
        try:
            reference = SequenceSpec(
                left_path=_resolve(base, row["ref_left"]),
                right_path=_resolve(base, row["ref_right"]),
                width=width,
                height=height,
                frame_count=frames,
                disparity_source=_disparity(base, row["ref_disp"] or AUTO_DISPARITY),
            )
            distorted = SequenceSpec(
                left_path=_resolve(base, row["dist_left"]),
                right_path=_resolve(base, row["dist_right"]),
                width=width,
                height=height,
                frame_count=frames,
                disparity_source=_disparity(base, row["dist_disp"] or AUTO_DISPARITY),
            )
        except HV3DError as exc:
            raise ManifestError(f"Manifest line {line}: {exc}") from exc
        entries.append(ManifestEntry(entry_id=row["id"], reference=reference, distorted=distorted, mos=_mos(row, line)))
    return Manifest(entries=tuple(entries))


def load_manifest(path: Path) -> Manifest:
    """Read the CSV manifest; relative paths resolve against the manifest's directory."""
    if not path.exists():
        raise ManifestError(f"Manifest not found at: {path}")
    with path.open("r", encoding="utf-8", newline="") as file_handle:
        reader = csv.DictReader(file_handle)
        header = tuple(name.strip() for name in (reader.fieldnames or ()))
        missing = [column for column in MANIFEST_COLUMNS if column not in header]
        if missing:
            raise ManifestError(f"Manifest {path} is missing columns: {', '.join(missing)}.")
        rows = list(reader)
    if not rows:
        raise ManifestError(f"Manifest {path} has no entries.")
    # DictReader keys keep the raw header spelling; normalise surrounding spaces.
    normalised = [{key.strip(): value for key, value in row.items() if key is not None} for row in rows]
    return parse_manifest_rows(normalised, path.parent)
