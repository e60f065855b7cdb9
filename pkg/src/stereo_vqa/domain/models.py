from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Protocol, Tuple

import numpy as np

from stereo_vqa.domain.errors import DimensionMismatchError, DistortionSpecError, ManifestError, PreconditionError

AUTO_DISPARITY = "auto"
DISTORTION_KINDS = ("awgn", "gaussian_blur", "mean_shift")


def _frozen_array(values: object) -> np.ndarray:
    if isinstance(values, np.ndarray) and values.dtype == np.float64 and not values.flags.writeable:
        return values
    array = np.array(values, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Plane:
    """Single-channel sample grid held as a read-only float64 array (rows = height)."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        data = _frozen_array(self.samples)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise PreconditionError(f"Plane samples must be a non-empty 2D grid, got shape {data.shape}.")
        object.__setattr__(self, "samples", data)

    @classmethod
    def from_bytes(cls, payload: bytes, width: int, height: int) -> "Plane":
        grid = np.frombuffer(payload, dtype=np.uint8, count=width * height).reshape(height, width)
        return cls(grid.astype(np.float64))

    @property
    def width(self) -> int:
        return int(self.samples.shape[1])

    @property
    def height(self) -> int:
        return int(self.samples.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    def to_bytes(self) -> bytes:
        return np.clip(np.rint(self.samples), 0, 255).astype(np.uint8).tobytes()


@dataclass(frozen=True, eq=False)
class Frame:
    """One 4:2:0 picture: full-resolution luma and half-resolution chroma."""

    y: Plane
    u: Plane
    v: Plane

    def __post_init__(self) -> None:
        if self.y.width % 2 or self.y.height % 2:
            raise PreconditionError(f"4:2:0 frames need even dimensions, got {self.y.width}x{self.y.height}.")
        chroma_shape = (self.y.height // 2, self.y.width // 2)
        if self.u.shape != chroma_shape or self.v.shape != chroma_shape:
            raise DimensionMismatchError(
                f"Chroma planes must be {chroma_shape[1]}x{chroma_shape[0]}, "
                f"got U {self.u.width}x{self.u.height} and V {self.v.width}x{self.v.height}."
            )

    @property
    def width(self) -> int:
        return self.y.width

    @property
    def height(self) -> int:
        return self.y.height

    def planes(self) -> Tuple[Plane, Plane, Plane]:
        return self.y, self.u, self.v


@dataclass(frozen=True, eq=False)
class StereoFrame:
    left: Frame
    right: Frame
    disparity: Optional[Plane] = None

    def __post_init__(self) -> None:
        if self.left.y.shape != self.right.y.shape:
            raise DimensionMismatchError(
                f"Left view is {self.left.width}x{self.left.height}, right view is {self.right.width}x{self.right.height}."
            )
        if self.disparity is not None and self.disparity.shape != self.left.y.shape:
            raise DimensionMismatchError(
                f"Disparity map is {self.disparity.width}x{self.disparity.height}, "
                f"luma is {self.left.width}x{self.left.height}."
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.left.y.shape

    def swapped(self) -> "StereoFrame":
        return StereoFrame(left=self.right, right=self.left, disparity=self.disparity)


@dataclass(frozen=True)
class SequenceSpec:
    left_path: Path
    right_path: Path
    width: int
    height: int
    frame_count: int
    disparity_source: str = AUTO_DISPARITY

    def __post_init__(self) -> None:
        if self.width < 2 or self.height < 2 or self.width % 2 or self.height % 2:
            raise PreconditionError(f"Sequence dimensions must be even and positive, got {self.width}x{self.height}.")
        if self.frame_count < 1:
            raise PreconditionError(f"frame_count must be at least 1, got {self.frame_count}.")

    @property
    def disparity_mode(self) -> str:
        return "estimate" if self.disparity_source.strip().lower() == AUTO_DISPARITY else "supplied"

    @property
    def frame_bytes(self) -> int:
        return self.width * self.height * 3 // 2

    def path_for(self, eye: str) -> Path:
        if eye == "left":
            return self.left_path
        if eye == "right":
            return self.right_path
        raise PreconditionError(f"Unknown eye '{eye}', expected 'left' or 'right'.")


@dataclass(frozen=True)
class BlockMatch:
    left_origin: Tuple[int, int]
    right_origin: Tuple[int, int]
    disparity_used: int


@dataclass(frozen=True)
class FrameComponents:
    """Unweighted per-term scores of one frame."""

    vif_y_left: float
    vif_y_right: float
    vif_u_left: float
    vif_v_left: float
    vif_u_right: float
    vif_v_right: float
    vif_disparity: float
    cyclopean: float
    variance_term: float
    baseline_2d: float

    def as_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class FrameScore:
    raw: float
    max: float
    normalized: float
    components: FrameComponents
    contributions: Dict[str, float] = field(default_factory=dict)
    index: int = 0


@dataclass(frozen=True)
class SequenceScore:
    per_frame: List[FrameScore]
    mean_normalized: float

    def component_means(self) -> Dict[str, float]:
        if not self.per_frame:
            return {}
        names = list(self.per_frame[0].components.as_dict())
        return {
            name: float(np.mean([score.components.as_dict()[name] for score in self.per_frame]))
            for name in names
        }

    @property
    def mean_raw(self) -> float:
        return float(np.mean([score.raw for score in self.per_frame]))


@dataclass(frozen=True)
class DistortionSpec:
    kind: str
    magnitude: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in DISTORTION_KINDS:
            raise DistortionSpecError(f"Unknown distortion kind '{self.kind}'; expected one of {', '.join(DISTORTION_KINDS)}.")
        if self.kind == "mean_shift":
            if abs(self.magnitude) > 128:
                raise DistortionSpecError(f"Mean shift must satisfy |delta| <= 128, got {self.magnitude}.")
            return
        if self.magnitude < 0:
            raise DistortionSpecError(f"Distortion magnitude must be non-negative, got {self.magnitude}.")
        if self.kind == "gaussian_blur" and self.magnitude > 10:
            raise DistortionSpecError(f"Blur sigma must be at most 10, got {self.magnitude}.")


@dataclass(frozen=True)
class ManifestEntry:
    entry_id: str
    reference: SequenceSpec
    distorted: SequenceSpec
    mos: Optional[float] = None

    def __post_init__(self) -> None:
        if self.mos is not None and not 0.0 <= self.mos <= 5.0:
            raise ManifestError(f"Entry '{self.entry_id}': MOS must lie in [0, 5], got {self.mos}.")


@dataclass(frozen=True)
class Manifest:
    entries: Tuple[ManifestEntry, ...]

    def __post_init__(self) -> None:
        seen: set = set()
        for entry in self.entries:
            if entry.entry_id in seen:
                raise ManifestError(f"Duplicate manifest id '{entry.entry_id}'.")
            seen.add(entry.entry_id)
        with_mos = sum(1 for entry in self.entries if entry.mos is not None)
        if 0 < with_mos < len(self.entries):
            raise ManifestError("MOS must be given for all manifest entries or for none.")

    @property
    def has_mos(self) -> bool:
        return bool(self.entries) and all(entry.mos is not None for entry in self.entries)


@dataclass(frozen=True)
class LogisticFit:
    a: float
    b: float
    c: float
    d: float
    fitted: List[float]
    pearson_r: float
    converged: bool
    evaluations: int = 0

    @property
    def params(self) -> Tuple[float, float, float, float]:
        return self.a, self.b, self.c, self.d


@dataclass(frozen=True)
class FitPoint:
    entry_id: str
    objective: float
    mos: float
    fitted: Optional[float] = None


@dataclass(frozen=True)
class CorrelationReport:
    spearman_rho: float
    pearson_r_raw: float
    baseline_spearman_rho: float
    points: List[FitPoint]
    logistic: Optional[LogisticFit] = None
    rmse_after_fit: Optional[float] = None

    @property
    def pearson_r_after_fit(self) -> Optional[float]:
        return self.logistic.pearson_r if self.logistic else None


@dataclass(frozen=True)
class EntryResult:
    entry_id: str
    score: Optional[SequenceScore] = None
    error: str = ""
    mos: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.score is not None


@dataclass(frozen=True)
class BatchResult:
    entries: List[EntryResult]
    report: Optional[CorrelationReport] = None

    @property
    def failures(self) -> List[EntryResult]:
        return [entry for entry in self.entries if not entry.ok]


class ScoringObserver(Protocol):
    """Receives live events while sequences and manifests are scored."""

    def on_sequence_start(self, label: str, frame_count: int) -> None: ...

    def on_frame(self, score: FrameScore) -> None: ...

    def on_entry(self, result: EntryResult) -> None: ...

    def on_entry_failed(self, entry_id: str, reason: str) -> None: ...
