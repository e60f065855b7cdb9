from stereo_vqa.domain.errors import (
    ConfigurationError,
    DimensionMismatchError,
    DisparityMissingError,
    DistortionSpecError,
    HV3DError,
    ManifestError,
    MediaFormatError,
    PreconditionError,
    TruncatedFileError,
)
from stereo_vqa.domain.models import (
    BatchResult,
    BlockMatch,
    CorrelationReport,
    DistortionSpec,
    EntryResult,
    FitPoint,
    Frame,
    FrameComponents,
    FrameScore,
    LogisticFit,
    Manifest,
    ManifestEntry,
    Plane,
    ScoringObserver,
    SequenceScore,
    SequenceSpec,
    StereoFrame,
)

__all__ = [
    "BatchResult",
    "BlockMatch",
    "ConfigurationError",
    "CorrelationReport",
    "DimensionMismatchError",
    "DisparityMissingError",
    "DistortionSpec",
    "DistortionSpecError",
    "EntryResult",
    "FitPoint",
    "Frame",
    "FrameComponents",
    "FrameScore",
    "HV3DError",
    "LogisticFit",
    "Manifest",
    "ManifestEntry",
    "ManifestError",
    "MediaFormatError",
    "Plane",
    "PreconditionError",
    "ScoringObserver",
    "SequenceScore",
    "SequenceSpec",
    "StereoFrame",
    "TruncatedFileError",
]
