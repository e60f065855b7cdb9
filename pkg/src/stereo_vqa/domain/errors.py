from __future__ import annotations


class HV3DError(RuntimeError):
    """Root of every error raised by the package."""

    exit_code = 1


class ConfigurationError(HV3DError):
    exit_code = 2


class PreconditionError(HV3DError):
    exit_code = 2


class ManifestError(HV3DError):
    exit_code = 2


class DistortionSpecError(HV3DError):
    exit_code = 2


class MediaFormatError(HV3DError):
    pass


class DimensionMismatchError(HV3DError):
    pass


class DisparityMissingError(HV3DError):
    pass


class TruncatedFileError(MediaFormatError):
    def __init__(self, path: str, expected: int, actual: int):
        self.path = path
        self.expected = expected
        self.actual = actual
        super().__init__(f"{path}: expected {expected} bytes, found {actual}")


def exit_code_for(exc: BaseException) -> int:
    return getattr(exc, "exit_code", 1)
