from stereo_vqa.config.loader import apply_overrides, load_config, load_overrides, parse_overrides, resolve_config
from stereo_vqa.config.models import (
    AppConfig,
    DisplayGeometry,
    HV3DConfig,
    MatchingConfig,
    RuntimeConfig,
    SsimConstants,
    VifParams,
)

__all__ = [
    "AppConfig",
    "DisplayGeometry",
    "HV3DConfig",
    "MatchingConfig",
    "RuntimeConfig",
    "SsimConstants",
    "VifParams",
    "apply_overrides",
    "load_config",
    "load_overrides",
    "parse_overrides",
    "resolve_config",
]
