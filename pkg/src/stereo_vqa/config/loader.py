from __future__ import annotations

from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

import yaml

from stereo_vqa.config.models import (
    AppConfig,
    DisplayGeometry,
    HV3DConfig,
    MatchingConfig,
    RuntimeConfig,
    SsimConstants,
    VifParams,
    is_finite,
)
from stereo_vqa.domain.errors import ConfigurationError

YAML_SUFFIXES = {".yaml", ".yml"}


def load_config(config_path: Path) -> AppConfig:
    if not config_path.exists():
        raise ConfigurationError(f"Configuration file not found at: {config_path}")

    with config_path.open("r", encoding="utf-8") as file_handle:
        try:
            raw_data = yaml.safe_load(file_handle) or {}
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"Configuration file {config_path} is not valid YAML: {exc}") from exc

    if not isinstance(raw_data, Mapping):
        raise ConfigurationError("Configuration root must be a mapping.")

    hv3d_raw = _mapping(raw_data, "hv3d")
    weights_raw = _mapping(hv3d_raw, "weights")
    geometry_raw = _mapping(raw_data, "geometry")
    ssim_raw = _mapping(raw_data, "ssim")
    vif_raw = _mapping(raw_data, "vif")
    matching_raw = _mapping(raw_data, "matching")
    runtime_raw = _mapping(raw_data, "runtime")

    defaults = HV3DConfig()
    geometry = DisplayGeometry(
        viewing_distance_mm=_float(geometry_raw, "viewing_distance_mm", defaults.geometry.viewing_distance_mm),
        vertical_resolution_px=_positive_int(geometry_raw, "vertical_resolution_px", defaults.geometry.vertical_resolution_px),
        display_height_mm=_float(geometry_raw, "display_height_mm", defaults.geometry.display_height_mm),
        half_angle_deg=_float(geometry_raw, "half_angle_deg", defaults.geometry.half_angle_deg),
    )
    ssim = SsimConstants(
        k1=_ratio(ssim_raw, "k1", defaults.ssim.k1),
        k2=_ratio(ssim_raw, "k2", defaults.ssim.k2),
        dynamic_range=_float(ssim_raw, "dynamic_range", defaults.ssim.dynamic_range),
    )
    vif = VifParams(
        scale_count=_positive_int(vif_raw, "scale_count", defaults.vif.scale_count),
        noise_variance=_float(vif_raw, "noise_variance", defaults.vif.noise_variance),
        epsilon=_float(vif_raw, "epsilon", defaults.vif.epsilon),
        window=_positive_int(vif_raw, "window", defaults.vif.window),
        window_sigma=_float(vif_raw, "window_sigma", defaults.vif.window_sigma),
    )
    matching = MatchingConfig(
        search_radius=_non_negative_int(matching_raw, "search_radius", defaults.matching.search_radius),
        estimate_block=_positive_int(matching_raw, "estimate_block", defaults.matching.estimate_block),
        max_disp=_positive_int(matching_raw, "max_disp", defaults.matching.max_disp),
    )
    hv3d = HV3DConfig(
        w1=_float(weights_raw, "w1", defaults.w1),
        w2=_float(weights_raw, "w2", defaults.w2),
        w3=_float(weights_raw, "w3", defaults.w3),
        w4=_float(weights_raw, "w4", defaults.w4),
        beta=_float(hv3d_raw, "beta", defaults.beta),
        block=_positive_int(hv3d_raw, "block", defaults.block),
        window=_positive_int(hv3d_raw, "window", defaults.window),
        window_from_geometry=_bool(hv3d_raw, "window_from_geometry", defaults.window_from_geometry),
        geometry=geometry,
        ssim=ssim,
        vif=vif,
        matching=matching,
    )
    runtime = RuntimeConfig(threads=_non_negative_int(runtime_raw, "threads", 0))
    return AppConfig(hv3d=hv3d, runtime=runtime, config_path=config_path.resolve())


# key -> (section, field, converter)
_OVERRIDE_KEYS: Dict[str, Tuple[str, str, Callable[[str, str], Any]]] = {}


def _register(key: str, section: str, field_name: str, converter: Callable[[str, str], Any]) -> None:
    _OVERRIDE_KEYS[key] = (section, field_name, converter)


def _parse_float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise ConfigurationError(f"Override '{key}' must be numeric, got '{text}'.") from exc
    if not is_finite(value):
        raise ConfigurationError(f"Override '{key}' must be finite, got '{text}'.")
    return value


def _parse_int(key: str, text: str) -> int:
    value = _parse_float(key, text)
    if value != int(value):
        raise ConfigurationError(f"Override '{key}' must be an integer, got '{text}'.")
    return int(value)


def _parse_bool(key: str, text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in {"1", "true", "yes", "on"}:
        return True
    if lowered in {"0", "false", "no", "off"}:
        return False
    raise ConfigurationError(f"Override '{key}' must be a boolean, got '{text}'.")


for _key in ("w1", "w2", "w3", "w4", "beta"):
    _register(_key, "hv3d", _key, _parse_float)
_register("block", "hv3d", "block", _parse_int)
_register("window", "hv3d", "window", _parse_int)
_register("window_from_geometry", "hv3d", "window_from_geometry", _parse_bool)
_register("d_mm", "geometry", "viewing_distance_mm", _parse_float)
_register("h_px", "geometry", "vertical_resolution_px", _parse_int)
_register("H_mm", "geometry", "display_height_mm", _parse_float)
_register("alpha_deg", "geometry", "half_angle_deg", _parse_float)
_register("ssim_k1", "ssim", "k1", _parse_float)
_register("ssim_k2", "ssim", "k2", _parse_float)
_register("vif_scales", "vif", "scale_count", _parse_int)
_register("vif_noise_var", "vif", "noise_variance", _parse_float)
_register("search_radius", "matching", "search_radius", _parse_int)
_register("estimate_block", "matching", "estimate_block", _parse_int)
_register("max_disp", "matching", "max_disp", _parse_int)
_register("threads", "runtime", "threads", _parse_int)


def parse_overrides(text: str) -> Dict[str, str]:
    overrides: Dict[str, str] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigurationError(f"Override line {line_number} is not key=value: '{line.strip()}'.")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _OVERRIDE_KEYS:
            raise ConfigurationError(f"Unknown override key '{key}' on line {line_number}.")
        overrides[key] = value
    return overrides


def apply_overrides(base: AppConfig, overrides: Mapping[str, str]) -> AppConfig:
    sections: Dict[str, Dict[str, Any]] = {}
    for key, text in overrides.items():
        if key not in _OVERRIDE_KEYS:
            raise ConfigurationError(f"Unknown override key '{key}'.")
        section, field_name, converter = _OVERRIDE_KEYS[key]
        sections.setdefault(section, {})[field_name] = converter(key, text)

    hv3d = base.hv3d
    nested = {
        "geometry": hv3d.geometry,
        "ssim": hv3d.ssim,
        "vif": hv3d.vif,
        "matching": hv3d.matching,
    }
    rebuilt = {name: replace(value, **sections[name]) for name, value in nested.items() if name in sections}
    hv3d = replace(hv3d, **sections.get("hv3d", {}), **rebuilt)
    runtime = replace(base.runtime, **sections.get("runtime", {}))
    return replace(base, hv3d=hv3d, runtime=runtime)


def load_overrides(config_path: Path, base: Optional[AppConfig] = None) -> AppConfig:
    if not config_path.exists():
        raise ConfigurationError(f"Configuration file not found at: {config_path}")
    overrides = parse_overrides(config_path.read_text(encoding="utf-8"))
    config = apply_overrides(base or AppConfig(), overrides)
    return replace(config, config_path=config_path.resolve())


def resolve_config(config_path: Optional[Path]) -> AppConfig:
    if config_path is None:
        return AppConfig()
    if config_path.suffix.lower() in YAML_SUFFIXES:
        return load_config(config_path)
    return load_overrides(config_path)


def _mapping(raw_data: Mapping[str, Any], key: str) -> Mapping[str, Any]:
    value = raw_data.get(key)
    if value is None:
        return {}
    if not isinstance(value, Mapping):
        raise ConfigurationError(f"Configuration section '{key}' must be a mapping.")
    return value


def _float(raw_data: Mapping[str, Any], key: str, default: float) -> float:
    value = raw_data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not is_finite(float(value)):
        raise ConfigurationError(f"Configuration value '{key}' must be a finite number.")
    return float(value)


def _positive_int(raw_data: Mapping[str, Any], key: str, default: int) -> int:
    value = raw_data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise ConfigurationError(f"Configuration value '{key}' must be a positive integer.")
    return value


def _non_negative_int(raw_data: Mapping[str, Any], key: str, default: int) -> int:
    value = raw_data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigurationError(f"Configuration value '{key}' must be a non-negative integer.")
    return value


def _ratio(raw_data: Mapping[str, Any], key: str, default: float) -> float:
    value = _float(raw_data, key, default)
    if value <= 0 or value >= 1:
        raise ConfigurationError(f"Configuration value '{key}' must be between 0 and 1.")
    return value


def _bool(raw_data: Mapping[str, Any], key: str, default: bool) -> bool:
    value = raw_data.get(key, default)
    if not isinstance(value, bool):
        raise ConfigurationError(f"Configuration value '{key}' must be a boolean.")
    return value
