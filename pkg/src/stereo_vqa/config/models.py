from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from stereo_vqa.domain.errors import ConfigurationError

# Weighting constants tuned against subjective scores on mobile and HD displays.
DEFAULT_W1 = 0.14
DEFAULT_W2 = 0.1208
DEFAULT_W3 = 0.05
DEFAULT_W4 = 0.1353
DEFAULT_BETA = 0.7


@dataclass(frozen=True)
class DisplayGeometry:
    viewing_distance_mm: float = 300.0
    vertical_resolution_px: int = 480
    display_height_mm: float = 68.0
    half_angle_deg: float = 0.375

    def __post_init__(self) -> None:
        for name in ("viewing_distance_mm", "vertical_resolution_px", "display_height_mm", "half_angle_deg"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"Display geometry value '{name}' must be positive.")

    @property
    def full_angle_deg(self) -> float:
        return 2.0 * self.half_angle_deg

    def check_fovea_range(self) -> None:
        if not 0.5 <= self.full_angle_deg <= 2.0:
            raise ConfigurationError(
                f"Foveal angle 2*alpha must lie in [0.5, 2] degrees, got {self.full_angle_deg:g}."
            )


@dataclass(frozen=True)
class SsimConstants:
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 255.0

    @property
    def c1(self) -> float:
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self) -> float:
        return (self.k2 * self.dynamic_range) ** 2


@dataclass(frozen=True)
class VifParams:
    scale_count: int = 4
    noise_variance: float = 2.0
    epsilon: float = 1e-10
    window: int = 11
    window_sigma: float = 1.5

    def __post_init__(self) -> None:
        if self.scale_count < 1:
            raise ConfigurationError("VIF scale_count must be at least 1.")
        if self.noise_variance <= 0:
            raise ConfigurationError("VIF noise_variance must be positive.")
        if self.window < 1 or self.window % 2 == 0:
            raise ConfigurationError("VIF window must be a positive odd size.")


@dataclass(frozen=True)
class MatchingConfig:
    search_radius: int = 12
    estimate_block: int = 8
    max_disp: int = 64

    def __post_init__(self) -> None:
        if self.search_radius < 0:
            raise ConfigurationError("search_radius must be non-negative.")
        if self.estimate_block < 1:
            raise ConfigurationError("estimate_block must be positive.")
        if not 1 <= self.max_disp <= 128:
            raise ConfigurationError(f"max_disp must lie in [1, 128], got {self.max_disp}.")


@dataclass(frozen=True)
class HV3DConfig:
    w1: float = DEFAULT_W1
    w2: float = DEFAULT_W2
    w3: float = DEFAULT_W3
    w4: float = DEFAULT_W4
    beta: float = DEFAULT_BETA
    block: int = 4
    window: int = 28
    window_from_geometry: bool = False
    geometry: DisplayGeometry = field(default_factory=DisplayGeometry)
    ssim: SsimConstants = field(default_factory=SsimConstants)
    vif: VifParams = field(default_factory=VifParams)
    matching: MatchingConfig = field(default_factory=MatchingConfig)

    def __post_init__(self) -> None:
        weights = (self.w1, self.w2, self.w3, self.w4)
        if any(weight < 0 for weight in weights):
            raise ConfigurationError("HV3D weights must be non-negative.")
        if not any(weight > 0 for weight in weights):
            raise ConfigurationError("At least one HV3D weight must be positive.")
        if self.beta <= 0:
            raise ConfigurationError("beta must be positive.")
        if self.block != 4:
            raise ConfigurationError("The cyclopean model is defined on 4x4 blocks only.")
        if self.window < 4:
            raise ConfigurationError(f"Variance window must be at least 4, got {self.window}.")
        self.geometry.check_fovea_range()

    @property
    def variance_window(self) -> int:
        if not self.window_from_geometry:
            return self.window
        from stereo_vqa.metrics.cyclopean import fovea_block_size

        return max(4, fovea_block_size(self.geometry))

    def with_weights(self, **weights: float) -> "HV3DConfig":
        return replace(self, **weights)


@dataclass(frozen=True)
class RuntimeConfig:
    threads: int = 0

    def __post_init__(self) -> None:
        if self.threads < 0:
            raise ConfigurationError("threads must be zero (all cores) or positive.")

    @property
    def worker_count(self) -> int:
        return self.threads or max(1, os.cpu_count() or 1)


@dataclass(frozen=True)
class AppConfig:
    hv3d: HV3DConfig = field(default_factory=HV3DConfig)
    runtime: RuntimeConfig = field(default_factory=RuntimeConfig)
    config_path: Optional[Path] = None

    def with_threads(self, threads: Optional[int]) -> "AppConfig":
        if threads is None:
            return self
        return replace(self, runtime=RuntimeConfig(threads=threads))


def is_finite(value: float) -> bool:
    return math.isfinite(value)
